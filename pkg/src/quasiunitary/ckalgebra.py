"""Structure constants of the quaternionic unitary Cayley-Klein algebras sq_w(N+1).

Basis order (fixed, used everywhere downstream):

    J_ab (a < b, lexicographic), then the M^1_ab, M^2_ab, M^3_ab blocks
    (each lexicographic), then the E^1_a, E^2_a, E^3_a blocks.

so that sq_w(N+1) has N(N+1)/2 + 3 N(N+1)/2 + 3(N+1) = (N+1)(2N+3) elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactnum import epsilon, format_rational, parse_rational, third_index

FAMILIES = ("sq", "u1", "u2", "u3", "so")


class ClosureError(AssertionError):
    """A bracket of selected generators left the selected span."""


class AutomorphismError(AssertionError):
    """A map that should preserve brackets does not."""


@dataclass(frozen=True)
class OmegaPattern:
    """The contraction parameters w_1..w_N."""

    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> "OmegaPattern":
        return cls(tuple(parse_rational(tok) for tok in text.split(",")))

    @property
    def n(self) -> int:
        return len(self.values)

    def omega(self, a: int) -> Fraction:
        """Single coefficient w_a, 1 <= a <= N."""
        if not 1 <= a <= self.n:
            raise IndexError(f"w_{a} undefined for N={self.n}")
        return self.values[a - 1]

    def reversed(self) -> "OmegaPattern":
        return OmegaPattern(self.values[::-1])

    def zero_positions(self) -> list[int]:
        return [a for a in range(1, self.n + 1) if self.values[a - 1] == 0]

    def label(self) -> str:
        return ",".join(format_rational(v) for v in self.values)

    def __str__(self) -> str:
        return f"({self.label()})"


def omega_ab(p: OmegaPattern, a: int, b: int) -> Fraction:
    """w_ab = w_{a+1} w_{a+2} ... w_b, with w_aa = 1."""
    if not (0 <= a <= p.n and 0 <= b <= p.n):
        raise IndexError(f"index out of range 0..{p.n}: ({a}, {b})")
    if a > b:
        raise ValueError(f"w_ab needs a <= b, got ({a}, {b})")
    out = Fraction(1)
    for s in range(a + 1, b + 1):
        out *= p.values[s - 1]
    return out


@dataclass(frozen=True, order=True)
class GeneratorId:
    kind: str  # "J", "M" or "E"
    a: int
    b: int = -1  # unused for E
    alpha: int = 0  # unused for J

    def __post_init__(self):
        if self.kind in ("J", "M"):
            if not 0 <= self.a < self.b:
                raise ValueError(f"{self.kind} needs 0 <= a < b, got ({self.a}, {self.b})")
        elif self.kind == "E":
            if self.a < 0 or self.b != -1:
                raise ValueError(f"bad E index {self.a}")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("M", "E") and self.alpha not in (1, 2, 3):
            raise ValueError(f"quaternionic index must be 1..3, got {self.alpha}")
        if self.kind == "J" and self.alpha != 0:
            raise ValueError("J carries no quaternionic index")

    @property
    def name(self) -> str:
        if self.kind == "J":
            return f"J_{self.a}_{self.b}"
        if self.kind == "M":
            return f"M{self.alpha}_{self.a}_{self.b}"
        return f"E{self.alpha}_{self.a}"

    @classmethod
    def parse(cls, name: str) -> "GeneratorId":
        head, *idx = name.split("_")
        if head == "J":
            return cls("J", int(idx[0]), int(idx[1]))
        if head[0] == "M":
            return cls("M", int(idx[0]), int(idx[1]), int(head[1:]))
        if head[0] == "E":
            return cls("E", int(idx[0]), alpha=int(head[1:]))
        raise ValueError(f"bad generator name {name!r}")

    def __str__(self) -> str:
        return self.name


def J(a: int, b: int) -> GeneratorId:
    return GeneratorId("J", a, b)


def M(alpha: int, a: int, b: int) -> GeneratorId:
    return GeneratorId("M", a, b, alpha)


def E(alpha: int, a: int) -> GeneratorId:
    return GeneratorId("E", a, alpha=alpha)


def sq_basis(n: int) -> list[GeneratorId]:
    pairs = list(combinations(range(n + 1), 2))
    basis = [J(a, b) for a, b in pairs]
    for alpha in (1, 2, 3):
        basis += [M(alpha, a, b) for a, b in pairs]
    for alpha in (1, 2, 3):
        basis += [E(alpha, a) for a in range(n + 1)]
    return basis


@dataclass(frozen=True)
class StructureConstants:
    """Sparse bracket table [X_i, X_j] = sum_k C_ij^k X_k, stored for i < j only."""

    basis: tuple
    table: Mapping = field(default_factory=dict)  # (i, j) -> tuple of (k, Fraction)
    omega: OmegaPattern | None = None
    family: str = "sq"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int | None:
        return None if self.omega is None else self.omega.n

    def index(self, g: GeneratorId) -> int:
        try:
            return self._index[g]
        except AttributeError:
            object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.basis)})
            return self._index[g]

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """[X_i, X_j] as {k: coeff}, antisymmetry applied for i > j."""
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), ()))
        return {k: -v for k, v in self.table.get((j, i), ())}

    def coeff(self, i: int, j: int, k: int) -> Fraction:
        return self.bracket(i, j).get(k, Fraction(0))

    def bracket_vec(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Bracket of two linear combinations of basis elements."""
        out: dict[int, Fraction] = {}
        for i, xi in x.items():
            for j, yj in y.items():
                if i == j:
                    continue
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, 0) + xi * yj * c
        return {k: v for k, v in out.items() if v != 0}

    def bracket_names(self, x: GeneratorId, y: GeneratorId) -> dict[GeneratorId, Fraction]:
        res = self.bracket(self.index(x), self.index(y))
        return {self.basis[k]: v for k, v in res.items()}

    def nonzero_pairs(self) -> Iterable[tuple[int, int]]:
        return (ij for ij, row in self.table.items() if row)

    def label(self) -> str:
        om = "" if self.omega is None else str(self.omega)
        return f"{self.family}{om}"


def _sq_table(p: OmegaPattern) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Write out every commutation relation of sq_w(N+1), N >= 0 allowed."""
    n = p.n
    basis = sq_basis(n)
    idx = {g: i for i, g in enumerate(basis)}
    table: dict[tuple[int, int], dict[int, Fraction]] = {}

    def w(a, b):
        return omega_ab(p, a, b)

    def put(x: GeneratorId, y: GeneratorId, terms: Iterable[tuple[GeneratorId, Fraction]]):
        i, j = idx[x], idx[y]
        assert i != j
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        row: dict[int, Fraction] = {}
        for g, c in terms:
            if c:
                row[idx[g]] = row.get(idx[g], 0) + sign * Fraction(c)
        row = {k: v for k, v in row.items() if v != 0}
        if (i, j) in table:
            if table[(i, j)] != row:
                raise AssertionError(f"conflicting relations for [{x}, {y}]")
            return
        table[(i, j)] = row

    triples = list(combinations(range(n + 1), 3))
    pairs = list(combinations(range(n + 1), 2))

    # three indices a < b < c sharing one index
    for a, b, c in triples:
        put(J(a, b), J(a, c), [(J(b, c), w(a, b))])
        put(J(a, b), J(b, c), [(J(a, c), -1)])
        put(J(a, c), J(b, c), [(J(a, b), w(b, c))])
        for al in (1, 2, 3):
            put(M(al, a, b), M(al, a, c), [(J(b, c), w(a, b))])
            put(M(al, a, b), M(al, b, c), [(J(a, c), 1)])
            put(M(al, a, c), M(al, b, c), [(J(a, b), w(b, c))])
            put(J(a, b), M(al, a, c), [(M(al, b, c), w(a, b))])
            put(J(a, b), M(al, b, c), [(M(al, a, c), -1)])
            put(J(a, c), M(al, b, c), [(M(al, a, b), -w(b, c))])
            put(M(al, a, b), J(a, c), [(M(al, b, c), -w(a, b))])
            put(M(al, a, b), J(b, c), [(M(al, a, c), -1)])
            put(M(al, a, c), J(b, c), [(M(al, a, b), w(b, c))])
            for be in (1, 2, 3):
                if be == al:
                    continue
                ga = third_index(al, be)
                eps = epsilon(al, be, ga)
                put(M(al, a, b), M(be, a, c), [(M(ga, b, c), w(a, b) * eps)])
                put(M(al, a, b), M(be, b, c), [(M(ga, a, c), eps)])
                put(M(al, a, c), M(be, b, c), [(M(ga, a, b), w(b, c) * eps)])

    # four different indices: a < b, d < e
    for (a, b), (d, e) in combinations(pairs, 2):
        if len({a, b, d, e}) < 4:
            continue
        put(J(a, b), J(d, e), [])
        for al in (1, 2, 3):
            put(J(a, b), M(al, d, e), [])
            put(M(al, a, b), J(d, e), [])
            for be in (1, 2, 3):
                put(M(al, a, b), M(be, d, e), [])

    # a < b with arbitrary d
    for a, b in pairs:
        for al in (1, 2, 3):
            for d in range(n + 1):
                s = (d == a) - (d == b)
                put(J(a, b), E(al, d), [(M(al, a, b), s)])
                put(M(al, a, b), E(al, d), [(J(a, b), -s)])
            put(J(a, b), M(al, a, b), [(E(al, b), 2 * w(a, b)), (E(al, a), -2 * w(a, b))])
            for be in (1, 2, 3):
                if be == al:
                    continue
                ga = third_index(al, be)
                eps = epsilon(al, be, ga)
                put(M(al, a, b), M(be, a, b), [(E(ga, a), 2 * w(a, b) * eps), (E(ga, b), 2 * w(a, b) * eps)])
                for d in range(n + 1):
                    put(M(al, a, b), E(be, d), [(M(ga, a, b), ((d == a) + (d == b)) * eps)])

    for al in (1, 2, 3):
        for a, b in pairs:
            put(E(al, a), E(al, b), [])
        for be in (1, 2, 3):
            if be == al:
                continue
            ga = third_index(al, be)
            eps = epsilon(al, be, ga)
            for a in range(n + 1):
                for b in range(n + 1):
                    put(E(al, a), E(be, b), [(E(ga, a), 2 * eps)] if a == b else [])
    return table


def _freeze(table: Mapping) -> dict:
    return {ij: tuple(sorted(row.items())) for ij, row in table.items() if row}


def build_sq(p: OmegaPattern) -> StructureConstants:
    """Structure constants of sq_w(N+1) in the fixed basis order."""
    if not isinstance(p, OmegaPattern):
        p = OmegaPattern(tuple(p))
    if p.n < 1:
        raise ValueError("the family needs N >= 1 (at least one w coefficient)")
    return StructureConstants(tuple(sq_basis(p.n)), _freeze(_sq_table(p)), p, "sq")


def _build_sq_any(p: OmegaPattern) -> StructureConstants:
    # N = 0 gives sq(1), spanned by E^1_0, E^2_0, E^3_0; only for internal comparisons
    return StructureConstants(tuple(sq_basis(p.n)), _freeze(_sq_table(p)), p, "sq")


@dataclass(frozen=True)
class SubalgebraSelector:
    family: str
    embedding: tuple  # subalgebra index -> parent index


def make_selector(parent: StructureConstants, family: str) -> SubalgebraSelector:
    """Pick the generators of so_w, u^alpha_w or sq_w inside ``parent``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family == "sq":
        keep = lambda g: True  # noqa: E731
    elif family == "so":
        keep = lambda g: g.kind == "J"  # noqa: E731
    else:
        al = int(family[1])
        keep = lambda g: g.kind == "J" or g.alpha == al  # noqa: E731
    return SubalgebraSelector(family, tuple(i for i, g in enumerate(parent.basis) if keep(g)))


def build_subalgebra(parent: StructureConstants, sel: SubalgebraSelector | str) -> StructureConstants:
    """Restrict ``parent`` to the selected generators, checking closure."""
    if isinstance(sel, str):
        sel = make_selector(parent, sel)
    emb = sel.embedding
    back = {pi: si for si, pi in enumerate(emb)}
    table = {}
    for si, sj in combinations(range(len(emb)), 2):
        res = parent.bracket(emb[si], emb[sj])
        row = {}
        for k, v in res.items():
            if k not in back:
                raise ClosureError(
                    f"[{parent.basis[emb[si]]}, {parent.basis[emb[sj]]}] has component on {parent.basis[k]}"
                )
            row[back[k]] = v
        if row:
            table[(si, sj)] = tuple(sorted(row.items()))
    return StructureConstants(tuple(parent.basis[i] for i in emb), table, parent.omega, sel.family)


def build_family(p: OmegaPattern, family: str) -> StructureConstants:
    g = build_sq(p)
    return g if family == "sq" else build_subalgebra(g, family)


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]
    residual: dict


def verify_jacobi(g: StructureConstants) -> list[JacobiViolation]:
    """Triples i < j < l with [[X_i,X_j],X_l] + cyclic != 0, with residuals."""
    out = []
    r = g.dim
    for i, j, l in combinations(range(r), 3):
        res: dict[int, Fraction] = {}
        for (x, y, z) in ((i, j, l), (j, l, i), (l, i, j)):
            for k, c in g.bracket(x, y).items():
                for m, d in g.bracket(k, z).items():
                    res[m] = res.get(m, 0) + c * d
        res = {m: v for m, v in res.items() if v != 0}
        if res:
            out.append(JacobiViolation((i, j, l), res))
    return out


# A linear map between algebras is a list: image of basis element i as {k: coeff}.
LinearMap = list


def homomorphism_violations(src: StructureConstants, dst: StructureConstants, images: LinearMap,
                            limit: int | None = None) -> list[tuple[int, int]]:
    """Pairs (i, j) where phi([X_i, X_j]) != [phi X_i, phi X_j]."""
    bad = []
    for i, j in combinations(range(src.dim), 2):
        lhs: dict[int, Fraction] = {}
        for k, c in src.bracket(i, j).items():
            for m, d in images[k].items():
                lhs[m] = lhs.get(m, 0) + c * d
        lhs = {m: v for m, v in lhs.items() if v != 0}
        if lhs != dst.bracket_vec(images[i], images[j]):
            bad.append((i, j))
            if limit is not None and len(bad) >= limit:
                break
    return bad


def compose(first: LinearMap, second: LinearMap) -> LinearMap:
    """second after first."""
    out = []
    for img in first:
        acc: dict[int, Fraction] = {}
        for k, c in img.items():
            for m, d in second[k].items():
                acc[m] = acc.get(m, 0) + c * d
        out.append({m: v for m, v in acc.items() if v != 0})
    return out


def is_identity(phi: LinearMap) -> bool:
    return all(img == {i: 1} for i, img in enumerate(phi))


@dataclass(frozen=True)
class SignedPermutation:
    """Basis element i goes to sign[i] * X_target[i]."""

    target: tuple
    sign: tuple

    def as_map(self) -> LinearMap:
        return [{t: Fraction(s)} for t, s in zip(self.target, self.sign)]

    def __call__(self, i: int) -> tuple[int, int]:
        return self.target[i], self.sign[i]


def grading_automorphism(g: StructureConstants, subset: Iterable[int]) -> SignedPermutation:
    """S_S: J_ab, M_ab scaled by (-1)^(chi(a)+chi(b)); E fixed. Checked on every bracket."""
    subset = set(subset)
    if g.omega is not None and any(not 0 <= s <= g.omega.n for s in subset):
        raise ValueError(f"subset {sorted(subset)} not inside 0..{g.omega.n}")
    signs = []
    for x in g.basis:
        if x.kind == "E":
            signs.append(1)
        else:
            signs.append((-1) ** ((x.a in subset) + (x.b in subset)))
    s = SignedPermutation(tuple(range(g.dim)), tuple(signs))
    phi = s.as_map()
    if homomorphism_violations(g, g, phi, limit=1):
        raise AutomorphismError(f"S_{sorted(subset)} does not preserve brackets")
    if not is_identity(compose(phi, phi)):
        raise AutomorphismError(f"S_{sorted(subset)} is not an involution")
    return s


@dataclass(frozen=True)
class Isomorphism:
    source: StructureConstants
    target: StructureConstants
    images: LinearMap


_REVERSAL_ALPHA = {1: 2, 2: 1, 3: 3}


def reversal_images(src: StructureConstants, dst: StructureConstants, n: int) -> LinearMap:
    images = []
    for x in src.basis:
        if x.kind == "J":
            y = J(n - x.b, n - x.a)
        elif x.kind == "M":
            y = M(_REVERSAL_ALPHA[x.alpha], n - x.b, n - x.a)
        else:
            y = E(_REVERSAL_ALPHA[x.alpha], n - x.a)
        images.append({dst.index(y): Fraction(-1)})
    return images


def reversal_isomorphism(p: OmegaPattern) -> Isomorphism:
    """sq_{w1..wN}(N+1) -> sq_{wN..w1}(N+1), checked bracket by bracket."""
    src = build_sq(p)
    dst = build_sq(p.reversed())
    images = reversal_images(src, dst, p.n)
    bad = homomorphism_violations(src, dst, images, limit=1)
    if bad:
        i, j = bad[0]
        raise AutomorphismError(f"reversal map fails on [{src.basis[i]}, {src.basis[j]}]")
    return Isomorphism(src, dst, images)


@dataclass(frozen=True)
class SemidirectReport:
    position: int
    ideal: tuple  # indices spanning t
    ideal_dim: int
    expected_dim: int
    is_ideal: bool
    is_abelian: bool
    left: tuple  # indices of the upper-left triangle
    right: tuple  # indices of the lower-right triangle
    left_matches: bool  # closes and equals sq_{w1..w(a-1)}(a)
    right_matches: bool  # closes and equals sq_{w(a+1)..wN}(N+1-a)

    @property
    def ok(self) -> bool:
        return (self.is_ideal and self.is_abelian and self.left_matches and self.right_matches
                and self.ideal_dim == self.expected_dim)


def _span_closed(g: StructureConstants, idxs: Sequence[int], against: Sequence[int], inside: set) -> bool:
    for i in idxs:
        for j in against:
            if any(k not in inside for k in g.bracket(i, j)):
                return False
    return True


def _matches_shifted(g: StructureConstants, idxs: Sequence[int], ref: StructureConstants, shift: int) -> bool:
    """Does g restricted to idxs equal ref after relabelling indices a -> a - shift?"""
    def relabel(x: GeneratorId) -> GeneratorId:
        if x.kind == "E":
            return GeneratorId("E", x.a - shift, alpha=x.alpha)
        return GeneratorId(x.kind, x.a - shift, x.b - shift, x.alpha)

    if len(idxs) != ref.dim:
        return False
    to_ref = {i: ref.index(relabel(g.basis[i])) for i in idxs}
    inside = set(idxs)
    for i, j in combinations(idxs, 2):
        res = g.bracket(i, j)
        if any(k not in inside for k in res):
            return False
        mapped = {to_ref[k]: v for k, v in res.items()}
        if mapped != ref.bracket(to_ref[i], to_ref[j]):
            return False
    return True


def semidirect_analysis(p: OmegaPattern, a: int) -> SemidirectReport:
    """Check the split t (.) (sq(a) + sq(N+1-a)) produced by w_a = 0."""
    if p.omega(a) != 0:
        raise ValueError(f"semidirect analysis needs w_{a} = 0, got {p.omega(a)}")
    g = build_sq(p)
    n = p.n
    ideal = tuple(i for i, x in enumerate(g.basis) if x.kind != "E" and x.a < a <= x.b)
    left = tuple(i for i, x in enumerate(g.basis)
                 if (x.kind == "E" and x.a < a) or (x.kind != "E" and x.b < a))
    right = tuple(i for i, x in enumerate(g.basis) if x.a >= a)
    assert len(ideal) + len(left) + len(right) == g.dim
    t = set(ideal)
    is_ideal = _span_closed(g, ideal, range(g.dim), t)
    is_abelian = all(not g.bracket(i, j) for i, j in combinations(ideal, 2))
    left_ref = _build_sq_any(OmegaPattern(p.values[: a - 1]))
    right_ref = _build_sq_any(OmegaPattern(p.values[a:]))
    return SemidirectReport(
        position=a,
        ideal=ideal,
        ideal_dim=len(ideal),
        expected_dim=4 * a * (n + 1 - a),
        is_ideal=is_ideal,
        is_abelian=is_abelian,
        left=left,
        right=right,
        left_matches=_matches_shifted(g, left, left_ref, 0),
        right_matches=_matches_shifted(g, right, right_ref, a),
    )


def to_json_dict(g: StructureConstants) -> dict:
    return {
        "n": g.n,
        "omega": [format_rational(v) for v in g.omega.values] if g.omega is not None else None,
        "family": g.family,
        "basis": [x.name for x in g.basis],
        "brackets": [
            [i, j, [[k, format_rational(v)] for k, v in row]]
            for (i, j), row in sorted(g.table.items())
        ],
    }


def from_json_dict(data: Mapping) -> StructureConstants:
    basis = tuple(GeneratorId.parse(s) for s in data["basis"])
    table = {}
    for i, j, terms in data["brackets"]:
        if not i < j:
            raise ValueError(f"bracket entries must have i < j, got ({i}, {j})")
        row = tuple(sorted((int(k), parse_rational(str(v))) for k, v in terms))
        if row:
            table[(i, j)] = row
    omega = OmegaPattern(tuple(parse_rational(str(v)) for v in data["omega"])) if data.get("omega") else None
    return StructureConstants(basis, table, omega, data.get("family", "sq"))


def dumps(g: StructureConstants, **kw) -> str:
    return json.dumps(to_json_dict(g), **kw)


def loads(text: str) -> StructureConstants:
    return from_json_dict(json.loads(text))
