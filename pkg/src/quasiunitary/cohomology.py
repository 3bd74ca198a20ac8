"""Second cohomology H^2(g, R) with trivial coefficients, from structure constants.

A 2-cochain xi is stored as a vector over the pairs (i, j), i < j, in
lexicographic order. The cocycle condition for every triple i < j < l is

    sum_k C_ij^k xi_kl + C_jl^k xi_ki + C_li^k xi_kj = 0

and the coboundary of mu is (delta mu)_ij = sum_k C_ij^k mu_k.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .ckalgebra import (
    E, J, M, OmegaPattern, StructureConstants, build_family, build_sq, build_subalgebra, omega_ab,
)
from .exactnum import format_rational, parse_rational


def n_pairs(r: int) -> int:
    return r * (r - 1) // 2


def pair_index(i: int, j: int, r: int) -> int:
    """Position of (i, j), i < j, in lexicographic pair order."""
    if not 0 <= i < j < r:
        raise IndexError(f"bad pair ({i}, {j}) for dimension {r}")
    return i * r - i * (i + 1) // 2 + (j - i - 1)


def pair_list(r: int) -> list[tuple[int, int]]:
    return list(combinations(range(r), 2))


@dataclass(frozen=True)
class TwoCochain:
    dim: int
    values: tuple  # length n_pairs(dim)

    def __post_init__(self):
        if len(self.values) != n_pairs(self.dim):
            raise ValueError("cochain vector has the wrong length")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def zero(cls, dim: int) -> "TwoCochain":
        return cls(dim, (0,) * n_pairs(dim))

    @classmethod
    def from_pairs(cls, dim: int, entries: Mapping[tuple[int, int], object]) -> "TwoCochain":
        """Entries may be given for either order; xi_ji = -xi_ij is applied."""
        vals = [Fraction(0)] * n_pairs(dim)
        for (i, j), v in entries.items():
            if i == j:
                if v:
                    raise ValueError("diagonal entry of an antisymmetric form")
                continue
            if i > j:
                i, j, v = j, i, -Fraction(v)
            vals[pair_index(i, j, dim)] += Fraction(v)
        return cls(dim, tuple(vals))

    def __call__(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.values[pair_index(i, j, self.dim)]
        return -self.values[pair_index(j, i, self.dim)]

    def support(self) -> dict[tuple[int, int], Fraction]:
        pairs = pair_list(self.dim)
        return {pairs[k]: v for k, v in enumerate(self.values) if v}

    def is_zero(self) -> bool:
        return not any(self.values)


def cocycle_matrix(g: StructureConstants) -> linalg.SparseRationalMatrix:
    """One row per triple i < j < l with a nonzero constraint; columns are pairs."""
    r = g.dim
    triplets = []
    row = 0
    for i, j, l in combinations(range(r), 3):
        acc: dict[int, Fraction] = {}
        for (x, y, z) in ((i, j, l), (j, l, i), (l, i, j)):
            # C_xy^k xi_kz
            for k, c in g.bracket(x, y).items():
                if k == z:
                    continue
                if k < z:
                    col, s = pair_index(k, z, r), 1
                else:
                    col, s = pair_index(z, k, r), -1
                acc[col] = acc.get(col, 0) + s * c
        entries = [(row, col, v) for col, v in acc.items() if v != 0]
        if entries:
            triplets.extend(entries)
            row += 1
    return linalg.SparseRationalMatrix.from_triplets(row, n_pairs(r), triplets)


def coboundary_matrix(g: StructureConstants) -> linalg.SparseRationalMatrix:
    """Matrix of mu -> delta mu: rows are pairs, columns are basis elements."""
    r = g.dim
    trip = [(pair_index(i, j, r), k, c) for (i, j), row in g.table.items() for k, c in row]
    return linalg.SparseRationalMatrix.from_triplets(n_pairs(r), r, trip)


def cocycle_space(g: StructureConstants, check_jacobi: bool = False) -> linalg.NullspaceBasis:
    if check_jacobi:
        from .ckalgebra import verify_jacobi
        bad = verify_jacobi(g)
        if bad:
            raise ValueError(f"Jacobi identity fails on {len(bad)} triples, first {bad[0].triple}")
    return linalg.nullspace(cocycle_matrix(g))


def coboundary_space(g: StructureConstants) -> list[tuple]:
    """delta(e_k) for every basis element k (spanning, not necessarily independent)."""
    cols: list[list[Fraction]] = [[Fraction(0)] * n_pairs(g.dim) for _ in range(g.dim)]
    for (i, j), row in g.table.items():
        p = pair_index(i, j, g.dim)
        for k, c in row:
            cols[k][p] = c
    return [tuple(v) for v in cols]


def derived_algebra_dim(g: StructureConstants) -> int:
    """dim [g, g] as the rank of the bracket vectors, in R^dim."""
    trip = []
    for row_id, ((i, j), row) in enumerate(sorted(g.table.items())):
        trip.extend((row_id, k, c) for k, c in row)
    m = linalg.SparseRationalMatrix.from_triplets(len(g.table), g.dim, trip)
    return linalg.rank(m)


def is_cocycle(g: StructureConstants, xi: TwoCochain) -> bool:
    if xi.dim != g.dim:
        raise ValueError("cochain and algebra dimensions differ")
    return not any(cocycle_matrix(g).matvec(list(xi.values)))


@dataclass(frozen=True)
class CohomologyReport:
    family: str
    omega: OmegaPattern | None
    dim_z2: int
    dim_b2: int
    dim_h2: int
    representatives: tuple  # of TwoCochain
    dim_derived: int

    @property
    def n(self) -> int | None:
        return None if self.omega is None else self.omega.n

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "omega": [format_rational(v) for v in self.omega.values] if self.omega is not None else None,
            "dim_z2": self.dim_z2,
            "dim_b2": self.dim_b2,
            "dim_h2": self.dim_h2,
            "representatives": [
                [[i, j, format_rational(v)] for (i, j), v in sorted(rep.support().items())]
                for rep in self.representatives
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping, dim: int) -> "CohomologyReport":
        omega = OmegaPattern(tuple(parse_rational(v) for v in data["omega"])) if data.get("omega") else None
        reps = tuple(
            TwoCochain.from_pairs(dim, {(i, j): parse_rational(v) for i, j, v in rep})
            for rep in data["representatives"]
        )
        return cls(data["family"], omega, data["dim_z2"], data["dim_b2"], data["dim_h2"], reps, data["dim_b2"])


def h2(g: StructureConstants) -> CohomologyReport:
    """dim Z^2, dim B^2, dim H^2 and representatives completing B^2 inside Z^2."""
    cmat = cocycle_matrix(g)
    z = linalg.nullspace(cmat)
    bvecs = coboundary_space(g)
    for b in bvecs:
        if any(cmat.matvec(list(b))):
            raise AssertionError("a coboundary fails the cocycle condition")
    basis = linalg.IncrementalBasis(n_pairs(g.dim))
    for b in bvecs:
        basis.add(b)
    dim_b2 = basis.rank
    dim_derived = derived_algebra_dim(g)
    if dim_derived != dim_b2:
        raise AssertionError(f"dim B^2 = {dim_b2} but dim [g,g] = {dim_derived}")
    reps = []
    for v in z.vectors:
        if basis.add(v):
            reps.append(TwoCochain(g.dim, v))
    dim_h2 = linalg.quotient_dimension(z, bvecs)
    assert dim_h2 == len(reps) == z.dim - dim_b2
    return CohomologyReport(g.family, g.omega, z.dim, dim_b2, dim_h2, tuple(reps), dim_derived)


def h2_family(p: OmegaPattern, family: str = "sq") -> CohomologyReport:
    return h2(build_family(p, family))


@dataclass(frozen=True)
class ExtensionClass:
    trivial: bool
    witness: tuple | None  # mu with delta mu = xi when trivial


def classify_extension(g: StructureConstants, xi: TwoCochain) -> ExtensionClass:
    """Trivial iff xi = delta mu; the witness mu removes xi via X_i -> X_i + mu_i Xi."""
    if not is_cocycle(g, xi):
        raise ValueError("cochain is not a cocycle")
    sol = linalg.solve(coboundary_matrix(g), list(xi.values))
    if sol is None:
        return ExtensionClass(False, None)
    return ExtensionClass(True, tuple(sol))


class ExtensionType(enum.Enum):
    """How a unitary extension coefficient behaves under contraction.

    TYPE_I: coboundary for every w. TYPE_II: coboundary iff its w_a != 0.
    TYPE_III: never a coboundary when nonzero.
    """

    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"


def _unitary(p: OmegaPattern, alpha: int) -> StructureConstants:
    if alpha not in (1, 2, 3):
        raise ValueError(f"alpha must be 1, 2 or 3, got {alpha}")
    return build_subalgebra(build_sq(p), f"u{alpha}")


def type2_coefficients(p: OmegaPattern, a: int) -> dict[tuple[int, int], Fraction]:
    """f_bc = sum_s w_(b,s-1) w_(s,c) f_(s-1,s) with only f_(a-1,a) = 1."""
    if not 1 <= a <= p.n:
        raise IndexError(f"position {a} outside 1..{p.n}")
    out = {}
    for b, c in combinations(range(p.n + 1), 2):
        f = Fraction(0)
        for s in range(b + 1, c + 1):
            if s == a:
                f += omega_ab(p, b, s - 1) * omega_ab(p, s, c)
        if f:
            out[(b, c)] = f
    return out


def type2_cochain(p: OmegaPattern, alpha: int, a: int, g: StructureConstants | None = None) -> TwoCochain:
    """xi(J_bc, M^alpha_bc) = f_bc from the single seed f_(a-1,a) = 1; zero elsewhere."""
    if g is None:
        g = _unitary(p, alpha)
    entries = {(g.index(J(b, c)), g.index(M(alpha, b, c))): f for (b, c), f in type2_coefficients(p, a).items()}
    return TwoCochain.from_pairs(g.dim, entries)


def unitary_type2_representative(p: OmegaPattern, alpha: int, a: int) -> TwoCochain:
    """Nontrivial class of u^alpha_w(N+1) created by the contraction w_a = 0."""
    g = _unitary(p, alpha)
    xi = type2_cochain(p, alpha, a, g)
    if not is_cocycle(g, xi):
        raise AssertionError(f"type II cochain for a={a} is not a cocycle")
    trivial = classify_extension(g, xi).trivial
    if p.omega(a) != 0:
        # pseudoextension: removable while w_a != 0
        assert trivial, "type II cochain with w_a != 0 should be a coboundary"
        raise ValueError(f"w_{a} = {p.omega(a)} != 0; the type II cochain is a coboundary")
    if trivial:
        raise AssertionError(f"type II cochain for a={a} is a coboundary although w_a = 0")
    return xi


def type3_system(p: OmegaPattern) -> linalg.SparseRationalMatrix:
    """Linear conditions on e_(a,b), a < b, columns in lexicographic pair order."""
    n1 = p.n + 1
    col = {ab: k for k, ab in enumerate(combinations(range(n1), 2))}
    trip = []
    row = 0

    def emit(terms):
        nonlocal row
        terms = [(c, v) for c, v in terms if v]
        if terms:
            trip.extend((row, c, v) for c, v in terms)
            row += 1

    for a, b in combinations(range(n1), 2):
        emit([(col[(a, b)], omega_ab(p, a, b))])
    for a, b, c in combinations(range(n1), 3):
        wab, wbc = omega_ab(p, a, b), omega_ab(p, b, c)
        emit([(col[(a, c)], wab), (col[(b, c)], -wab)])
        emit([(col[(a, b)], wbc), (col[(a, c)], -wbc)])
    return linalg.SparseRationalMatrix.from_triplets(row, len(col), trip)


def unitary_type3_basis(p: OmegaPattern) -> list[dict[tuple[int, int], Fraction]]:
    pairs = list(combinations(range(p.n + 1), 2))
    ns = linalg.nullspace(type3_system(p))
    return [{pairs[k]: v for k, v in enumerate(vec) if v} for vec in ns.vectors]


def unitary_type3_count(p: OmegaPattern) -> int:
    count = len(unitary_type3_basis(p))
    nz = len(p.zero_positions())
    assert count == nz * (nz + 1) // 2, f"type III count {count} != n(n+1)/2 for n={nz}"
    return count


def type3_cochain(p: OmegaPattern, alpha: int, e: Mapping[tuple[int, int], Fraction],
                  g: StructureConstants | None = None) -> TwoCochain:
    """xi(E^alpha_a, E^alpha_b) = e_(a,b)."""
    if g is None:
        g = _unitary(p, alpha)
    return TwoCochain.from_pairs(g.dim, {(g.index(E(alpha, a)), g.index(E(alpha, b))): v for (a, b), v in e.items()})


@dataclass(frozen=True)
class UnitarySplit:
    dim_h2: int
    type2: int  # independent type II classes
    type3: int  # independent type III classes
    together: int  # independent classes spanned by both kinds

    @property
    def exhausts(self) -> bool:
        return self.type2 + self.type3 == self.together == self.dim_h2


def unitary_h2_split(p: OmegaPattern, alpha: int) -> UnitarySplit:
    """Count type II and type III classes modulo coboundaries in u^alpha_w(N+1)."""
    g = _unitary(p, alpha)
    rep = h2(g)
    t2 = [unitary_type2_representative(p, alpha, a) for a in p.zero_positions()]
    t3 = [type3_cochain(p, alpha, e, g) for e in unitary_type3_basis(p)]
    for xi in t3:
        if not is_cocycle(g, xi):
            raise AssertionError("type III cochain is not a cocycle")

    def classes(cochains: Sequence[TwoCochain]) -> int:
        basis = linalg.IncrementalBasis(n_pairs(g.dim))
        for b in coboundary_space(g):
            basis.add(b)
        base = basis.rank
        for xi in cochains:
            basis.add(xi.values)
        return basis.rank - base

    return UnitarySplit(rep.dim_h2, classes(t2), classes(t3), classes(t2 + t3))


def pullback(xi: TwoCochain, signs: Sequence[int]) -> TwoCochain:
    """xi(S X_i, S X_j) for a diagonal sign map S."""
    r = xi.dim
    vals = [v * signs[i] * signs[j] for (i, j), v in zip(pair_list(r), xi.values)]
    return TwoCochain(r, tuple(vals))


def expected_unitary_h2(p: OmegaPattern) -> int:
    n = len(p.zero_positions())
    return n * (n + 3) // 2
