"""Quaternionic matrix realization of sq_w(N+1).

Matrices act on column vectors from the left and scalars multiply vectors
on the right, so left matrix action is H-linear and the hermitian form
conjugates its first slot. Generators:

    J_ab = -w_ab e_ab + e_ba,  M^alpha_ab = i_alpha (w_ab e_ab + e_ba),  E^alpha_a = i_alpha e_aa
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .ckalgebra import GeneratorId, OmegaPattern, StructureConstants, build_sq, omega_ab
from .exactnum import ONE, ZERO, Quaternion, epsilon, format_quaternion


@dataclass(frozen=True)
class QuaternionMatrix:
    entries: tuple  # tuple of row tuples of Quaternion

    @classmethod
    def zeros(cls, size: int) -> "QuaternionMatrix":
        return cls(tuple(tuple(ZERO for _ in range(size)) for _ in range(size)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QuaternionMatrix":
        def q(x):
            return x if isinstance(x, Quaternion) else Quaternion(Fraction(x))
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        return cls(tuple(tuple(q(x) for x in r) for r in rows))

    @classmethod
    def unit(cls, size: int, a: int, b: int, value: Quaternion = ONE) -> "QuaternionMatrix":
        """value * e_ab."""
        rows = [[ZERO] * size for _ in range(size)]
        rows[a][b] = value
        return cls.from_rows(rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _check(self, other: "QuaternionMatrix"):
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        self._check(other)
        return QuaternionMatrix(tuple(tuple(x + y for x, y in zip(r, s))
                                      for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        self._check(other)
        return QuaternionMatrix(tuple(tuple(x - y for x, y in zip(r, s))
                                      for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "QuaternionMatrix":
        return QuaternionMatrix(tuple(tuple(-x for x in r) for r in self.entries))

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        self._check(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    x, y = self.entries[i][k], other.entries[k][j]
                    if not x.is_zero() and not y.is_zero():
                        acc = acc + x * y  # order of factors matters
                row.append(acc)
            out.append(tuple(row))
        return QuaternionMatrix(tuple(out))

    def scale_left(self, q) -> "QuaternionMatrix":
        """q * X entrywise (q on the left)."""
        q = q if isinstance(q, Quaternion) else Quaternion(Fraction(q))
        return QuaternionMatrix(tuple(tuple(q * x for x in r) for r in self.entries))

    def dagger(self) -> "QuaternionMatrix":
        n = self.size
        return QuaternionMatrix(tuple(tuple(self.entries[j][i].conj() for j in range(n)) for i in range(n)))

    def trace(self) -> Quaternion:
        acc = ZERO
        for i in range(self.size):
            acc = acc + self.entries[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __str__(self) -> str:
        cells = [[format_quaternion(x) for x in r] for r in self.entries]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def real_matrix(rows: Sequence[Sequence]) -> QuaternionMatrix:
    return QuaternionMatrix.from_rows(rows)


def metric_matrix(p: OmegaPattern) -> QuaternionMatrix:
    """I_k = diag(1, w_01, w_02, ..., w_0N)."""
    n = p.n + 1
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Quaternion(omega_ab(p, 0, i))
    return QuaternionMatrix.from_rows(rows)


def realize_generator(p: OmegaPattern, g: GeneratorId) -> QuaternionMatrix:
    size = p.n + 1
    top = g.b if g.kind != "E" else g.a
    if top > p.n:
        raise ValueError(f"{g} does not belong to sq(N+1) with N={p.n}")
    if g.kind == "E":
        return QuaternionMatrix.unit(size, g.a, g.a, Quaternion.unit(g.alpha))
    w = omega_ab(p, g.a, g.b)
    if g.kind == "J":
        return QuaternionMatrix.unit(size, g.a, g.b, Quaternion(-w)) + QuaternionMatrix.unit(size, g.b, g.a)
    i_al = Quaternion.unit(g.alpha)
    return QuaternionMatrix.unit(size, g.a, g.b, i_al * w) + QuaternionMatrix.unit(size, g.b, g.a, i_al)


def antihermiticity_check(p: OmegaPattern, x: QuaternionMatrix) -> bool:
    """X^dagger I_k + I_k X == 0."""
    if x.size != p.n + 1:
        raise ValueError(f"matrix size {x.size} does not match N+1={p.n + 1}")
    ik = metric_matrix(p)
    return (x.dagger() @ ik + ik @ x).is_zero()


def matrix_bracket(x: QuaternionMatrix, y: QuaternionMatrix) -> QuaternionMatrix:
    return x @ y - y @ x


def pure_bracket_identity(alpha: int, x: QuaternionMatrix, beta: int, y: QuaternionMatrix) -> QuaternionMatrix:
    """[i_a X, i_b Y] for real X, Y via -delta_ab [X,Y] + sum_g eps_abg i_g {X,Y}.

    The result is compared against the direct quaternionic commutator.
    """
    for m in (x, y):
        if any(q.im1 or q.im2 or q.im3 for r in m.entries for q in r):
            raise ValueError("pure_bracket_identity needs real matrices")
    comm = matrix_bracket(x, y)
    anti = x @ y + y @ x
    out = QuaternionMatrix.zeros(x.size)
    if alpha == beta:
        out = out - comm
    for gamma in (1, 2, 3):
        e = epsilon(alpha, beta, gamma)
        if e:
            out = out + anti.scale_left(Quaternion.unit(gamma) * e)
    direct = matrix_bracket(x.scale_left(Quaternion.unit(alpha)), y.scale_left(Quaternion.unit(beta)))
    if direct != out:
        raise AssertionError("pure bracket formula disagrees with the direct commutator")
    return out


class OutsideSpanError(AssertionError):
    pass


def expand_in_basis(p: OmegaPattern, basis: Sequence[GeneratorId], z: QuaternionMatrix) -> dict[int, Fraction]:
    """Coordinates of z in the realized basis, read off matrix positions.

    The lower entry (b, a) of J_ab / M^alpha_ab is 1 / i_alpha whatever w_ab is,
    so it fixes those coefficients; diagonal imaginary parts fix the E's. The
    reconstruction is compared with z to make sure z lies in the span.
    """
    coeffs: dict[int, Fraction] = {}
    for k, g in enumerate(basis):
        if g.kind == "J":
            c = z[g.b, g.a].re
        elif g.kind == "M":
            c = z[g.b, g.a].imag(g.alpha)
        else:
            c = z[g.a, g.a].imag(g.alpha)
        if c:
            coeffs[k] = c
    recon = QuaternionMatrix.zeros(z.size)
    for k, c in coeffs.items():
        recon = recon + realize_generator(p, basis[k]).scale_left(Quaternion(c))
    if recon != z:
        raise OutsideSpanError("matrix is not in the span of the realized generators")
    return coeffs


@dataclass(frozen=True)
class RealizationViolation:
    pair: tuple[int, int]
    from_matrices: dict
    from_table: dict


def realization_consistency(p: OmegaPattern, g: StructureConstants | None = None) -> list[RealizationViolation]:
    """Compare every matrix commutator with the abstract bracket table."""
    if g is None:
        g = build_sq(p)
    mats = [realize_generator(p, x) for x in g.basis]
    out = []
    for i, j in combinations(range(g.dim), 2):
        got = expand_in_basis(p, g.basis, matrix_bracket(mats[i], mats[j]))
        want = g.bracket(i, j)
        if got != want:
            out.append(RealizationViolation((i, j), got, want))
    return out


def sq1_generators(n: int) -> tuple[QuaternionMatrix, QuaternionMatrix, QuaternionMatrix]:
    """I^alpha = i_alpha * identity, the copy of sq(1) acting by quaternion units."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    gens = []
    for al in (1, 2, 3):
        rows = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            rows[a][a] = Quaternion.unit(al)
        gens.append(QuaternionMatrix.from_rows(rows))
    for al, be in ((1, 2), (2, 3), (3, 1)):
        ga = 6 - al - be
        want = gens[ga - 1].scale_left(2 * epsilon(al, be, ga))
        assert matrix_bracket(gens[al - 1], gens[be - 1]) == want
    for m in gens:
        tr = m.trace()
        assert tr.re == 0 and not tr.is_zero()
    return tuple(gens)
