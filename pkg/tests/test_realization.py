import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from quasiunitary.ckalgebra import E, J, M, OmegaPattern, build_sq
from quasiunitary.exactnum import Quaternion
from quasiunitary.realization import (
    QuaternionMatrix, antihermiticity_check, expand_in_basis, matrix_bracket, metric_matrix,
    pure_bracket_identity, real_matrix, realization_consistency, realize_generator, sq1_generators,
)

from oracles import quaternion_matrix_product

i1, i2, i3 = (Quaternion.unit(a) for a in (1, 2, 3))


def sign_patterns(max_n=3):
    for n in range(1, max_n + 1):
        for vals in product((-1, 0, 1), repeat=n):
            yield OmegaPattern(vals)


def test_realize_examples():
    assert realize_generator(OmegaPattern((1,)), J(0, 1)) == real_matrix([[0, -1], [1, 0]])
    assert realize_generator(OmegaPattern((0,)), J(0, 1)) == real_matrix([[0, 0], [1, 0]])
    assert realize_generator(OmegaPattern((1,)), E(2, 0)) == QuaternionMatrix.from_rows([[i2, 0], [0, 0]])
    w = Fraction(-3, 2)
    assert realize_generator(OmegaPattern((w,)), M(3, 0, 1)) == QuaternionMatrix.from_rows([[0, i3 * w], [i3, 0]])


def test_metric_matrix():
    ik = metric_matrix(OmegaPattern((2, -1, 3)))
    assert [ik[a, a].re for a in range(4)] == [1, 2, -2, -6]


def test_antihermiticity():
    p = OmegaPattern((1,))
    assert not antihermiticity_check(p, QuaternionMatrix.unit(2, 0, 1))
    assert antihermiticity_check(p, QuaternionMatrix.zeros(2))
    with pytest.raises(ValueError):
        antihermiticity_check(p, QuaternionMatrix.zeros(3))


@pytest.mark.parametrize("p", list(sign_patterns()) + [OmegaPattern((2, Fraction(1, 2)))], ids=str)
def test_generators_antihermitian_and_trace(p):
    for x in build_sq(p).basis:
        m = realize_generator(p, x)
        assert antihermiticity_check(p, m)
        tr = m.trace()
        assert tr.re == 0
        assert tr.is_zero() == (x.kind != "E")


def test_bracket_examples():
    p = OmegaPattern((1,))
    x = realize_generator(p, J(0, 1))
    assert matrix_bracket(x, x).is_zero()
    got = matrix_bracket(x, realize_generator(p, M(1, 0, 1)))
    want = (realize_generator(p, E(1, 1)) - realize_generator(p, E(1, 0))).scale_left(2)
    assert got == want
    e10, e20 = realize_generator(p, E(1, 0)), realize_generator(p, E(2, 0))
    assert matrix_bracket(e10, e20) == realize_generator(p, E(3, 0)).scale_left(2)


def test_size_mismatch():
    with pytest.raises(ValueError):
        matrix_bracket(QuaternionMatrix.zeros(2), QuaternionMatrix.zeros(3))


def _to_sympy(m):
    return [[sympy.Quaternion(*q.coeffs) for q in row] for row in m.entries]


def test_matrix_product_against_sympy():
    rng = random.Random(3)
    rnd = lambda: Quaternion(*(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)))  # noqa: E731
    for _ in range(5):
        a = QuaternionMatrix.from_rows([[rnd() for _ in range(3)] for _ in range(3)])
        b = QuaternionMatrix.from_rows([[rnd() for _ in range(3)] for _ in range(3)])
        want = quaternion_matrix_product(_to_sympy(a), _to_sympy(b))
        got = _to_sympy(a @ b)
        assert got == want


def test_pure_bracket_same_unit_same_matrix():
    x = real_matrix([[1, 2], [3, 4]])
    assert pure_bracket_identity(2, x, 2, x).is_zero()


def test_pure_bracket_diagonal():
    # oracle: {e00, e00} = 2 e00, so the sum collapses to 2 i3 e00
    e00 = real_matrix([[1, 0], [0, 0]])
    assert pure_bracket_identity(1, e00, 2, e00) == QuaternionMatrix.unit(2, 0, 0, i3 * 2)


def test_pure_bracket_offdiagonal_anticommutator_vanishes():
    # (e01+e10)(e01-e10) = e11 - e00 and the reverse product is its negative,
    # so {X, Y} = 0 and [i1 X, i2 Y] = i3 {X, Y} = 0
    x = real_matrix([[0, 1], [1, 0]])
    y = real_matrix([[0, 1], [-1, 0]])
    direct = quaternion_matrix_product(
        [[sympy.Quaternion(0, v, 0, 0) for v in r] for r in ([0, 1], [1, 0])],
        [[sympy.Quaternion(0, 0, v, 0) for v in r] for r in ([0, 1], [-1, 0])],
    )
    direct_rev = quaternion_matrix_product(
        [[sympy.Quaternion(0, 0, v, 0) for v in r] for r in ([0, 1], [-1, 0])],
        [[sympy.Quaternion(0, v, 0, 0) for v in r] for r in ([0, 1], [1, 0])],
    )
    oracle = [[direct[i][j] - direct_rev[i][j] for j in range(2)] for i in range(2)]
    assert all(q == sympy.Quaternion(0, 0, 0, 0) for row in oracle for q in row)
    assert pure_bracket_identity(1, x, 2, y).is_zero()


@pytest.mark.parametrize("alpha,beta", list(product((1, 2, 3), repeat=2)))
def test_pure_bracket_random(alpha, beta):
    rng = random.Random(alpha * 10 + beta)
    x = real_matrix([[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)])
    y = real_matrix([[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)])
    pure_bracket_identity(alpha, x, beta, y)  # raises on disagreement


def test_pure_bracket_rejects_quaternionic_input():
    with pytest.raises(ValueError):
        pure_bracket_identity(1, QuaternionMatrix.unit(2, 0, 0, i1), 2, real_matrix([[1, 0], [0, 1]]))


def test_consistency_compact_n1():
    p = OmegaPattern((1,))
    assert realization_consistency(p) == []
    x = realize_generator(p, J(0, 1))
    assert matrix_bracket(x, x).is_zero()


@pytest.mark.parametrize("p", list(sign_patterns(3)), ids=str)
def test_consistency_sign_patterns(p):
    assert realization_consistency(p) == []


def test_consistency_detects_wrong_table():
    p = OmegaPattern((1, -1))
    g = build_sq(p)
    k = next(iter(g.table))
    table = dict(g.table)
    table[k] = tuple((c, 2 * v) for c, v in table[k])
    from quasiunitary.ckalgebra import StructureConstants
    bad = realization_consistency(p, StructureConstants(g.basis, table, p))
    assert [v.pair for v in bad] == [k]


def test_expand_rejects_matrix_outside_span():
    p = OmegaPattern((1,))
    g = build_sq(p)
    from quasiunitary.realization import OutsideSpanError
    with pytest.raises(OutsideSpanError):
        expand_in_basis(p, g.basis, QuaternionMatrix.unit(2, 0, 1))


def test_matrix_jacobi_random_triples():
    p = OmegaPattern((1, 0, -1))
    g = build_sq(p)
    rng = random.Random(0)
    mats = [realize_generator(p, x) for x in g.basis]
    for _ in range(40):
        a, b, c = (mats[rng.randrange(g.dim)] for _ in range(3))
        total = (matrix_bracket(matrix_bracket(a, b), c) + matrix_bracket(matrix_bracket(b, c), a)
                 + matrix_bracket(matrix_bracket(c, a), b))
        assert total.is_zero()


def test_sq1_generators():
    gens = sq1_generators(3)
    assert matrix_bracket(gens[0], gens[1]) == gens[2].scale_left(2)
    for m in gens:
        assert m.trace().re == 0 and not m.trace().is_zero()
    p = OmegaPattern((2, 0))
    for x in build_sq(p).basis:
        if x.kind == "J":
            for m in gens:
                assert matrix_bracket(m, realize_generator(p, x)).is_zero()


def test_printing():
    m = realize_generator(OmegaPattern((Fraction(1, 2),)), M(1, 0, 1))
    assert str(m).splitlines() == ["[    0  1/2i ]", "[    i     0 ]"]
