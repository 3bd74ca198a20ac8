import json
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from quasiunitary import ckalgebra as ck
from quasiunitary.ckalgebra import E, J, M, OmegaPattern, build_sq, omega_ab

VALUES = (-1, 0, 1, 2, Fraction(1, 2))
patterns = st.integers(1, 4).flatmap(lambda n: st.tuples(*[st.sampled_from(VALUES)] * n)).map(OmegaPattern)


def sign_patterns(max_n=3):
    for n in range(1, max_n + 1):
        for vals in product((-1, 0, 1), repeat=n):
            yield OmegaPattern(vals)


def test_omega_ab_examples():
    assert all(omega_ab(OmegaPattern((1, 1, 1)), a, b) == 1 for a in range(4) for b in range(a, 4))
    p = OmegaPattern((2, 0, 3))
    assert omega_ab(p, 0, 3) == 0
    assert omega_ab(p, 2, 3) == 3
    assert omega_ab(p, 0, 1) == 2
    assert all(omega_ab(p, a, a) == 1 for a in range(4))


def test_omega_ab_errors():
    p = OmegaPattern((1, 2))
    with pytest.raises(IndexError):
        omega_ab(p, 0, 3)
    with pytest.raises(ValueError):
        omega_ab(p, 2, 1)


@given(patterns)
def test_omega_multiplicative(p):
    for a in range(p.n + 1):
        for b in range(a, p.n + 1):
            for c in range(a, b + 1):
                assert omega_ab(p, a, b) == omega_ab(p, a, c) * omega_ab(p, c, b)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimension_and_basis_counts(n):
    g = build_sq(OmegaPattern((1,) * n))
    assert g.dim == (n + 1) * (2 * n + 3) == 2 * (n + 1) ** 2 + (n + 1)
    kinds = [x.kind for x in g.basis]
    assert kinds.count("J") == n * (n + 1) // 2
    assert kinds.count("M") == 3 * n * (n + 1) // 2
    assert kinds.count("E") == 3 * (n + 1)


def test_basis_order():
    g = build_sq(OmegaPattern((1,)))
    assert [x.name for x in g.basis] == [
        "J_0_1", "M1_0_1", "M2_0_1", "M3_0_1", "E1_0", "E1_1", "E2_0", "E2_1", "E3_0", "E3_1",
    ]


def test_rejects_n_zero():
    with pytest.raises(ValueError):
        build_sq(OmegaPattern(()))


@pytest.mark.parametrize("p", list(sign_patterns()), ids=str)
def test_every_pair_has_a_relation(p):
    # each unordered pair is written by exactly one line of the table (or twice, consistently)
    raw = ck._sq_table(p)
    r = (p.n + 1) * (2 * p.n + 3)
    assert len(raw) == r * (r - 1) // 2


def test_bracket_examples():
    w1 = Fraction(3, 7)
    g = build_sq(OmegaPattern((w1, 5)))
    assert g.bracket_names(J(0, 1), J(0, 2)) == {J(1, 2): w1}
    assert g.bracket_names(E(1, 0), E(2, 0)) == {E(3, 0): 2}
    assert g.bracket_names(M(1, 0, 1), M(2, 0, 1)) == {E(3, 0): 2 * w1, E(3, 1): 2 * w1}
    assert g.bracket_names(J(0, 2), J(0, 1)) == {J(1, 2): -w1}
    g3 = build_sq(OmegaPattern((1, 1, 1)))
    assert g3.bracket_names(J(0, 1), M(1, 2, 3)) == {}


@pytest.mark.parametrize("p", list(sign_patterns(3)) + [OmegaPattern((2, Fraction(1, 2), -1))], ids=str)
def test_jacobi(p):
    assert ck.verify_jacobi(build_sq(p)) == []


@settings(max_examples=10, deadline=None)
@given(patterns)
def test_jacobi_random_rational(p):
    assert ck.verify_jacobi(build_sq(p)) == []


def test_jacobi_detects_broken_table():
    basis = (J(0, 1), J(0, 2), J(1, 2))
    good = {(0, 1): ((2, Fraction(1)),), (0, 2): ((1, Fraction(1)),)}
    g = ck.StructureConstants(basis, good)
    assert ck.verify_jacobi(g) == []
    broken = dict(good)
    broken[(1, 2)] = ((1, Fraction(1)),)  # [X2,X3] = X2 leaves residual -X3
    bad = ck.verify_jacobi(ck.StructureConstants(basis, broken))
    assert len(bad) == 1 and bad[0].triple == (0, 1, 2) and bad[0].residual


def test_jacobi_abelian():
    basis = tuple(E(1, a) for a in range(4))
    assert ck.verify_jacobi(ck.StructureConstants(basis, {})) == []


def test_subalgebra_so():
    w1 = Fraction(-2)
    g = build_sq(OmegaPattern((w1, 1)))
    so = ck.build_subalgebra(g, "so")
    assert so.dim == 3
    assert so.bracket_names(J(0, 1), J(0, 2)) == {J(1, 2): w1}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("fam", ["u1", "u2", "u3"])
def test_subalgebra_unitary_dimension(n, fam):
    u = ck.build_subalgebra(build_sq(OmegaPattern((1, 0, -1)[:n])), fam)
    assert u.dim == (n + 1) ** 2
    assert ck.verify_jacobi(u) == []


def test_nested_subalgebras():
    g = build_sq(OmegaPattern((1, 0, 2)))
    via_u = ck.build_subalgebra(ck.build_subalgebra(g, "u1"), "so")
    direct = ck.build_subalgebra(g, "so")
    assert via_u.basis == direct.basis
    assert via_u.table == direct.table


def test_closure_violation_raises():
    g = build_sq(OmegaPattern((1,)))
    sel = ck.SubalgebraSelector("custom", (g.index(M(1, 0, 1)), g.index(M(2, 0, 1))))
    with pytest.raises(ck.ClosureError):
        ck.build_subalgebra(g, sel)


def test_grading_identity():
    g = build_sq(OmegaPattern((1, 0)))
    s = ck.grading_automorphism(g, set())
    assert ck.is_identity(s.as_map())


def test_grading_single_index_n1():
    g = build_sq(OmegaPattern((1,)))
    s = ck.grading_automorphism(g, {0})
    flips = {x.name for x, sg in zip(g.basis, s.sign) if sg == -1}
    assert flips == {"J_0_1", "M1_0_1", "M2_0_1", "M3_0_1"}
    # direct check against the table: [S X, S Y] = S [X, Y] for every pair
    for i, j in combinations(range(g.dim), 2):
        lhs = {k: v * s.sign[i] * s.sign[j] for k, v in g.bracket(i, j).items()}
        rhs = {k: v * s.sign[k] for k, v in g.bracket(i, j).items()}
        assert lhs == rhs


@pytest.mark.parametrize("p", [OmegaPattern((1, 0, -1)), OmegaPattern((0, 2))], ids=str)
def test_grading_all_subsets_involutive(p):
    g = build_sq(p)
    for size in range(p.n + 2):
        for sub in combinations(range(p.n + 1), size):
            s = ck.grading_automorphism(g, sub)
            phi = s.as_map()
            assert ck.is_identity(ck.compose(phi, phi))
            assert ck.homomorphism_violations(g, g, phi) == []


def test_reversal_palindrome_is_self_map():
    p = OmegaPattern((1, 0, 1))
    iso = ck.reversal_isomorphism(p)
    assert iso.source.table == iso.target.table


def test_reversal_example():
    iso = ck.reversal_isomorphism(OmegaPattern((0, 1)))
    assert iso.target.omega == OmegaPattern((1, 0))
    assert ck.homomorphism_violations(iso.source, iso.target, iso.images) == []


@pytest.mark.parametrize("p", list(sign_patterns(3)), ids=str)
def test_reversal_twice_is_identity(p):
    iso = ck.reversal_isomorphism(p)
    back = ck.reversal_images(iso.target, iso.source, p.n)
    comp = ck.compose(iso.images, back)
    assert ck.is_identity(comp)
    assert ck.homomorphism_violations(iso.source, iso.source, comp) == []


def test_reversal_detects_wrong_map():
    p = OmegaPattern((0, 1))
    src, dst = build_sq(p), build_sq(p.reversed())
    images = ck.reversal_images(src, dst, p.n)
    # drop the 1 <-> 2 swap on E's: no longer an isomorphism
    for i, x in enumerate(src.basis):
        if x.kind == "E" and x.alpha in (1, 2):
            images[i] = {dst.index(E(x.alpha, p.n - x.a)): Fraction(-1)}
    assert ck.homomorphism_violations(src, dst, images)


def test_semidirect_examples():
    rep = ck.semidirect_analysis(OmegaPattern((1, 0)), 2)
    assert rep.ideal_dim == 8 and rep.ok
    rep = ck.semidirect_analysis(OmegaPattern((0,)), 1)
    assert rep.ideal_dim == 4 and rep.ok
    assert len(rep.left) == len(rep.right) == 3


def test_semidirect_t_abelian_pairwise():
    p = OmegaPattern((1, 0, 1))
    g = build_sq(p)
    rep = ck.semidirect_analysis(p, 2)
    for i, j in combinations(rep.ideal, 2):
        assert g.bracket(i, j) == {}


def test_semidirect_precondition():
    with pytest.raises(ValueError):
        ck.semidirect_analysis(OmegaPattern((1, 1)), 1)


def test_json_roundtrip():
    g = build_sq(OmegaPattern((Fraction(1, 2), 0)))
    data = json.loads(ck.dumps(g))
    assert data["n"] == 2 and data["omega"] == ["1/2", "0"]
    assert data["basis"][:2] == ["J_0_1", "J_0_2"]
    assert all(isinstance(v, str) for _, _, terms in data["brackets"] for _, v in terms)
    back = ck.loads(ck.dumps(g))
    assert back.basis == g.basis and back.table == g.table and back.omega == g.omega


def test_generator_id_validation():
    with pytest.raises(ValueError):
        J(1, 1)
    with pytest.raises(ValueError):
        M(4, 0, 1)
    assert ck.GeneratorId.parse("M3_1_2") == M(3, 1, 2)
    assert ck.GeneratorId.parse("E2_0") == E(2, 0)
