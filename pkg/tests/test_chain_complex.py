import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptriv.chain_complex import (
    ChainComplex,
    Coefficients,
    GradedGroup,
    NotAComplex,
    NotBased,
    Z,
    bockstein_exactness,
    bockstein_integral,
    coefficient_reduction,
    cohomology,
    homology,
    point,
    sphere,
    suspend,
    tensor,
    uct_cohomology,
    validate,
    wedge,
)
from ptriv.exact_linalg import FinAbGroup, IntegerMatrix
from ptriv.spaces import StuntedReal, build_complex, stunted_real_complex

from conftest import elementary_complexes
from oracles import brute_cohomology_counts, group_counts, kunneth, mod2_betti

Z2, Z4 = Coefficients(2), Coefficients(4)
ZZ = FinAbGroup.Z()
C2 = FinAbGroup.cyclic(2)


def one(x):
    return IntegerMatrix.from_rows([[x]])


def X(m, n=0, k=0):
    return build_complex(StuntedReal(m, n, k))


class TestValidate:
    def test_sphere_ok(self):
        validate(sphere(4))

    def test_square_fails(self):
        c = ChainComplex({1: 1, 2: 1, 3: 1}, {2: one(1), 3: one(1)})
        with pytest.raises(NotAComplex) as e:
            validate(c)
        assert e.value.degree == 3

    def test_x52_ok(self):
        c = stunted_real_complex(5, 2)
        validate(c)
        assert c.d(4) == one(2)
        assert c.d(5) == one(0) or c.d(5).is_zero()

    def test_bad_shape(self):
        with pytest.raises(NotAComplex):
            validate(ChainComplex({1: 2, 2: 1}, {2: one(1)}))


class TestHomology:
    def test_sphere(self):
        assert homology(sphere(4)) == {0: ZZ, 4: ZZ}

    def test_x52(self):
        c = X(5, 2)
        assert homology(c) == {0: ZZ, 3: C2, 5: ZZ}
        assert homology(c, Z2) == {0: C2, 3: C2, 4: C2, 5: C2}

    def test_x52_mod2_by_field_rank(self):
        c = X(5, 2)
        h = homology(c, Z2)
        assert {j: len(g.torsion) for j, g in h.items()} == mod2_betti(c)

    def test_missing_degree_is_trivial(self):
        assert homology(sphere(4))[2] == FinAbGroup()
        assert 2 not in homology(sphere(4))


class TestCohomology:
    def test_x52(self):
        assert cohomology(X(5, 2)) == {0: ZZ, 4: C2, 5: ZZ}

    def test_suspended_x31(self):
        c = suspend(X(3, 1), 2)
        assert homology(c) == {0: ZZ, 4: ZZ, 5: ZZ}
        assert cohomology(c) == {0: ZZ, 4: ZZ, 5: ZZ}

    def test_sphere_mod2(self):
        assert cohomology(sphere(4), Z2) == {0: C2, 4: C2}

    def test_z4_on_rp(self):
        # H^*(RP^4; Z4): Z4, Z2, Z2, Z2, Z2
        c4 = FinAbGroup.cyclic(4)
        assert cohomology(X(4), Z4) == {0: c4, 1: C2, 2: C2, 3: C2, 4: C2}


class TestCoefficients:
    def test_parse(self):
        assert Coefficients.parse("Z") == Z
        assert Coefficients.parse("Z4") == Z4

    def test_bad(self):
        with pytest.raises(ValueError):
            Coefficients(1)
        with pytest.raises(ValueError):
            Coefficients.parse("Q")


@settings(max_examples=80, deadline=None)
@given(elementary_complexes())
def test_scrambled_homology_is_recovered(data):
    c, known = data
    assert homology(c) == known


@settings(max_examples=60, deadline=None)
@given(elementary_complexes())
def test_uct_integral(data):
    c, _ = data
    assert cohomology(c) == uct_cohomology(homology(c))


@settings(max_examples=60, deadline=None)
@given(elementary_complexes(max_degree=5, max_pieces=5))
def test_mod2_against_field_ranks(data):
    c, _ = data
    h = homology(c, Z2)
    assert {j: len(g.torsion) for j, g in h.items()} == mod2_betti(c)


@settings(max_examples=25, deadline=None)
@given(elementary_complexes(max_degree=3, max_pieces=2))
def test_z4_cohomology_by_enumeration(data):
    c, _ = data
    h = cohomology(c, Z4)
    for j in range(c.top_degree + 1):
        if c.rank(j) > 3 or c.rank(j - 1) > 3:
            continue
        assert brute_cohomology_counts(c, j, 4) == group_counts(h[j], 4)


def test_rp_z4_by_enumeration():
    c = X(6)
    h = cohomology(c, Z4)
    for j in range(7):
        assert brute_cohomology_counts(c, j, 4) == group_counts(h[j], 4)


@settings(max_examples=50, deadline=None)
@given(elementary_complexes(max_degree=4, max_pieces=4), st.integers(1, 6))
def test_suspension_isomorphism(data, k):
    c, _ = data
    s = suspend(c, k)
    for coeff in (Z, Z2, Z4):
        assert homology(s, coeff).reduced(coeff) == homology(c, coeff).reduced(coeff).shift(k)
        assert cohomology(s, coeff).reduced(coeff) == cohomology(c, coeff).reduced(coeff).shift(k)


@pytest.mark.parametrize("m,n", [(5, 2), (3, 1), (4, 0), (6, 3)])
@pytest.mark.parametrize("k", range(1, 7))
def test_suspension_isomorphism_on_stunted(m, n, k):
    c = X(m, n)
    for coeff in (Z, Z2, Z4):
        assert homology(suspend(c, k), coeff).reduced(coeff) == homology(c, coeff).reduced(coeff).shift(k)


def test_iterated_suspension():
    c = X(5, 0)
    once_twice = suspend(suspend(c, 1), 1)
    assert once_twice == suspend(c, 2)
    for coeff in (Z, Z2, Z4):
        assert homology(once_twice, coeff) == homology(suspend(c, 2), coeff)


class TestOperations:
    def test_suspend_sphere(self):
        assert suspend(sphere(2), 2) == sphere(4)

    def test_suspend_errors(self):
        with pytest.raises(NotBased):
            suspend(ChainComplex({1: 1}), 1)
        with pytest.raises(ValueError):
            suspend(sphere(2), 0)

    def test_wedge_spheres(self):
        assert homology(wedge(sphere(5), sphere(4))) == {0: ZZ, 4: ZZ, 5: ZZ}
        assert homology(wedge(sphere(1), sphere(1))) == {0: ZZ, 1: FinAbGroup.Z(2)}

    def test_wedge_point_unit(self):
        c = X(5, 2)
        assert homology(wedge(c, point())) == homology(c)
        assert homology(wedge(point(), c)) == homology(c)

    def test_wedge_unbased(self):
        with pytest.raises(NotBased):
            wedge(sphere(2), ChainComplex({2: 1}))

    def test_tensor_spheres(self):
        assert homology(tensor(sphere(2), sphere(2))) == {0: ZZ, 2: FinAbGroup.Z(2), 4: ZZ}
        assert homology(tensor(sphere(1), sphere(3))) == {0: ZZ, 1: ZZ, 3: ZZ, 4: ZZ}

    def test_tensor_rp_squares_to_zero(self):
        t = tensor(X(4), X(3))
        validate(t)


@settings(max_examples=40, deadline=None)
@given(elementary_complexes(max_degree=3, max_pieces=3),
       elementary_complexes(max_degree=3, max_pieces=3))
def test_wedge_adds_reduced_homology(a, b):
    (ca, ha), (cb, hb) = a, b
    w = homology(wedge(ca, cb)).reduced()
    ra, rb = GradedGroup(ha).reduced(), GradedGroup(hb).reduced()
    assert w == {j: ra[j] + rb[j] for j in set(ra) | set(rb)}


@settings(max_examples=40, deadline=None)
@given(elementary_complexes(max_degree=3, max_pieces=3),
       elementary_complexes(max_degree=3, max_pieces=3))
def test_tensor_euler_and_kunneth(a, b):
    (ca, ha), (cb, hb) = a, b
    t = tensor(ca, cb)
    validate(t)
    assert t.euler_characteristic() == ca.euler_characteristic() * cb.euler_characteristic()
    assert homology(t) == kunneth(GradedGroup(ha), GradedGroup(hb))


class TestInducedMaps:
    def test_reduction_sphere(self):
        r = coefficient_reduction(sphere(4), 4, 2)
        assert r.source == ZZ and r.target == C2
        assert r.surjective and not r.injective

    @pytest.mark.parametrize("m", [5, 3])
    def test_reduction_suspended_rp(self, m):
        r = coefficient_reduction(suspend(X(m), 2), 4, 2)
        assert r.source == C2 and r.target == C2
        assert r.injective

    def test_reduction_bad_q(self):
        with pytest.raises(ValueError):
            coefficient_reduction(sphere(4), 4, 3)

    def test_bockstein_suspended_rp3(self):
        b = bockstein_integral(suspend(X(3), 2), 3)
        assert b.source == C2 and b.target == C2
        assert b.is_isomorphism

    def test_bockstein_sphere_trivial_source(self):
        b = bockstein_integral(sphere(4), 3)
        assert b.source == FinAbGroup()
        assert b.is_zero

    def test_bockstein_x52(self):
        b = bockstein_integral(X(5, 2), 3)
        assert b.source == C2 and b.target == C2
        assert b.is_isomorphism

    def test_flags_agree_with_groups(self):
        r = coefficient_reduction(X(6), 2, 2)
        f = r.flags()
        assert f["injective"] == r.injective and f["surjective"] == r.surjective


@pytest.mark.parametrize("m,n,k", [(5, 2, 0), (6, 0, 2), (7, 1, 3), (4, 0, 0), (8, 3, 1)])
def test_bockstein_sequence_exact_on_stunted(m, n, k):
    assert all(bockstein_exactness(X(m, n, k)).values())


@settings(max_examples=40, deadline=None)
@given(elementary_complexes(max_degree=4, max_pieces=4))
def test_bockstein_sequence_exact(data):
    c, _ = data
    for q in (2, 4):
        assert all(bockstein_exactness(c, q=q).values())


@pytest.mark.parametrize("m,n", [(5, 0), (3, 0), (5, 2), (6, 1), (4, 0)])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_reduction_flags_natural_under_suspension(m, n, k):
    c = X(m, n)
    s = suspend(c, k)
    for j in range(1, c.top_degree + 1):
        assert coefficient_reduction(c, j).flags() == coefficient_reduction(s, j + k).flags()
