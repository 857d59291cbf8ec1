import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from torsion_gamma.errors import BoundViolation, EmptySubset, InvalidFiltration, InvariantViolation, TooLarge, TooManyFactors
from torsion_gamma.gamma import (
    FilteredSubgroupData,
    IsotypicFactor,
    PsiAssignment,
    SplittingProfile,
    VarietyData,
    all_profiles,
    filtered_exponents,
    gamma_product,
    gamma_simple,
    masser_bound,
    mt_dimension,
    mt_hypothesis_check,
    psi_bruteforce,
    psi_value,
    sigma_contains,
    sigma_members,
    sup_equals_max_check,
    torsion_degree_lower_bound,
)
from torsion_gamma.verify import random_filtered_instance, random_sup_instance, random_variety


def V(*facs):
    return VarietyData(tuple(IsotypicFactor(*f) for f in facs))


def test_gamma_simple_examples():
    assert gamma_simple("I", 1, 1) == Fraction(1, 2)
    assert gamma_simple("II", 1, 1) == 1
    assert gamma_simple("I", 2, 1) == Fraction(4, 7)


def test_mt_dimension_examples():
    assert mt_dimension(V(("I", 1, 1))) == 4
    assert mt_dimension(V(("I", 1, 2))) == 11
    assert mt_dimension(V(("I", 1, 1), ("I", 1, 2))) == 14
    with pytest.raises(EmptySubset):
        mt_dimension(V(("I", 1, 1)), [])


def test_gamma_product_examples():
    rep = gamma_product(V(("I", 1, 1, 1)))
    assert rep.gamma == Fraction(1, 2) and rep.achieving_subset == (1,)
    rep = gamma_product(V(("I", 1, 1, 1), ("I", 1, 2, 1)))
    assert rep.gamma == Fraction(1, 2) and rep.achieving_subset == (1,)
    assert rep.per_subset_table == {(1,): Fraction(1, 2), (2,): Fraction(4, 11), (1, 2): Fraction(3, 7)}
    rep = gamma_product(V(("II", 1, 1, 3)))
    assert rep.gamma == 3
    assert rep.gamma <= masser_bound(V(("II", 1, 1, 3)))


def test_factor_cap():
    with pytest.raises(TooManyFactors):
        gamma_product(VarietyData(tuple(IsotypicFactor("I", 1, 1) for _ in range(21))))


def test_masser_examples():
    assert masser_bound(V(("I", 1, 1, 1))) == 1
    assert masser_bound(V(("II", 2, 3, 1))) == 12
    assert masser_bound(V(("I", 1, 1, 2), ("II", 1, 1, 1))) == 4


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_gamma_product_at_most_masser(seed):
    data = random_variety(random.Random(seed))
    assert gamma_product(data).gamma <= masser_bound(data)


def test_psi_value_examples():
    data = V(("I", 2, 1))
    assign = PsiAssignment((((1, 1), (1, 1)),))
    assert psi_value(data, SplittingProfile((((1, 1), (1, 1)),)), assign) == Fraction(4, 7)
    assert psi_value(data, SplittingProfile((((1, 2),),)), PsiAssignment((((1, 1),),))) == Fraction(4, 7)
    assert psi_value(data, SplittingProfile((((1, 1), (1, 1)),)), PsiAssignment((((0, 0), (0, 0)),))) == 0
    with pytest.raises(BoundViolation):
        psi_value(data, SplittingProfile((((1, 2),),)), PsiAssignment((((0, 1),),)))
    with pytest.raises(InvariantViolation):
        psi_value(data, SplittingProfile((((1, 1),),)), PsiAssignment((((1, 1),),)))


def test_psi_bruteforce_examples():
    val, arg = psi_bruteforce(V(("I", 2, 1)))
    assert val == Fraction(4, 7) and arg.values == (((1, 1), (1, 1)),)
    val, arg = psi_bruteforce(V(("I", 1, 2)))
    assert val == Fraction(4, 11) and arg.values == (((2, 2),),)
    val, arg = psi_bruteforce(V(("II", 1, 1)))
    assert val == 1 and arg.values == (((1, 1),),)


def test_all_profiles():
    assert all_profiles(1) == [((1, 1),)]
    assert len(all_profiles(3)) == 5
    for e in range(1, 6):
        for prof in all_profiles(e):
            assert sum(a * b for a, b in prof) == e


@pytest.mark.parametrize("t", ["I", "II"])
@pytest.mark.parametrize("e", [1, 2, 3])
@pytest.mark.parametrize("h", [1, 2, 3])
def test_closed_form_equals_bruteforce(t, e, h):
    data = V((t, e, h))
    for prof in all_profiles(e):
        assert psi_bruteforce(data, SplittingProfile((prof,)))[0] == gamma_simple(t, e, h)


def test_remark_bounds():
    for e in range(1, 51):
        for h in range(1, 51):
            assert gamma_simple("I", e, h) < Fraction(2, 3)
            assert gamma_simple("II", e, h) < Fraction(4, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_psi_dominated_by_gamma_product(seed):
    data = random_variety(random.Random(seed), max_factors=2)
    assert psi_bruteforce(data)[0] <= gamma_product(data).gamma


def test_filtered_examples():
    data = V(("I", 1, 1))
    prof = SplittingProfile.split(data)
    assert filtered_exponents(data, prof, FilteredSubgroupData(((((1, 1, 1), (2, 1, 0)),),))) == (3, 6)
    assert filtered_exponents(data, prof, FilteredSubgroupData((((),),))) == (0, 0)
    with pytest.raises(InvalidFiltration):
        filtered_exponents(data, prof, FilteredSubgroupData(((((1, 1, 0), (2, 1, 1)),),)))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_filtered_ratio_at_most_gamma(seed):
    data, profile, fs = random_filtered_instance(random.Random(seed))
    card, degree = filtered_exponents(data, profile, fs)
    assert Fraction(card, degree) <= gamma_product(data).gamma


def test_sup_max_examples():
    assert sup_equals_max_check([[1]], [[1]], 3) == (1, 1)
    assert sup_equals_max_check([[3, 1]], [[1, 2]], 3) == (3, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_sup_equals_prefix_max(seed):
    a, b, B = random_sup_instance(random.Random(seed))
    lhs, rhs = sup_equals_max_check(a, b, B)
    assert lhs == rhs


def test_sup_max_with_nonempty_rows_forced():
    # requiring every row to start nonzero breaks the equality for two rows
    lhs, rhs = sup_equals_max_check([[1], [1]], [[1], [100]], 1, allow_empty_rows=False)
    assert (lhs, rhs) == (Fraction(2, 101), Fraction(2, 101))
    lhs, rhs = sup_equals_max_check([[1], [1]], [[1], [100]], 6, allow_empty_rows=False)
    assert lhs == Fraction(7, 106) and rhs == Fraction(2, 101) and lhs != rhs
    assert sup_equals_max_check([[1], [1]], [[1], [100]], 6) == (1, 1)


def _sigma_oracle(limit):
    out = set()
    for k in range(3, 40, 2):
        for a in range(1, 2 * limit):
            v = (2 * a) ** k
            if v > 2 * limit:
                break
            out.add(v // 2)
        if comb(2 * k, k) <= 2 * limit:
            out.add(comb(2 * k, k) // 2)
    return sorted(out)


def test_sigma_examples():
    assert sigma_contains(4) and sigma_contains(10) and not sigma_contains(1)
    assert sigma_members(15) == [4, 10]
    assert sigma_members(130) == [4, 10, 16, 32, 64, 108, 126]
    assert sigma_members(3) == []
    with pytest.raises(TooLarge):
        sigma_members(10**8 + 1)


def test_sigma_against_oracle():
    assert sigma_members(10**5) == _sigma_oracle(10**5)
    assert [g for g in range(1, 5000) if sigma_contains(g)] == _sigma_oracle(4999)


def test_sigma_contains_512():
    # 2 * 512 = 1024 = 4^5
    assert sigma_contains(512)
    assert 512 in sigma_members(2000)


def test_mt_hypothesis_examples():
    assert mt_hypothesis_check(IsotypicFactor("I", 5, 3), False) == {1}
    assert mt_hypothesis_check(IsotypicFactor("I", 1, 4), False) == set()
    assert mt_hypothesis_check(IsotypicFactor("I", 1, 6), True) == {2, 3}


def test_torsion_lower_bound_examples():
    assert torsion_degree_lower_bound(12, 1, 1) == 144
    assert torsion_degree_lower_bound(12, 2, Fraction(1, 2)) == 5184
    assert torsion_degree_lower_bound(1, 3, Fraction(2, 7)) == 1
