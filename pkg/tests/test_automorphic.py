from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bclab.characters import (
    DirichletChar,
    trivial_char,
    unit_group,
)
from bclab.cyclotomic import RootContext
from bclab.fields import make_field, rationals, tower
from bclab.automorphic import (
    IsobaricSum,
    automorphic_induction,
    base_change,
    bc_fiber,
    coeff_angles_over_q,
    coeff_data_over_e,
    cuspidal_over,
    is_self_contragredient,
    local_coeffs_over_e,
    local_coeffs_over_q,
    trivial_over,
)


def sqrt5():
    return make_field(5, [4])


def theta():
    return DirichletChar(unit_group(5), [1])


# ---------------------------------------------------------------- base change

def test_base_change_of_trivial():
    pi = base_change(trivial_char(5), sqrt5())
    assert pi.omega.is_trivial
    assert pi.tau == 0.0


def test_base_change_of_quartic():
    pi = base_change(theta(), sqrt5())
    assert pi.omega.angle(4) == Fraction(1, 2)


def test_base_change_of_quadratic_kills_kernel():
    chi5 = theta() * theta()
    pi = base_change(chi5, sqrt5())
    assert pi.omega.is_trivial


def test_base_change_transitivity_along_tower():
    # through the quadratic subfield of the quintic cyclotomic field
    full = make_field(5, [])
    mid = tower(full)[0]
    assert mid == sqrt5()
    direct = base_change(theta(), full)
    stepped = base_change(base_change(theta(), mid), full)
    assert stepped == direct


def test_rank_guard():
    pi = trivial_over(sqrt5())
    assert cuspidal_over(pi.field, pi.omega) == pi
    with pytest.raises(ValueError, match="rank"):
        cuspidal_over(pi.field, pi.omega, rank=2)


# ---------------------------------------------------------------------- fiber

def test_fiber_of_trivial_over_quadratic():
    fiber = bc_fiber(trivial_over(sqrt5()))
    assert len(fiber) == 2
    assert {chi.exponents for chi, _ in fiber} == {(0,), (2,)}


def test_fiber_of_restricted_quartic():
    fiber = bc_fiber(base_change(theta(), sqrt5()))
    assert {chi.exponents for chi, _ in fiber} == {(1,), (3,)}


def test_fiber_over_full_cyclotomic():
    fiber = bc_fiber(trivial_over(make_field(5, [])))
    assert len(fiber) == 4
    assert len({chi.key for chi, _ in fiber}) == 4


def test_fiber_members_base_change_back():
    pi = base_change(theta(), sqrt5())
    for chi, tau in bc_fiber(pi):
        assert base_change(chi, sqrt5(), tau=tau) == pi


def test_automorphic_induction_degrees():
    assert automorphic_induction(trivial_over(sqrt5())).degree == 2
    assert automorphic_induction(trivial_over(rationals())).degree == 1


def test_isobaric_sum_rejects_duplicates():
    with pytest.raises(ValueError, match="distinct"):
        IsobaricSum([(trivial_char(1), 0.0), (trivial_char(5), 0.0)])


# --------------------------------------------------------------- coefficients

def test_split_prime_coefficients():
    pi = trivial_over(sqrt5())
    coeffs = local_coeffs_over_e(pi, 11, 3)
    assert [(c.n, c.value) for c in coeffs] == [
        (11, 2 + 0j), (121, 2 + 0j), (1331, 2 + 0j)]


def test_inert_prime_coefficients():
    pi = trivial_over(sqrt5())
    coeffs = local_coeffs_over_e(pi, 2, 4)
    values = [c.value for c in coeffs]
    assert values[0] == 0 and values[2] == 0
    assert abs(values[1] - 2) < 1e-14 and abs(values[3] - 2) < 1e-14
    # matches 1 + chi5(2)^k with chi5(2) = -1
    for k, c in enumerate(coeffs, start=1):
        assert abs(c.value - (1 + (-1) ** k)) < 1e-14


def test_rationals_give_zeta_coefficients():
    pi = trivial_over(rationals())
    for c in local_coeffs_over_e(pi, 7, 5):
        assert abs(c.value - 1) < 1e-15


def test_ramified_prime_yields_no_coefficients():
    assert local_coeffs_over_e(trivial_over(sqrt5()), 5, 3) == []


def test_isobaric_coefficients_over_q():
    ai = automorphic_induction(trivial_over(sqrt5()))
    a11 = local_coeffs_over_q(ai, 11, 2)
    assert all(abs(c.value - 2) < 1e-14 for c in a11)
    a2 = local_coeffs_over_q(ai, 2, 4)
    for k, c in enumerate(a2, start=1):
        assert abs(c.value - (1 + (-1) ** k)) < 1e-14


def test_single_trivial_component():
    ai = IsobaricSum([(trivial_char(1), 0.0)])
    assert all(abs(c.value - 1) < 1e-15
               for c in local_coeffs_over_q(ai, 13, 4))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=30), st.data())
def test_factorization_identity_exact(m, data):
    g = unit_group(m)
    gens = data.draw(st.lists(st.sampled_from(sorted(g.units)), max_size=2))
    field = make_field(m, gens)
    exps = [data.draw(st.integers(0, o - 1)) for _, o in g.generators]
    pi = base_change(DirichletChar(g, exps), field)
    ai = automorphic_induction(pi)
    ctx = RootContext(g.exponent)
    for p in (2, 3, 5, 7, 11, 13):
        if m % p == 0 and m > 1:
            continue
        for j in (1, 2, 3, 4):
            over_e = coeff_data_over_e(pi, p, j)
            left = ctx.zero() if over_e is None else \
                ctx.vector([(over_e[1], over_e[0])])
            right = ctx.vector([(a, 1)
                                for a in coeff_angles_over_q(ai, p, j)])
            assert left == right


def test_factorization_identity_with_twist_floats():
    pi = base_change(theta(), sqrt5(), tau=0.75)
    ai = automorphic_induction(pi)
    for p in (2, 3, 7, 11):
        over_e = local_coeffs_over_e(pi, p, 4)
        over_q = local_coeffs_over_q(ai, p, 4)
        for a, b in zip(over_e, over_q):
            assert a.n == b.n
            assert abs(a.value - b.value) < 1e-12


def test_compositum_product_characters_distinct():
    # For distinct fields of the same prime degree, pairing one fiber against
    # the other never repeats: the two annihilator groups meet trivially, so
    # all degree^2 product characters are pairwise distinct.
    from itertools import combinations

    from bclab.fields import fields_up_to_conductor

    prime_fields = [f for f in fields_up_to_conductor(60)
                    if f.degree in (2, 3, 5, 7)]
    by_degree = {}
    for f in prime_fields:
        by_degree.setdefault(f.degree, []).append(f)
    for degree, group in by_degree.items():
        fibers = {f.key: {chi.key for chi, _ in bc_fiber(trivial_over(f))}
                  for f in group}
        for a, b in combinations(group, 2):
            shared = fibers[a.key] & fibers[b.key]
            assert shared == {trivial_char(1).key}
    # spot check the full product set at a small common modulus
    e, f = make_field(5, [4]), make_field(4, [])
    products = {(chi * psi).key
                for chi, _ in bc_fiber(trivial_over(e))
                for psi, _ in bc_fiber(trivial_over(f))}
    assert len(products) == 4


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=30), st.data())
def test_coefficient_bound(m, data):
    g = unit_group(m)
    gens = data.draw(st.lists(st.sampled_from(sorted(g.units)), max_size=2))
    field = make_field(m, gens)
    pi = trivial_over(field)
    ai = automorphic_induction(pi)
    for p in (2, 3, 7, 13):
        for c in local_coeffs_over_q(ai, p, 3):
            assert abs(c.value) <= ai.degree + 1e-9


# ------------------------------------------------------------- contragredient

def test_self_contragredient_cases():
    chi5 = theta() * theta()
    assert is_self_contragredient(chi5, 0.0)
    assert not is_self_contragredient(theta(), 0.0)
    assert not is_self_contragredient(trivial_char(1), 0.5)
    assert is_self_contragredient(trivial_char(1), 0.0)


def test_conjugate_object():
    pi = base_change(theta(), sqrt5(), tau=0.25)
    bar = pi.conjugate()
    assert bar.tau == -0.25
    assert bar.omega.angle(4) == Fraction(1, 2)  # -1 is its own conjugate
