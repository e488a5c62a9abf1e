from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arithcurv import chern
from arithcurv.curvature import (claim5_elements, curvature, monomials, one_one_curvature,
                                 partial_induction_check, sym_expected_coefficient, verify_claim5,
                                 verify_nonvanishing_11)
from arithcurv.quotalg import compose_correspondences, gamma_star
from arithcurv.ratfunc import RatFunc, iota_split

R = RatFunc.parse


def test_monomial_bases():
    assert len(monomials(2)) == 10
    assert len(monomials(1)) == 4
    assert len(claim5_elements()) == 15


def test_antisym_curvature_zero_on_ab():
    rep = curvature(chern.build_antisym_gl2(3), chern.build_antisym_gl2(5), R("a*b"))
    assert rep.verdict == "zero"
    assert rep.difference.is_zero()


def test_antisym_a_squared_both_orders():
    rep = curvature(chern.build_antisym_gl2(3), chern.build_antisym_gl2(5), R("a^2"))
    expected = 4 * R("a^30") * chern.det_twist(15)
    assert rep.lhs == expected and rep.rhs == expected


def test_canonical_pair_commutes():
    G3, G5 = chern.build_canonical(3), chern.build_canonical(5)
    for e in monomials(2) + monomials(1):
        assert curvature(G3, G5, e).verdict == "zero"


def test_curvature_needs_distinct_primes():
    with pytest.raises(ValueError):
        curvature(chern.build_antisym_gl2(3), chern.build_antisym_gl2(3), R("a"))


def test_claim5_35():
    assert all(r.verdict == "zero" for r in verify_claim5(3, 5))


def test_claim5_mutation_control():
    mutated = lambda p: chern.build_antisym_gl2(p, chern.beta_p(p) ** 2)  # noqa: E731
    reports = verify_claim5(3, 5, mutated, chern.build_antisym_gl2)
    assert any(r.verdict == "nonzero" for r in reports)


def test_uniform_beta_squaring_stays_flat():
    # squaring beta on both sides rescales both orders by the same factor
    mutated = lambda p: chern.build_antisym_gl2(p, chern.beta_p(p) ** 2)  # noqa: E731
    assert all(r.verdict == "zero" for r in verify_claim5(3, 5, mutated))


def test_one_one_antisym_closed_forms():
    r = verify_nonvanishing_11("split-antisym", 3, 5)
    assert r.nonzero and r.closed_forms_match
    assert r.witness[0] != r.witness[1]
    assert r.ok


@pytest.mark.parametrize("p,p2,coeff,k", [(3, 5, -272, 15), (3, 3, -80, 9)])
def test_one_one_sym_coefficient(p, p2, coeff, k):
    r = verify_nonvanishing_11("split-sym", p, p2)
    assert r.ok
    assert r.coefficient == coeff == sym_expected_coefficient(p, p2)
    assert r.exponent == k
    assert r.exponent_discrepancy == (k != p * p)


def test_one_one_sym_displays():
    rep = one_one_curvature(chern.build_sym_gl2(3), 5, R("a*b"))
    assert rep.lhs == 16 * R("a^15*b^15")
    assert rep.rhs == 4 * 2**10 * R("a^15*b^15")


@settings(max_examples=10, deadline=None)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=5), st.sampled_from(["a^2", "a*b", "c*d + b^2"]))
def test_one_one_curvature_is_homogeneous(c, e):
    G = chern.build_antisym_gl2(3)
    base = one_one_curvature(G, 5, R(e))
    scaled = one_one_curvature(G, 5, R(e) * c)
    assert scaled.difference == base.difference * c


@pytest.mark.parametrize("e", ["a*b", "a^2 + c*d", "b", "a*c/(b*d)"])
def test_composed_matches_nested_curvature(e):
    G3, G5 = chern.build_antisym_gl2(3), chern.build_antisym_gl2(5)
    rep = curvature(G3, G5, R(e))
    assert gamma_star(compose_correspondences(G3, G5), R(e)) == rep.lhs
    assert gamma_star(compose_correspondences(G5, G3), R(e)) == rep.rhs


def test_induction_antisym():
    r = partial_induction_check(chern.build_antisym_gl2(3), 3)
    assert r.partially_induced and r.ok
    assert all(ok for _, ok in r.even_phi_t_free)


def test_induction_sym():
    r = partial_induction_check(chern.build_sym_gl2(3), 3)
    assert r.partially_induced and r.ok
    assert r.ad_t2_coefficient == R("a^3*d^3 - b^3*c^3") * Fraction(1, 4)


@pytest.mark.parametrize("build", [chern.build_antisym_gl2, chern.build_sym_gl2])
def test_gamma_star_output_has_no_odd_part_on_even_input(build):
    G = build(3)
    for e in ("a*b", "c^2 + a*d", "b*c"):
        assert iota_split(gamma_star(G, R(e)))[1].is_zero()
