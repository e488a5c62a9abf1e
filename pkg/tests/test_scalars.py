from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from arithcurv.scalars import ExactScalar, cyclotomic_coeffs, euler_phi, fermat_quotient, legendre_symbol

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def scalars(draw, N):
    k = euler_phi(N)
    return ExactScalar.from_coeffs(draw(st.lists(fracs, min_size=k, max_size=k)), N)


def test_cyclotomic_matches_sympy():
    x = sympy.Symbol("x")
    for N in (1, 3, 5, 8, 12):
        expected = sympy.Poly(sympy.cyclotomic_poly(N, x), x).all_coeffs()[::-1]
        assert list(cyclotomic_coeffs(N)) == [int(c) for c in expected]


@pytest.mark.parametrize("N", [3, 5, 8, 12])
def test_zeta_has_order_N(N):
    z = ExactScalar.zeta(N)
    assert z**N == 1
    assert all(z**k != 1 for k in range(1, N))


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from([1, 3, 5, 8]))
def test_field_axioms(data, N):
    x, y, z = (data.draw(scalars(N)) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if x != 0:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=30, deadline=None)
@given(st.data(), st.sampled_from([(5, 2), (8, 3), (12, 5), (7, 3)]))
def test_frobenius_is_a_ring_map(data, Np):
    N, p = Np
    x, y = data.draw(scalars(N)), data.draw(scalars(N))
    assert (x * y).frobenius(p) == x.frobenius(p) * y.frobenius(p)
    assert (x + y).frobenius(p) == x.frobenius(p) + y.frobenius(p)
    assert ExactScalar.zeta(N).frobenius(p) == ExactScalar.zeta(N, p)


def test_rational_part():
    assert ExactScalar(Fraction(3, 4)).to_fraction() == Fraction(3, 4)
    assert not ExactScalar.zeta(3).is_rational()


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_legendre_matches_sympy(p):
    for q in range(-10, 30):
        if q % p:
            assert legendre_symbol(q, p) == sympy.legendre_symbol(q % p, p)


def test_legendre_rejects_even_or_composite():
    with pytest.raises(ValueError):
        legendre_symbol(3, 2)
    with pytest.raises(ValueError):
        legendre_symbol(3, 9)


@given(st.integers(-1000, 1000), st.sampled_from([3, 5, 7]))
def test_fermat_quotient_is_a_p_derivation_value(n, p):
    # phi(n) = n^p + p*delta(n) is the identity on Z
    assert n**p + p * fermat_quotient(n, p) == n
