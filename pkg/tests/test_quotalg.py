from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from arithcurv import chern
from arithcurv import matrix as mx
from arithcurv.errors import AlgebraMismatchError, NotInvertibleError
from arithcurv.quotalg import (QuotAlgebra, alg_inverse, compose_correspondences, evaluate_in_algebra,
                               gamma_star, mult_matrix, phi_apply, psi_partial_commute_check,
                               tensor_algebras, trace_pi)
from arithcurv.ratfunc import RatFunc, frobenius_subst

R = RatFunc.parse


def quadratic(beta="a*d - b*c"):
    return QuotAlgebra.simple("t", [-R(beta), R("0")])


def random_element(alg, rng):
    pool = ["a", "b - c", "a*d", "1", "0", "2*b/(a + d)", "c^2"]
    return alg.embed([R(rng.choice(pool)) for _ in range(alg.dim)])


def test_quadratic_generator_squares_to_relation():
    alg = quadratic()
    t = alg.gen("t")
    assert t * t == alg.scalar(R("a*d - b*c"))
    assert alg.one() * t == t


def test_quartic_relation():
    alg = chern.sym_algebra(3)
    u, v, w = chern.uvw(3)
    t = alg.gen(0)
    assert t**2 * t**2 == t**2 * (4 * u) - alg.scalar(4 * v * w)


def test_companion_matrix():
    beta = R("a*d - b*c")
    M = mult_matrix(quadratic().gen(0))
    assert M == [[R("0"), beta], [R("1"), R("0")]]
    assert mult_matrix(quadratic().one()) == [[R("1"), R("0")], [R("0"), R("1")]]


def test_companion_trace_is_minus_subleading_coefficient():
    m = [R("a"), R("b + c"), R("d^2")]
    alg = QuotAlgebra.simple("t", m)
    assert trace_pi(alg.gen(0)) == -m[-1]
    assert trace_pi(alg.one()) == 3


def test_trace_equals_matrix_trace():
    rng = random.Random(7)
    F = compose_correspondences(chern.build_antisym_gl2(3), chern.build_antisym_gl2(5)).algebra
    for _ in range(3):
        x = random_element(F, rng)
        assert trace_pi(x) == mx.trace(mult_matrix(x))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_trace_is_E_linear(seed):
    rng = random.Random(seed)
    alg = chern.sym_algebra(3)
    x, y = random_element(alg, rng), random_element(alg, rng)
    e, f = R("a - d"), R("b/c")
    assert trace_pi(x * e + y * f) == trace_pi(x) * e + trace_pi(y) * f


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_inverse_multiplies_back(seed):
    rng = random.Random(seed)
    alg = chern.sym_algebra(3)
    x = random_element(alg, rng)
    if x.is_zero():
        return
    assert alg_inverse(x) * x == alg.one()


def test_fraction_free_solver_agrees_with_plain_elimination():
    rng = random.Random(11)
    alg = chern.sym_algebra(3)
    x = random_element(alg, rng)
    rhs = [R("1")] + [R("0")] * 3
    plain = mx.solve(mult_matrix(x), rhs, is_zero=lambda v: v.is_zero())
    assert list(alg_inverse(x).coeffs) == plain


def test_known_inverses():
    alg = quadratic()
    t = alg.gen(0)
    assert alg_inverse(t) == t * R("a*d - b*c").inverse()
    sym = chern.sym_algebra(3)
    assert alg_inverse(sym.gen(0)) == chern.sym_tau_inverse(sym, 3)
    with pytest.raises(NotInvertibleError):
        alg_inverse(alg.zero())


def test_zero_divisor_detected():
    # t^2 - 1 splits, so t - 1 is a zero divisor
    alg = QuotAlgebra.simple("t", [R("-1"), R("0")])
    with pytest.raises(NotInvertibleError):
        alg_inverse(alg.gen(0) - 1)


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatchError):
        quadratic().gen(0) * quadratic().gen(0)


def test_triangular_relations_validated():
    with pytest.raises(ValueError):
        QuotAlgebra(["t", "s"], [2, 2], [[(R("1"),), (R("0"),)], [(R("1"),), (R("0"),)]])


def test_evaluate_in_algebra_divides():
    G = chern.build_antisym_gl2(3)
    f = R("a/(a*d - b*c)")
    img = evaluate_in_algebra(f, G.assignment())
    assert img * phi_apply(G, R("a*d - b*c")) == phi_apply(G, R("a"))


def test_phi_apply_examples():
    p = 3
    assert phi_apply(chern.build_canonical(p), R("a*d")).coeffs[0] == R("a^3*d^3")
    G = chern.build_antisym_gl2(p)
    assert phi_apply(G, R("a")) == G.algebra.gen(0) * R("a^3")


def test_gamma_star_examples():
    assert gamma_star(chern.build_canonical(3), R("a*b")) == R("a^3*b^3")
    assert gamma_star(chern.build_canonical(5), R("a*d - b*c")) == R("a^5*d^5 - b^5*c^5")


@pytest.mark.parametrize("G", [chern.build_canonical(3), chern.build_antisym_gl2(3), chern.build_sym_gl2(3)],
                         ids=["canonical", "antisym", "sym"])
def test_gamma_star_additive_and_unit(G):
    f, g = R("a*b"), R("c^2 + d")
    assert gamma_star(G, f + g) == gamma_star(G, f) + gamma_star(G, g)
    assert gamma_star(G, R("1")) == G.left_degree


def test_compose_dimensions_and_images():
    c = compose_correspondences(chern.build_canonical(3), chern.build_canonical(5))
    assert c.algebra.dim == 1
    assert c.phi_images[0][0].coeffs[0] == R("a^15")
    F = compose_correspondences(chern.build_antisym_gl2(3), chern.build_antisym_gl2(5))
    assert F.algebra.dim == 4
    t5, t3 = F.algebra.gen("t5"), F.algebra.gen("t3")
    assert F.phi_images[0][1] == t3 * t5**3 * R("b^15")


@pytest.mark.parametrize("pair", [("antisym", "antisym"), ("canonical", "antisym"), ("antisym", "canonical")])
def test_compose_equals_nested(pair):
    build = {"antisym": chern.build_antisym_gl2, "canonical": chern.build_canonical}
    G1, G2 = build[pair[0]](3), build[pair[1]](5)
    C = compose_correspondences(G1, G2)
    for e in ["a*b", "a^2 + c", "b/(a + d)", "a*d - b*c"]:
        assert gamma_star(C, R(e)) == gamma_star(G2, gamma_star(G1, R(e)))


def test_tensor_embeddings_commute():
    A = quadratic()
    B = QuotAlgebra.simple("s", [R("-a"), R("0"), R("0")])
    T, left, right = tensor_algebras(A, B)
    assert T.dim == 6
    x, y = left(A.gen(0)), right(B.gen(0))
    assert x * y == y * x
    assert x * x == T.scalar(R("a*d - b*c"))
    assert y**3 == T.scalar(R("a"))


def test_psi_check_35():
    r = psi_partial_commute_check(3, 5)
    assert r.dimension == 16
    assert r.psi_plus_nonzero and r.psi_minus_nonzero and r.product_zero
    assert r.cross_left == r.expected == r.cross_right
    assert r.twist_left == r.cross_left and r.twist_right == r.cross_right
    assert r.ok


def test_psi_check_needs_distinct_primes():
    with pytest.raises(ValueError):
        psi_partial_commute_check(3, 3)


def test_serialization():
    d = chern.build_antisym_gl2(3).to_dict()
    assert d["algebra"]["dimension"] == 2
    assert d["algebra"]["generators"] == [{"name": "t3", "degree": 2}]
    assert R(d["algebra"]["relations"][0][0][0]) == -chern.beta_p(3)
