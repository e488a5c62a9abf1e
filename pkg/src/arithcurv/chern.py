"""Closed-form ingredients of the Chern lifts on the split groups and the three
concrete correspondence structures built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import matrix as mx
from . import poly as P
from .padic import is_prime
from .quotalg import AlgElem, Correspondence, QuotAlgebra
from .ratfunc import RatFunc, const_matrix, frob_twist, subst, xmatrix, ymatrix

PRESETS = ("split-antisym", "split-sym", "identity")


def split_q(kind: str, n: int = 2) -> list[list[int]]:
    """[[0, 1_r], [-1_r, 0]] (antisymmetric) or [[0, 1_r], [1_r, 0]] (symmetric), n = 2r."""
    if kind in ("antisym", "antisymmetric", "split-antisym"):
        sign = -1
    elif kind in ("sym", "symmetric", "split-sym"):
        sign = 1
    else:
        raise ValueError(f"unknown split kind {kind!r}")
    if n % 2 or n < 2:
        raise ValueError(f"split forms need even n >= 2, got {n}")
    r = n // 2
    q = [[0] * n for _ in range(n)]
    for i in range(r):
        q[i][r + i] = 1
        q[r + i][i] = sign
    return q


def q_preset(name: str, n: int = 2) -> list[list[int]]:
    if name == "identity":
        return [[int(i == j) for j in range(n)] for i in range(n)]
    if name in ("split-antisym", "split-sym"):
        return split_q(name, n)
    raise ValueError(f"unknown q preset {name!r}; expected one of {', '.join(PRESETS)}")


def _check_prime(p: int) -> None:
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise ValueError(f"expected an odd prime, got {p!r}")


def det_x(n: int = 2) -> RatFunc:
    return mx.det(xmatrix(n))


def det_twist(m: int, n: int = 2) -> RatFunc:
    """det(x)^m / det(x^(m))."""
    x = xmatrix(n)
    return mx.det(x) ** m / mx.det(frob_twist(x, m))


def beta_p(p: int) -> RatFunc:
    """(ad - bc)^p / (a^p d^p - b^p c^p)."""
    _check_prime(p)
    return det_twist(p, 2)


def _qform(x, q):
    n = len(x)
    Q = const_matrix(q, P.size_of(x[0][0].ctx))
    return mx.mat_mul(mx.mat_mul(mx.transpose(x), Q), x)


def matrix_fp(q: Sequence[Sequence[int]], p: int, x=None) -> list[list[RatFunc]]:
    """f_p(x) = (x^(p)t q x^(p))^-1 (x^t q x)^(p), exactly over E.

    ``x`` defaults to the generic matrix; any matrix of RatFunc may be substituted.
    Integer q is fixed by every Frobenius lift, so phi_p(q) = q.
    """
    _check_prime(p)
    n = len(q)
    x = xmatrix(n) if x is None else x
    if mx.det([[Fraction(v) for v in row] for row in q]) == 0:
        raise ValueError("q is singular")
    xp = frob_twist(x, p)
    inner = _qform(x, q)
    inner_p = frob_twist(inner, p)
    # (xp^t q xp)^-1 = adj(xp) q^-1 adj(xp)^t / det(xp)^2
    qinv = mx.inverse([[Fraction(v) for v in row] for row in q])
    adj = mx.adjugate(xp)
    dxp = mx.det(xp)
    Qi = [[RatFunc.const(v, P.size_of(x[0][0].ctx)) for v in row] for row in qinv]
    m_inv = mx.mat_mul(mx.mat_mul(adj, Qi), mx.transpose(adj))
    scale = (dxp * dxp).inverse()
    return [[e * scale for e in row] for row in mx.mat_mul(m_inv, inner_p)]


def g_p(q: Sequence[Sequence[int]], p: int) -> RatFunc:
    """det(x) det(x^(p)) det((x^t q x)^(p)), a polynomial in the x-entries."""
    n = len(q)
    x = xmatrix(n)
    return mx.det(x) * mx.det(frob_twist(x, p)) * mx.det(frob_twist(_qform(x, q), p))


def jordan_matrix(b: Sequence[Sequence[RatFunc]]) -> list[list[RatFunc]]:
    """Matrix of z -> (zb + bz)/2 on n x n matrices in the basis of matrix units E_ij."""
    n = len(b)
    half = Fraction(1, 2)
    zero = b[0][0] * 0
    L = [[zero] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for l in range(n):  # E_ij b puts row j of b in row i
                L[i * n + l][col] = L[i * n + l][col] + b[j][l] * half
            for k in range(n):  # b E_ij puts column i of b in column j
                L[k * n + j][col] = L[k * n + j][col] + b[k][i] * half
    return L


def jor(b: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Determinant of the Jordan multiplication by b."""
    return mx.det_elim(jordan_matrix(b), is_zero=lambda v: v.is_zero())


def jor_2x2_formula(b: Sequence[Sequence[RatFunc]]) -> RatFunc:
    return mx.trace(b) ** 2 * mx.det(b) * Fraction(1, 4)


def uvw(p: int) -> tuple[RatFunc, RatFunc, RatFunc]:
    """Entries of f_p = [[u, v], [w, u]] for the split symmetric 2 x 2 form."""
    _check_prime(p)
    a, b, c, d = (RatFunc.var(v) for v in "abcd")
    A, Bc, S = a**p * d**p, b**p * c**p, (a * d + b * c) ** p
    den = (A - Bc) ** 2
    u = ((A + Bc) * S - 2 ** (p + 1) * A * Bc) / den
    bracket = (2**p * (A + Bc) - 2 * S) / den
    return u, b**p * d**p * bracket, a**p * c**p * bracket


def char_disc(M: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Discriminant of the characteristic polynomial of a 2 x 2 matrix."""
    if len(M) != 2:
        raise ValueError("char_disc expects a 2 x 2 matrix")
    return mx.trace(M) ** 2 - 4 * mx.det(M)


def jerry_disc_check(p: int, coeff: Optional[int] = None) -> bool:
    """16u^2 - 16vw == 16((ad+bc)^(2p) - 4^p (abcd)^p)/(a^p d^p - b^p c^p)^2.

    ``coeff`` replaces 4^p on the right (a mutation hook for tests).
    """
    u, v, w = uvw(p)
    a, b, c, d = (RatFunc.var(s) for s in "abcd")
    k = 4**p if coeff is None else coeff
    rhs = 16 * ((a * d + b * c) ** (2 * p) - k * (a * b * c * d) ** p) / (a**p * d**p - b**p * c**p) ** 2
    return 16 * u * u - 16 * v * w == rhs


def fprime_identity_check(p: int, coeff: Optional[int] = None) -> bool:
    """(s+1) f'(s) - 2p f(s) == 4^p p s^(p-1) (s-1) for f(s) = (s+1)^(2p) - 4^p s^p."""
    s = P.var("s")
    f = (s + 1) ** (2 * p) - 4**p * s**p
    lhs = (s + 1) * P.derivative(f, "s") - 2 * p * f
    k = 4**p * p if coeff is None else coeff
    return lhs == k * s ** (p - 1) * (s - 1)


# --- correspondence builders -----------------------------------------------

def build_canonical(p: int, n: int = 2) -> Correspondence:
    """Trivial algebra with phi(x) = x^(p)."""
    _check_prime(p)
    alg = QuotAlgebra.trivial(n)
    images = [[alg.scalar(e) for e in row] for row in frob_twist(xmatrix(n), p)]
    return Correspondence(alg, images, f"bar{p}", kind="canonical", p=p, barred=True)


def build_antisym_gl2(p: int, beta: Optional[RatFunc] = None) -> Correspondence:
    """E[t]/(t^2 - beta_p) with phi(x) = t x^(p).

    ``beta`` overrides beta_p (used to build deliberately wrong structures).
    """
    _check_prime(p)
    beta = beta_p(p) if beta is None else beta
    alg = QuotAlgebra.simple(f"t{p}", [-beta, RatFunc.const(0)])
    t = alg.gen(0)
    images = [[t * e for e in row] for row in frob_twist(xmatrix(2), p)]
    return Correspondence(alg, images, str(p), kind="split-antisym", p=p)


def sym_algebra(p: int) -> QuotAlgebra:
    u, v, w = uvw(p)
    zero = RatFunc.const(0)
    return QuotAlgebra.simple(f"t{p}", [4 * v * w, zero, -4 * u, zero])


def sym_tau_inverse(alg: QuotAlgebra, p: int) -> AlgElem:
    """(4u t - t^3)/(4vw), checked by multiplying back."""
    u, v, w = uvw(p)
    t = alg.gen(0)
    inv = (t * (4 * u) - t**3) * (4 * v * w).inverse()
    if not (inv * t == alg.one()):
        raise AssertionError("closed-form tau^-1 does not invert tau")
    return inv


def build_sym_gl2(p: int) -> Correspondence:
    """E[t]/(t^4 - 4u t^2 + 4vw) with phi(x) = x^(p) [[t/2, tau^-1 v], [tau^-1 w, t/2]]."""
    _check_prime(p)
    u, v, w = uvw(p)
    alg = sym_algebra(p)
    t = alg.gen(0)
    tinv = sym_tau_inverse(alg, p)
    alpha = t * Fraction(1, 2)
    Y = [[alpha, tinv * v], [tinv * w, alpha]]
    xp = frob_twist(xmatrix(2), p)
    images = [[Y[0][j] * xp[i][0] + Y[1][j] * xp[i][1] for j in range(2)] for i in range(2)]
    return Correspondence(alg, images, str(p), kind="split-sym", p=p)


def build_structure(kind: str, p: int, n: int = 2) -> Correspondence:
    if kind in ("split-antisym", "antisym"):
        return build_antisym_gl2(p)
    if kind in ("split-sym", "sym"):
        return build_sym_gl2(p)
    if kind in ("identity", "canonical"):
        return build_canonical(p, n)
    raise ValueError(f"no correspondence structure for {kind!r}")


def phi_quadratic_form_holds(G: Correspondence, q: Sequence[Sequence[int]]) -> bool:
    """phi(x)^t q phi(x) == (x^t q x)^(p) inside the algebra of G."""
    alg = G.algebra
    n = len(q)
    Q = [[alg.scalar(v) for v in row] for row in q]
    phi = G.phi_images
    lhs = mx.mat_mul(mx.mat_mul(mx.transpose(phi), Q), phi)
    rhs = frob_twist(_qform(xmatrix(n), q), G.p)
    return all(lhs[i][j] == alg.scalar(rhs[i][j]) for i in range(n) for j in range(n))


# --- the presentation C_p ----------------------------------------------------

@dataclass(frozen=True)
class CpPresentation:
    q: tuple[tuple[int, ...], ...]
    n: int
    p: int
    relations: tuple[tuple[RatFunc, ...], ...]
    inverted: dict

    def to_dict(self) -> dict:
        return {
            "q": [list(r) for r in self.q],
            "n": self.n,
            "p": self.p,
            "relations": [[str(e) for e in row] for row in self.relations],
            "inverted": {k: str(v) for k, v in self.inverted.items()},
        }


def general_cp_presentation(q: Sequence[Sequence[int]], p: int) -> CpPresentation:
    """Relations y^2 - f_p(x) and the elements g_p, det(y+1), jor(y) inverted in C_p."""
    n = len(q)
    if any(q[i][j] != q[j][i] for i in range(n) for j in range(n)) and \
            any(q[i][j] != -q[j][i] for i in range(n) for j in range(n)):
        raise ValueError("q must be symmetric or antisymmetric")
    fp = matrix_fp(q, p)
    y = ymatrix(n)
    y2 = mx.mat_mul(y, y)
    rel = tuple(tuple(y2[i][j] - fp[i][j] for j in range(n)) for i in range(n))
    one = RatFunc.const(1, n)
    y1 = [[y[i][j] + (one if i == j else 0) for j in range(n)] for i in range(n)]
    inverted = {"g_p": g_p(q, p), "det(y+1)": mx.det(y1), "jor(y)": jor(y)}
    return CpPresentation(tuple(map(tuple, q)), n, p, rel, inverted)


def _block_permutation(n: int) -> list[int]:
    """Row order taking [[0,1_r],[1_r,0]] to diag(q_2, ..., q_2)."""
    r = n // 2
    order = []
    for l in range(r):
        order += [l, r + l]
    return order


def block_charpoly_reduction(p: int, n: int = 4) -> tuple[list[RatFunc], list[RatFunc]]:
    """Characteristic polynomial of f_p for the split symmetric form at block-diagonal x~,
    against the product of the 2 x 2 block characteristic polynomials.

    Returns both coefficient lists (constant term first).
    """
    q = split_q("sym", n)
    order = _block_permutation(n)
    gens = P.xmatrix(n)
    zero = RatFunc.const(0, n)
    # x~ = w x has 2 x 2 diagonal blocks z_ll of fresh entries and zero off-diagonal blocks
    xt = [[RatFunc(gens[i][j]) if i // 2 == j // 2 else zero for j in range(n)] for i in range(n)]
    x = [None] * n
    for new_row, old_row in enumerate(order):
        x[old_row] = xt[new_row]
    fp = matrix_fp(q, p, x)
    one = RatFunc.const(1, n)
    full = mx.charpoly(fp, one)
    q2 = [[0, 1], [1, 0]]
    product = [one]
    for l in range(n // 2):
        z = [[xt[2 * l + i][2 * l + j] for j in range(2)] for i in range(2)]
        product = mx.poly_mul_coeffs(product, mx.charpoly(matrix_fp(q2, p, z), one))
    return full, product
