"""Truncated p-adic arithmetic on A[x, det(x)^-1]^ (mod p^K) and the Chern Frobenius lift.

An element is ``poly / det(x)^m`` with ``poly`` an integer polynomial whose
coefficients live in [0, p^K). Inverses of units are built from the factorization
``e = c * det^j * (1 + p*h)`` and a finite geometric series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import flint

from . import matrix as mx
from . import poly as P
from .errors import PrecisionError
from .ratfunc import RatFunc
from .scalars import legendre_symbol


def is_prime(p: int) -> bool:
    return p >= 2 and flint.fmpz(p).is_prime()


@dataclass(frozen=True)
class Precision:
    p: int
    K: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise PrecisionError(f"{self.p} is not prime")
        if self.p == 2:
            raise PrecisionError("p = 2 is not supported")
        if self.K < 1:
            raise PrecisionError(f"precision K must be >= 1, got {self.K}")

    @property
    def modulus(self) -> int:
        return self.p**self.K


@lru_cache(maxsize=None)
def _mod_ring(n: int, modulus: int) -> flint.fmpz_mod_mpoly_ctx:
    return flint.fmpz_mod_mpoly_ctx.get(P.matrix_vars(n), modulus=modulus, ordering="deglex")


@lru_cache(maxsize=None)
def _lift_ring(n: int) -> flint.fmpz_mpoly_ctx:
    return flint.fmpz_mpoly_ctx.get(P.matrix_vars(n), ordering="deglex")


@lru_cache(maxsize=None)
def _det_poly(n: int, modulus: int):
    R = _mod_ring(n, modulus)
    g = R.gens()
    return mx.det([[g[i * n + j] for j in range(n)] for i in range(n)])


class PadicElem:
    """poly / det(x)^det_pow modulo p^K."""

    __slots__ = ("poly", "det_pow", "prec", "n")

    def __init__(self, poly, det_pow: int, prec: Precision, n: int):
        self.poly = poly
        self.det_pow = det_pow
        self.prec = prec
        self.n = n
        P.check_terms(poly)

    # --- constructors ----------------------------------------------------
    @classmethod
    def ring(cls, prec: Precision, n: int):
        return _mod_ring(n, prec.modulus)

    @classmethod
    def const(cls, c, prec: Precision, n: int) -> "PadicElem":
        return cls(cls.ring(prec, n).constant(_mod_scalar(c, prec)), 0, prec, n)

    @classmethod
    def gen(cls, i: int, j: int, prec: Precision, n: int) -> "PadicElem":
        return cls(cls.ring(prec, n).gen(i * n + j), 0, prec, n)

    @classmethod
    def det(cls, prec: Precision, n: int) -> "PadicElem":
        return cls(_det_poly(n, prec.modulus), 0, prec, n)

    @classmethod
    def from_poly(cls, f, prec: Precision, n: int, det_pow: int = 0) -> "PadicElem":
        """From a Q- or Z-coefficient polynomial in the matrix entries (p-integral coefficients)."""
        R = cls.ring(prec, n)
        nv = n * n
        data = {}
        for exps, c in f.terms():
            if any(exps[nv:]):
                raise ValueError("PadicElem polynomials may only involve matrix entries")
            data[tuple(exps[:nv])] = _mod_scalar(c, prec)
        return cls(R.from_dict(data), det_pow, prec, n)

    # --- structure ---------------------------------------------------------
    def _det(self):
        return _det_poly(self.n, self.prec.modulus)

    def _align(self, other: "PadicElem"):
        if other.prec != self.prec or other.n != self.n:
            raise PrecisionError("mixing p-adic elements of different precision or size")
        m = max(self.det_pow, other.det_pow)
        d = self._det()
        a = self.poly * d ** (m - self.det_pow) if m > self.det_pow else self.poly
        b = other.poly * d ** (m - other.det_pow) if m > other.det_pow else other.poly
        return a, b, m

    def _coerce(self, other):
        if isinstance(other, PadicElem):
            return other
        if isinstance(other, (int, Fraction, flint.fmpz, flint.fmpq)):
            return PadicElem.const(other, self.prec, self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, m = self._align(other)
        return PadicElem(a + b, m, self.prec, self.n)

    __radd__ = __add__

    def __neg__(self):
        return PadicElem(-self.poly, self.det_pow, self.prec, self.n)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, m = self._align(other)
        return PadicElem(a - b, m, self.prec, self.n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpz, flint.fmpq)):
            return PadicElem(self.poly * _mod_scalar(other, self.prec), self.det_pow, self.prec, self.n)
        if not isinstance(other, PadicElem):
            return NotImplemented
        if other.prec != self.prec or other.n != self.n:
            raise PrecisionError("mixing p-adic elements of different precision or size")
        return PadicElem(self.poly * other.poly, self.det_pow + other.det_pow, self.prec, self.n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return padic_invert(self) ** (-e)
        return PadicElem(self.poly**e, self.det_pow * e, self.prec, self.n)

    # --- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, _ = self._align(other)
        return (a - b).is_zero()

    __hash__ = None

    def valuation_at_least(self, k: int) -> bool:
        """True when every coefficient is divisible by p^k (element is 0 mod p^k)."""
        pk = self.prec.p**k
        return all(int(c) % pk == 0 for c in self.poly.coeffs())

    def reduce(self, K: int) -> "PadicElem":
        """Image at the coarser precision p^K."""
        if K > self.prec.K:
            raise PrecisionError("cannot raise precision by reduction")
        prec = Precision(self.prec.p, K)
        R = _mod_ring(self.n, prec.modulus)
        data = {tuple(e): int(c) % prec.modulus for e, c in self.poly.terms()}
        return PadicElem(R.from_dict(data), self.det_pow, prec, self.n)

    def lift(self, symmetric: bool = False):
        """Integer polynomial lift of the numerator."""
        m = self.prec.modulus
        data = {}
        for e, c in self.poly.terms():
            v = int(c)
            if symmetric and v > m // 2:
                v -= m
            data[tuple(e)] = v
        return _lift_ring(self.n).from_dict(data)

    def normalized(self) -> "PadicElem":
        """Cancel det(x) factors found by exact division of the symmetric integer lift."""
        if self.det_pow == 0 or self.poly.is_zero():
            return self if not self.poly.is_zero() else PadicElem(self.poly, 0, self.prec, self.n)
        R = _lift_ring(self.n)
        g = R.gens()
        d = mx.det([[g[i * self.n + j] for j in range(self.n)] for i in range(self.n)])
        lifted = self.lift(symmetric=True)
        m = self.det_pow
        while m:
            q, r = divmod(lifted, d)
            if not r.is_zero():
                break
            lifted, m = q, m - 1
        if m == self.det_pow:
            return self
        mod_R = self.ring(self.prec, self.n)
        data = {tuple(e): int(c) for e, c in lifted.terms()}
        return PadicElem(mod_R.from_dict(data), m, self.prec, self.n)

    def to_dict(self) -> dict:
        return {"numerator": P.format_poly(self.lift()), "det_power": self.det_pow}

    def __repr__(self):
        return f"PadicElem(({P.format_poly(self.lift())})/det^{self.det_pow} mod {self.prec.p}^{self.prec.K})"


PadicMatrix = list  # list[list[PadicElem]] sharing one Precision


def _mod_scalar(c, prec: Precision) -> int:
    m = prec.modulus
    if isinstance(c, flint.fmpq):
        c = Fraction(int(c.p), int(c.q))
    if isinstance(c, Fraction):
        if c.denominator % prec.p == 0:
            raise PrecisionError(f"{c} is not {prec.p}-integral")
        return c.numerator * pow(c.denominator, -1, m) % m
    return int(c) % m


def padic_invert(e: PadicElem) -> PadicElem:
    """e^-1 mod p^K, for e whose reduction mod p is (nonzero constant) * det(x)^j."""
    prec, n = e.prec, e.n
    p, m = prec.p, prec.modulus
    red = {tuple(ex): int(c) % p for ex, c in e.poly.terms() if int(c) % p}
    if not red:
        raise PrecisionError("element is 0 mod p, not a unit")
    top = max(sum(ex) for ex in red)
    if top % n:
        raise PrecisionError("reduction mod p is not c*det^j (degree not a multiple of n)")
    j = top // n
    det_j = _det_poly(n, m) ** j
    det_terms = {tuple(ex): int(c) % p for ex, c in det_j.terms() if int(c) % p}
    lead = next(iter(det_terms))
    if lead not in red:
        raise PrecisionError("reduction mod p is not a unit of F_p[x, det^-1]")
    c = red[lead] * pow(det_terms[lead], -1, p) % p
    if {k: v * c % p for k, v in det_terms.items()} != red:
        raise PrecisionError("reduction mod p is not a unit of F_p[x, det^-1]")
    c_inv = pow(c, -1, m)
    # e = c * det^(j - det_pow) * (1 + ph) with ph = (poly - c det^j) / (c det^j)
    ph = PadicElem((e.poly - det_j * c) * c_inv, j, prec, n)
    series = PadicElem.const(1, prec, n)
    term = series
    for _ in range(1, prec.K):
        term = term * (-ph)
        series = series + term
    shift = e.det_pow - j
    if shift >= 0:
        out = PadicElem(series.poly * _det_poly(n, m) ** shift, series.det_pow, prec, n)
    else:
        out = PadicElem(series.poly, series.det_pow - shift, prec, n)
    return (out * c_inv).normalized()


@lru_cache(maxsize=None)
def binomial_half(i: int) -> Fraction:
    """binom(1/2, i)."""
    out = Fraction(1)
    for k in range(i):
        out *= Fraction(1, 2) - k
        out /= k + 1
    return out


def _identity(prec: Precision, n: int) -> PadicMatrix:
    return mx.identity(n, PadicElem.const(1, prec, n), PadicElem.const(0, prec, n))


def sqrt_half_series(u: PadicMatrix) -> PadicMatrix:
    """Truncation of (1+u)^(1/2) = sum_{i<K} binom(1/2,i) u^i, for u = 0 mod p."""
    prec = u[0][0].prec
    n_mat = len(u)
    n = u[0][0].n
    if prec.p == 2:
        raise PrecisionError("the series needs 2 invertible")
    for row in u:
        for e in row:
            if not e.valuation_at_least(1):
                raise PrecisionError("series argument must be 0 mod p")
    one = PadicElem.const(1, prec, n)
    zero = PadicElem.const(0, prec, n)
    S = mx.identity(n_mat, one, zero)
    power = S
    for i in range(1, prec.K):
        power = mx.mat_mul(power, u)
        S = mx.mat_add(S, mx.mat_scale(power, binomial_half(i)))
    return [[e.normalized() for e in row] for row in S]


def _check_q(q: Sequence[Sequence[int]], prec: Optional[Precision] = None) -> int:
    n = len(q)
    if any(len(row) != n for row in q):
        raise ValueError("q must be square")
    qt = mx.transpose(q)
    if qt != [list(r) for r in q] and qt != [[-v for v in r] for r in q]:
        raise ValueError("q must be symmetric or antisymmetric")
    d = mx.det([[Fraction(v) for v in row] for row in q])
    if d == 0:
        raise ValueError("q is singular")
    if prec is not None and Fraction(d).numerator % prec.p == 0:
        raise PrecisionError(f"p={prec.p} divides det(q)")
    return n


def _x_matrices(prec: Precision, n: int):
    X = [[PadicElem.gen(i, j, prec, n) for j in range(n)] for i in range(n)]
    Xp = [[e**prec.p for e in row] for row in X]
    return X, Xp


def chern_frobenius(q: Sequence[Sequence[int]], prec: Precision) -> PadicMatrix:
    """Phi_p = x^(p) {(x^(p)t q x^(p))^-1 (x^t q x)^(p)}^(1/2) modulo p^K.

    q has integer entries, so phi_p(q) = q.
    """
    n = _check_q(q, prec)
    X, Xp = _x_matrices(prec, n)
    Q = [[PadicElem.const(v, prec, n) for v in row] for row in q]
    M = mx.mat_mul(mx.mat_mul(mx.transpose(Xp), Q), Xp)
    H = mx.mat_mul(mx.mat_mul(mx.transpose(X), Q), X)
    N = [[e**prec.p for e in row] for row in H]
    det_inv = padic_invert(mx.det(M))
    f = mx.mat_scale(mx.mat_mul(mx.adjugate(M) if n > 1 else [[PadicElem.const(1, prec, n)]], N), det_inv)
    u = mx.mat_sub(f, _identity(prec, n))
    S = sqrt_half_series(u)
    return [[e.normalized() for e in row] for row in mx.mat_mul(Xp, S)]


@dataclass
class DiagramResult:
    holds: bool
    entry: Optional[tuple[int, int]] = None
    difference: Optional[dict] = None

    def __bool__(self):
        return self.holds


def verify_chern_diagram(q, prec: Precision, phi: Optional[PadicMatrix] = None) -> DiagramResult:
    """Check Phi^t q Phi = (x^t q x)^(p) mod p^K entrywise.

    ``phi`` overrides the candidate lift (defaults to ``chern_frobenius(q, prec)``).
    """
    n = _check_q(q, prec)
    if phi is None:
        phi = chern_frobenius(q, prec)
    X, _ = _x_matrices(prec, n)
    Q = [[PadicElem.const(v, prec, n) for v in row] for row in q]
    lhs = mx.mat_mul(mx.mat_mul(mx.transpose(phi), Q), phi)
    rhs = [[e**prec.p for e in row] for row in mx.mat_mul(mx.mat_mul(mx.transpose(X), Q), X)]
    for i in range(n):
        for j in range(n):
            diff = lhs[i][j] - rhs[i][j]
            if not diff.is_zero():
                return DiagramResult(False, (i, j), diff.normalized().to_dict())
    return DiagramResult(True)


def frobenius_congruence(phi: PadicMatrix) -> bool:
    """Phi = x^(p) mod p, entrywise."""
    prec = phi[0][0].prec
    n = phi[0][0].n
    _, Xp = _x_matrices(prec, n)
    return all((phi[i][j] - Xp[i][j]).valuation_at_least(1) for i in range(n) for j in range(n))


def gl1_chern(q: int, p: int) -> RatFunc:
    """The GL_1 Chern lift x -> (q|p) q^((p-1)/2) x^p as an exact element of Q[x, 1/x]."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if p % 2 == 0 or not is_prime(p):
        raise PrecisionError(f"p must be an odd prime, got {p}")
    if q % p == 0:
        raise PrecisionError(f"p={p} divides q={q}")
    coeff = legendre_symbol(q, p) * Fraction(q) ** ((p - 1) // 2)
    x = RatFunc.var("x", 1)
    return x**p * coeff
