"""Exact scalars: rationals optionally extended by a primitive N-th root of unity.

Also home to the two integer-valued number theory helpers used by the GL_1 case:
the Legendre symbol (via Euler's criterion) and the Fermat quotient, which is the
unique p-derivation on the integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import flint

from .errors import NotInvertibleError

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(N: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the N-th cyclotomic polynomial."""
    if N < 1:
        raise ValueError(f"cyclotomic order must be positive, got {N}")
    return tuple(int(c) for c in flint.fmpz_poly.cyclotomic(N).coeffs())


def euler_phi(N: int) -> int:
    return len(cyclotomic_coeffs(N)) - 1


def _reduce(vec: list[Fraction], N: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient vector modulo the monic polynomial Phi_N."""
    phi = cyclotomic_coeffs(N)
    d = len(phi) - 1
    vec = list(vec)
    for top in range(len(vec) - 1, d - 1, -1):
        c = vec[top]
        if c:
            vec[top] = Fraction(0)
            for k in range(d):
                vec[top - d + k] -= c * phi[k]
    vec = vec[:d] + [Fraction(0)] * (d - len(vec))
    return tuple(vec)


class ExactScalar:
    """An element of Q(zeta_N), stored as a reduced coefficient vector in powers of zeta_N.

    N = 1 (and N = 2) collapse to plain rationals; ``ExactScalar(3, 4)`` is 3/4.
    """

    __slots__ = ("N", "coeffs")

    def __init__(self, num: Rational = 0, den: int = 1, *, N: int = 1):
        self.N = N
        value = Fraction(num) / den
        self.coeffs = _reduce([value], N)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational], N: int) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj.N = N
        obj.coeffs = _reduce([Fraction(c) for c in coeffs], N)
        return obj

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "ExactScalar":
        """zeta_N ** k."""
        k %= N
        vec = [Fraction(0)] * (k + 1)
        vec[k] = Fraction(1)
        return cls.from_coeffs(vec, N)

    # --- structure -------------------------------------------------------
    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            if other.N != self.N:
                raise ValueError(f"cannot mix Q(zeta_{self.N}) and Q(zeta_{other.N})")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other, N=self.N)
        return NotImplemented

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # --- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExactScalar.from_coeffs([x + y for x, y in zip(self.coeffs, other.coeffs)], self.N)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar.from_coeffs([-x for x in self.coeffs], self.N)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = len(self.coeffs)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    prod[i + j] += x * y
        return ExactScalar.from_coeffs(prod, self.N)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not any(self.coeffs):
            raise NotInvertibleError("inverse of zero in Q(zeta_N)")
        d = len(self.coeffs)
        # columns: self * zeta^j, solve M y = e_0
        cols = [(self * ExactScalar.zeta(self.N, j)).coeffs for j in range(d)]
        rows = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if rows[r][col] != 0)
            rows[col], rows[piv] = rows[piv], rows[col]
            pv = rows[col][col]
            rows[col] = [v / pv for v in rows[col]]
            for r in range(d):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
        return ExactScalar.from_coeffs([rows[i][d] for i in range(d)], self.N)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ExactScalar(1, N=self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, p: int) -> "ExactScalar":
        """The lift of Frobenius on Q(zeta_N): rationals fixed, zeta_N -> zeta_N^p."""
        if self.N % p == 0:
            raise ValueError(f"p={p} divides N={self.N}")
        total = ExactScalar(0, N=self.N)
        for k, c in enumerate(self.coeffs):
            if c:
                total = total + ExactScalar.zeta(self.N, k * p) * c
        return total

    # --- comparison / display -------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.N, self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return f"ExactScalar({self.coeffs[0]})"
        terms = [f"{c}*z{self.N}^{k}" for k, c in enumerate(self.coeffs) if c]
        return "ExactScalar(" + " + ".join(terms) + ")"


def legendre_symbol(q: int, p: int) -> int:
    """Legendre symbol (q|p) for an odd prime p, via Euler's criterion."""
    if p < 3 or p % 2 == 0 or not flint.fmpz(p).is_prime():
        raise ValueError(f"p must be an odd prime, got {p}")
    r = pow(q % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def fermat_quotient(n: int, p: int) -> int:
    """delta_p(n) = (n - n^p) / p, the p-derivation on Z (Frobenius lift = identity)."""
    num = n - n**p
    if num % p:
        raise ValueError(f"{p} is not prime: Fermat's little theorem fails for n={n}")
    return num // p
