"""Elements of E = Q(x): fractions of sparse polynomials, and ring maps out of E."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

import flint

from . import poly as P
from .errors import NotInvertibleError

Scalar = Union[int, Fraction, flint.fmpq, flint.fmpz]


def _scalar_to_fmpq(c) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


class RatFunc:
    """num/den with gcd(num, den) = 1 and den's leading (graded-lex) coefficient 1.

    Equality is decided by cross-multiplication, never by comparing representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, n: int = 2):
        R = num.context() if isinstance(num, flint.fmpq_mpoly) else P.ring(n)
        num = num if isinstance(num, flint.fmpq_mpoly) else R.constant(_scalar_to_fmpq(num))
        if den is None:
            den = R.constant(1)
        elif not isinstance(den, flint.fmpq_mpoly):
            den = R.constant(_scalar_to_fmpq(den))
        if den.is_zero():
            raise NotInvertibleError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, R.constant(1)
            return
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        P.check_terms(num, den)
        self.num, self.den = num, den

    # --- constructors ----------------------------------------------------
    @classmethod
    def parse(cls, text: str, n: int = 2) -> "RatFunc":
        num, den = P.parse_fraction(text, n)
        return cls(num, den)

    @classmethod
    def var(cls, name: str, n: int = 2) -> "RatFunc":
        return cls(P.var(name, n))

    @classmethod
    def const(cls, c: Scalar, n: int = 2) -> "RatFunc":
        return cls(P.ring(n).constant(_scalar_to_fmpq(c)))

    @property
    def ctx(self):
        return self.num.context()

    @property
    def n(self) -> int:
        return P.size_of(self.ctx)

    # --- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> flint.fmpq:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return flint.fmpq(0)
        return self.num.leading_coefficient() / self.den.leading_coefficient()

    # --- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return RatFunc(self.ctx.constant(_scalar_to_fmpq(other)))
        if isinstance(other, flint.fmpq_mpoly):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, flint.fmpz, flint.fmpq, Fraction)):
            if other == 0:
                return RatFunc(self.ctx.constant(0))
            out = RatFunc.__new__(RatFunc)
            out.num, out.den = self.num * _scalar_to_fmpq(other), self.den
            return out
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFunc(self.ctx.constant(0))
        if self.den.is_one() and other.den.is_one():
            out = RatFunc.__new__(RatFunc)
            out.num, out.den = self.num * other.num, self.den
            P.check_terms(out.num)
            return out
        # cross-cancel before multiplying keeps operands small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        lc = den.leading_coefficient()
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = num / lc, den / lc
        P.check_terms(out.num, out.den)
        return out

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise NotInvertibleError("inverse of zero in E")
        return RatFunc(self.den, self.num)

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
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = self.num**e, self.den**e
        P.check_terms(out.num, out.den)
        return out

    # --- comparison --------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ratfunc_eq(self, other)

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return P.format_fraction(self.num, self.den)

    def degree(self) -> int:
        """Total degree num - den (meaningful for homogeneous elements)."""
        return self.num.total_degree() - self.den.total_degree()


def ratfunc_eq(f: RatFunc, g: RatFunc) -> bool:
    """f == g in E, decided by expanding f.num*g.den - g.num*f.den."""
    return (f.num * g.den - g.num * f.den).is_zero()


def ratfunc_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    ops = {"add": f.__add__, "sub": f.__sub__, "mul": f.__mul__, "div": f.__truediv__}
    try:
        return ops[op](g)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


# --- ring maps out of E ------------------------------------------------------

def _eval_poly(f, images: list[RatFunc]) -> RatFunc:
    """f(images) for a polynomial f and rational-function images of every variable."""
    if all(r.den.is_one() for r in images):
        return RatFunc(f.compose(*[r.num for r in images]))
    degs = f.degrees()
    nums = [r.num for r in images]
    dens = [r.den for r in images]
    cache: dict[tuple[int, int, bool], flint.fmpq_mpoly] = {}

    def power(i: int, e: int, of_den: bool):
        key = (i, e, of_den)
        if key not in cache:
            base = dens[i] if of_den else nums[i]
            cache[key] = base**e
        return cache[key]

    R = f.context()
    total = R.constant(0)
    for exps, c in f.terms():
        term = R.constant(c)
        for i, e in enumerate(exps):
            if degs[i] == 0 or dens[i].is_one() and e == 0:
                continue
            if e:
                term *= power(i, e, False)
            if not dens[i].is_one() and degs[i] - e:
                term *= power(i, degs[i] - e, True)
        total += term
    common = R.constant(1)
    for i, D in enumerate(degs):
        if D and not dens[i].is_one():
            common *= power(i, D, True)
    return RatFunc(total, common)


def subst(f: RatFunc, assignment: Mapping[str, object]):
    """Homomorphic image of f under variable -> image.

    Images may be RatFunc (a ring map E -> E) or AlgElem (a ring map E -> F into a
    quotient algebra). Variables not mentioned are fixed.
    """
    values = list(assignment.values())
    if values and not all(isinstance(v, (RatFunc, int, Fraction)) for v in values):
        from .quotalg import evaluate_in_algebra

        return evaluate_in_algebra(f, assignment)
    R = f.ctx
    n = f.n
    images = []
    for name in R.names():
        img = assignment.get(name)
        if img is None:
            images.append(RatFunc(P.var(name, n)))
        elif isinstance(img, RatFunc):
            images.append(img)
        else:
            images.append(RatFunc.const(img, n))
    num = _eval_poly(f.num, images)
    den = _eval_poly(f.den, images)
    return num / den


def frobenius_subst(f: RatFunc, p: int) -> RatFunc:
    """f(x^(p)): every matrix entry raised to the p-th power, auxiliaries fixed."""
    R = f.ctx
    n = f.n
    mvars = set(P.matrix_vars(n))
    imgs = [g**p if name in mvars else g for name, g in zip(R.names(), R.gens())]
    return RatFunc(f.num.compose(*imgs), f.den.compose(*imgs))


def iota(f: RatFunc) -> RatFunc:
    """The involution x -> -x on the matrix entries."""
    R = f.ctx
    mvars = set(P.matrix_vars(f.n))
    imgs = [-g if name in mvars else g for name, g in zip(R.names(), R.gens())]
    return RatFunc(f.num.compose(*imgs), f.den.compose(*imgs))


def iota_split(f: RatFunc) -> tuple[RatFunc, RatFunc]:
    """(f+, f-) with f = f+ + f-, iota(f+) = f+, iota(f-) = -f-."""
    g = iota(f)
    half = Fraction(1, 2)
    return (f + g) * half, (f - g) * half


def frob_twist(M: list[list[RatFunc]], p: int) -> list[list[RatFunc]]:
    """M^(p): every entry raised to the p-th power."""
    return [[e**p for e in row] for row in M]


def poly_derivative(f: RatFunc, v: str) -> RatFunc:
    if not f.is_polynomial():
        raise ValueError("poly_derivative expects a polynomial")
    return RatFunc(P.derivative(f.num, v))


def xmatrix(n: int = 2) -> list[list[RatFunc]]:
    return [[RatFunc(e) for e in row] for row in P.xmatrix(n)]


def ymatrix(n: int = 2) -> list[list[RatFunc]]:
    return [[RatFunc(e) for e in row] for row in P.ymatrix(n)]


def const_matrix(rows, n: int = 2) -> list[list[RatFunc]]:
    return [[RatFunc.const(v, n) for v in row] for row in rows]
