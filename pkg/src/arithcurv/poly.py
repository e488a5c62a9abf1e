"""Sparse multivariate polynomials over Q, variable layout, and the expression grammar.

Polynomials are ``flint.fmpq_mpoly`` objects in a graded-lexicographic context whose
variables are, in order: the matrix entries (``x`` for n = 1, ``a b c d`` for n = 2, else ``x11 .. xnn``),
the auxiliaries ``s t tp tq``, then the entries ``y11 .. ynn`` of a second matrix.

Expression grammar (whitespace insignificant)::

    ratfunc := poly | poly "/" poly
    poly    := ["+"|"-"] term (("+"|"-") term)*
    term    := factor ("*" factor)*
    factor  := nat | var ["^" nat] | "(" poly ")" ["^" nat]
"""

from __future__ import annotations

import os
import re
from functools import lru_cache
from math import lcm

import flint

from .errors import ExprParseError, TermLimitError

AUXILIARY = ("s", "t", "tp", "tq")
DEFAULT_MAX_TERMS = 10**7

MPoly = flint.fmpq_mpoly


def matrix_vars(n: int) -> tuple[str, ...]:
    if n < 1 or n > 9:
        raise ValueError(f"matrix size must be in 1..9, got {n}")
    if n == 1:
        return ("x",)
    if n == 2:
        return ("a", "b", "c", "d")
    return tuple(f"x{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1))


def second_matrix_vars(n: int) -> tuple[str, ...]:
    return tuple(f"y{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1))


@lru_cache(maxsize=None)
def ring(n: int = 2) -> flint.fmpq_mpoly_ctx:
    names = matrix_vars(n) + AUXILIARY + second_matrix_vars(n)
    return flint.fmpq_mpoly_ctx.get(names, ordering="deglex")


@lru_cache(maxsize=None)
def int_ring(n: int = 2) -> flint.fmpz_mpoly_ctx:
    names = matrix_vars(n) + AUXILIARY + second_matrix_vars(n)
    return flint.fmpz_mpoly_ctx.get(names, ordering="deglex")


def size_of(ctx) -> int:
    """Matrix size n of a context built by ``ring``/``int_ring``."""
    return int(round(((len(ctx.names()) - len(AUXILIARY)) / 2) ** 0.5))


def var(name: str, n: int = 2) -> MPoly:
    R = ring(n)
    try:
        return R.gen(R.variable_to_index(name))
    except (ValueError, KeyError, IndexError) as exc:
        raise ExprParseError(f"unknown variable {name!r} for n={n}") from exc


def xmatrix(n: int = 2) -> list[list[MPoly]]:
    """The generic matrix x of indeterminates."""
    R = ring(n)
    gens = R.gens()
    return [[gens[i * n + j] for j in range(n)] for i in range(n)]


def ymatrix(n: int = 2) -> list[list[MPoly]]:
    R = ring(n)
    off = n * n + len(AUXILIARY)
    gens = R.gens()
    return [[gens[off + i * n + j] for j in range(n)] for i in range(n)]


def max_terms() -> int:
    raw = os.environ.get("ARITHCURV_MAX_TERMS")
    if not raw:
        return DEFAULT_MAX_TERMS
    return int(raw)


def check_terms(*polys) -> None:
    cap = max_terms()
    for f in polys:
        if len(f) > cap:
            raise TermLimitError(f"polynomial with {len(f)} terms exceeds ARITHCURV_MAX_TERMS={cap}")


def derivative(f: MPoly, v: str) -> MPoly:
    """Formal partial derivative with respect to the variable named ``v``."""
    R = f.context()
    return f.derivative(R.variable_to_index(v))


def to_integer_poly(f: MPoly) -> tuple[MPoly, int]:
    """Scale f by the lcm of its coefficient denominators; returns (integer poly, scale)."""
    den = 1
    for c in f.coeffs():
        den = lcm(den, int(c.q))
    return f * den, den


# --- formatting ---------------------------------------------------------

def _monomial_str(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f) -> str:
    """Canonical text of a polynomial with integer (or rational) coefficients.

    Terms follow the context's graded-lex order, highest first.
    """
    if f.is_zero():
        return "0"
    names = f.context().names()
    out = []
    for exps, c in f.terms():
        mono = _monomial_str(names, exps)
        c = flint.fmpq(c) if not isinstance(c, flint.fmpq) else c
        neg = c < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_fraction(num: MPoly, den: MPoly) -> str:
    """Text of num/den with denominators cleared to integer coefficients."""
    scale = lcm(to_integer_poly(num)[1], to_integer_poly(den)[1])
    inum = num * scale
    iden = den * scale
    if iden.is_constant():
        c = iden.leading_coefficient()
        q = inum / c
        if all(int(x.q) == 1 for x in q.coeffs()):
            return format_poly(q)
    return f"({format_poly(inum)})/({format_poly(iden)})"


# --- parsing ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\S))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if m.group(3) and tok not in "+-*/^()":
            raise ExprParseError(f"unexpected character {tok!r} at {m.start(3)}")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = n
        self.R = ring(n)
        if not self.tokens:
            raise ExprParseError("empty expression")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise ExprParseError(f"expected {want} at token {self.i}, got {tok!r}")
        self.i += 1
        return tok

    def nat(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ExprParseError(f"expected a natural number, got {tok!r}")
        return int(tok)

    def poly(self) -> MPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        total = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> MPoly:
        result = self.factor()
        while self.peek() == "*":
            self.take("*")
            result = result * self.factor()
        return result

    def factor(self) -> MPoly:
        tok = self.peek()
        if tok is None:
            raise ExprParseError("unexpected end of expression")
        if tok.isdigit():
            return self.R.constant(self.nat())
        if tok == "(":
            self.take("(")
            base = self.poly()
            self.take(")")
        elif tok[0].isalpha():
            self.take()
            base = var(tok, self.n)
        else:
            raise ExprParseError(f"unexpected token {tok!r}")
        if self.peek() == "^":
            self.take("^")
            base = base ** self.nat()
        return base

    def ratfunc(self) -> tuple[MPoly, MPoly]:
        num = self.poly()
        den = self.R.constant(1)
        if self.peek() == "/":
            self.take("/")
            den = self.poly()
        if self.peek() is not None:
            raise ExprParseError(f"trailing input at token {self.i}: {self.peek()!r}")
        if den.is_zero():
            raise ExprParseError("zero denominator")
        return num, den


def parse_poly(text: str, n: int = 2) -> MPoly:
    p = _Parser(text, n)
    f = p.poly()
    if p.peek() is not None:
        raise ExprParseError(f"trailing input: {p.peek()!r}")
    return f


def parse_fraction(text: str, n: int = 2) -> tuple[MPoly, MPoly]:
    return _Parser(text, n).ratfunc()
