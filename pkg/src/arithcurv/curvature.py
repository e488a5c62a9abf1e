"""Curvature and (1,1)-curvature of correspondence structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Optional

from . import matrix as mx
from . import poly as P
from .chern import beta_p, build_antisym_gl2, build_canonical, build_structure
from .quotalg import Correspondence, gamma_star, phi_apply
from .ratfunc import RatFunc, frob_twist, iota_split, subst, xmatrix


@dataclass
class CurvatureReport:
    label1: str
    label2: str
    p: int
    p2: int
    element: RatFunc
    lhs: RatFunc  # Gamma2*(Gamma1*(e))
    rhs: RatFunc  # Gamma1*(Gamma2*(e))
    scale: Fraction
    difference: RatFunc = field(init=False)

    def __post_init__(self):
        self.difference = (self.lhs - self.rhs) * self.scale

    @property
    def verdict(self) -> str:
        return "zero" if self.lhs == self.rhs else "nonzero"

    def to_dict(self) -> dict:
        return {
            "pair": [self.label1, self.label2],
            "element": str(self.element),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "difference": str(self.difference),
            "verdict": self.verdict,
        }


def curvature(G1: Correspondence, G2: Correspondence, e: RatFunc,
              scale: Optional[Fraction] = None) -> CurvatureReport:
    """(1/pp')(Gamma2* o Gamma1* - Gamma1* o Gamma2*)(e)."""
    if G1.p is None or G2.p is None:
        raise ValueError("curvature needs structures labelled by primes")
    if scale is None:
        if G1.p == G2.p:
            raise ValueError("curvature needs distinct primes p != p'")
        scale = Fraction(1, G1.p * G2.p)
    lhs = gamma_star(G2, gamma_star(G1, e))
    rhs = gamma_star(G1, gamma_star(G2, e))
    return CurvatureReport(G1.label, G2.label, G1.p, G2.p, e, lhs, rhs, scale)


def one_one_curvature(G: Correspondence, p2: int, e: RatFunc) -> CurvatureReport:
    """Curvature against the canonical structure at p2; scale 1/p when p2 = p."""
    bar = build_canonical(p2, G.n)
    scale = Fraction(1, G.p) if G.p == p2 else Fraction(1, G.p * p2)
    return curvature(G, bar, e, scale)


def monomials(degree: int, n: int = 2) -> list[RatFunc]:
    names = P.matrix_vars(n)
    out = []
    for combo in combinations_with_replacement(names, degree):
        out.append(RatFunc.parse("*".join(combo) if combo else "1", n))
    return out


def claim5_elements() -> list[RatFunc]:
    """The degree-2 and degree-1 monomials plus one odd degree-3 sample."""
    return monomials(2) + monomials(1) + [RatFunc.parse("a*b*c")]


def verify_claim5(p: int, p2: int, builder: Callable[[int], Correspondence] = build_antisym_gl2,
                  builder2: Optional[Callable[[int], Correspondence]] = None) -> list[CurvatureReport]:
    """Antisymmetric curvature on claim5_elements(); ``builder2`` (default ``builder``) builds the p' side."""
    Gp, Gq = builder(p), (builder2 or builder)(p2)
    return [curvature(Gp, Gq, e) for e in claim5_elements()]


@dataclass
class NonvanishingReport:
    kind: str
    report: CurvatureReport
    nonzero: bool
    # antisym: witness values of both sides at a = c = d = 1
    witness: Optional[tuple[RatFunc, RatFunc]] = None
    # sym: difference = coefficient * (ab)^exponent
    coefficient: Optional[Fraction] = None
    expected_coefficient: Optional[Fraction] = None
    exponent: Optional[int] = None
    displayed_exponent: Optional[int] = None
    closed_forms_match: Optional[bool] = None

    @property
    def exponent_discrepancy(self) -> bool:
        return self.exponent is not None and self.exponent != self.displayed_exponent

    @property
    def ok(self) -> bool:
        if not self.nonzero:
            return False
        if self.kind == "split-antisym":
            return bool(self.closed_forms_match) and self.witness[0] != self.witness[1]
        return self.coefficient == self.expected_coefficient and bool(self.closed_forms_match)


def _monomial_in_ab(f: RatFunc) -> tuple[Fraction, int]:
    """(c, k) with f = c*(ab)^k, or ValueError."""
    if not f.is_polynomial() or len(f.num) != 1:
        raise ValueError(f"{f} is not a monomial")
    (exps, c), = list(f.num.terms())
    a, b = exps[0], exps[1]
    if a != b or any(exps[2:]):
        raise ValueError(f"{f} is not a power of ab")
    return Fraction(int(c.p), int(c.q)), a


def sym_expected_coefficient(p: int, p2: int) -> Fraction:
    scale = Fraction(1, p) if p == p2 else Fraction(1, p * p2)
    return 2 ** (p + 1) * (1 - Fraction(2) ** ((p - 1) * (p2 - 1))) * scale


def verify_nonvanishing_11(kind: str, p: int, p2: int,
                           builder: Optional[Callable[[int], Correspondence]] = None
                           ) -> NonvanishingReport:
    G = builder(p) if builder else build_structure(kind, p)
    if kind == "split-antisym":
        e = RatFunc.parse("a^2")
        rep = one_one_curvature(G, p2, e)
        a2 = RatFunc.parse(f"a^{2 * p * p2}")
        x = xmatrix(2)
        bar_then_p = 2 * a2 * mx.det(frob_twist(x, p2)) ** p / mx.det(frob_twist(x, p * p2))
        p_then_bar = 2 * a2 * beta_p(p) ** p2
        forms = rep.lhs == bar_then_p and rep.rhs == p_then_bar
        spec = {"a": 1, "c": 1, "d": 1}
        witness = (subst(rep.lhs, spec), subst(rep.rhs, spec))
        return NonvanishingReport(kind, rep, rep.verdict == "nonzero", witness=witness,
                                  closed_forms_match=forms)
    e = RatFunc.parse("a*b")
    rep = one_one_curvature(G, p2, e)
    ab = RatFunc.parse(f"a^{p * p2}*b^{p * p2}")
    forms = rep.lhs == 2 ** (p + 1) * ab and rep.rhs == 4 * 2 ** ((p - 1) * p2) * ab
    coeff, k = _monomial_in_ab(rep.difference)
    return NonvanishingReport(
        kind, rep, rep.verdict == "nonzero",
        coefficient=coeff, expected_coefficient=sym_expected_coefficient(p, p2),
        exponent=k, displayed_exponent=p * p, closed_forms_match=forms,
    )


@dataclass
class InductionReport:
    label: str
    kind: str
    odd_killed: list[tuple[str, bool]]
    even_in_plus: list[tuple[str, bool]]
    even_phi_t_free: Optional[list[tuple[str, bool]]] = None
    ad_t2_coefficient: Optional[RatFunc] = None

    @property
    def partially_induced(self) -> bool:
        return all(ok for _, ok in self.odd_killed + self.even_in_plus)

    @property
    def ok(self) -> bool:
        if not self.partially_induced:
            return False
        if self.even_phi_t_free is not None and self.kind == "split-antisym":
            return all(ok for _, ok in self.even_phi_t_free)
        if self.kind == "split-sym":
            return self.ad_t2_coefficient is not None and not self.ad_t2_coefficient.is_zero()
        return True


def partial_induction_check(G: Correspondence, sample_degree: int) -> InductionReport:
    odd, even, t_free = [], [], []
    for deg in range(1, sample_degree + 1):
        for m in monomials(deg, G.n):
            g = gamma_star(G, m)
            if deg % 2:
                odd.append((str(m), g.is_zero()))
            else:
                even.append((str(m), iota_split(g)[1].is_zero()))
                if G.kind == "split-antisym":
                    t_free.append((str(m), all(c.is_zero() for c in phi_apply(G, m).coeffs[1:])))
    ad_t2 = None
    if G.kind == "split-sym":
        ad_t2 = phi_apply(G, RatFunc.parse("a*d")).coeffs[2]
    return InductionReport(G.label, G.kind, odd, even, t_free if G.kind == "split-antisym" else None,
                           ad_t2)
