"""Finite E-algebras E[t_1..t_k]/(triangular monic relations) and correspondences on E.

Elements are flat coefficient tuples over the monomial basis t_1^e_1 ... t_k^e_k
(e_i < d_i), with t_1 the least significant index: flat = e_1 + d_1*(e_2 + d_2*(...)).
The relation for t_i is monic of degree d_i with coefficients in the subalgebra
generated by t_1..t_{i-1}; it is stored as the lower coefficients m_0..m_{d_i-1}, each
a flat tuple of length d_1*...*d_{i-1}.

A correspondence is kept in left-monogenic form: pi is the structural inclusion
E -> F and phi is given by the images of the matrix entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Mapping, Optional, Sequence

from . import matrix as mx
from . import poly as P
from .errors import AlgebraMismatchError, NotInvertibleError
from .ratfunc import RatFunc, subst


class QuotAlgebra:
    def __init__(self, gens: Sequence[str], degrees: Sequence[int],
                 relations: Sequence[Sequence[Sequence[RatFunc]]], n: int = 2):
        if not (len(gens) == len(degrees) == len(relations)):
            raise ValueError("gens, degrees and relations must have equal length")
        self.gens = tuple(gens)
        self.degrees = tuple(degrees)
        self.n = n
        self.dims = tuple(prod(self.degrees[:i]) for i in range(len(self.degrees) + 1))
        rels = []
        for i, (d, rel) in enumerate(zip(self.degrees, relations)):
            if d < 1 or len(rel) != d:
                raise ValueError(f"relation for {gens[i]} must have {d} lower coefficients")
            sub = self.dims[i]
            coeffs = []
            for c in rel:
                c = tuple(c)
                if len(c) != sub:
                    raise ValueError(f"coefficient of {gens[i]} must lie in the subalgebra of dim {sub}")
                coeffs.append(c)
            rels.append(tuple(coeffs))
        self.relations = tuple(rels)
        self._basis_traces: Optional[tuple[RatFunc, ...]] = None

    @property
    def dim(self) -> int:
        return self.dims[-1]

    @classmethod
    def trivial(cls, n: int = 2) -> "QuotAlgebra":
        return cls((), (), (), n)

    @classmethod
    def simple(cls, name: str, monic_lower: Sequence[RatFunc], n: int = 2) -> "QuotAlgebra":
        """E[t]/(t^d + m_{d-1} t^{d-1} + ... + m_0) from the lower coefficients m_0..m_{d-1}."""
        return cls((name,), (len(monic_lower),), [[(c,) for c in monic_lower]], n)

    # --- elements -----------------------------------------------------------
    def zero(self) -> "AlgElem":
        z = RatFunc.const(0, self.n)
        return AlgElem(self, (z,) * self.dim)

    def scalar(self, c) -> "AlgElem":
        c = c if isinstance(c, RatFunc) else RatFunc.const(c, self.n)
        z = RatFunc.const(0, self.n)
        return AlgElem(self, (c,) + (z,) * (self.dim - 1))

    def one(self) -> "AlgElem":
        return self.scalar(1)

    def basis(self, index: int) -> "AlgElem":
        z = RatFunc.const(0, self.n)
        one = RatFunc.const(1, self.n)
        return AlgElem(self, tuple(one if k == index else z for k in range(self.dim)))

    def gen(self, name_or_index) -> "AlgElem":
        i = self.gens.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        if self.degrees[i] == 1:
            # degree-one generator: t = -m_0
            return self.embed(tuple(-c for c in self.relations[i][0]))
        return self.basis(self.dims[i])

    def embed(self, coeffs: Sequence[RatFunc]) -> "AlgElem":
        """Element of a lower subalgebra, padded to full length."""
        z = RatFunc.const(0, self.n)
        return AlgElem(self, tuple(coeffs) + (z,) * (self.dim - len(coeffs)))

    def basis_exponents(self, index: int) -> tuple[int, ...]:
        out = []
        for d in self.degrees:
            out.append(index % d)
            index //= d
        return tuple(out)

    # --- multiplication -------------------------------------------------------
    def _mul(self, x: Sequence[RatFunc], y: Sequence[RatFunc], level: int) -> list[RatFunc]:
        if level == 0:
            return [x[0] * y[0]]
        d = self.degrees[level - 1]
        D = self.dims[level - 1]
        xb = [x[k * D:(k + 1) * D] for k in range(d)]
        yb = [y[k * D:(k + 1) * D] for k in range(d)]
        xnz = [any(not c.is_zero() for c in b) for b in xb]
        ynz = [any(not c.is_zero() for c in b) for b in yb]
        zero = RatFunc.const(0, self.n)
        acc: list[Optional[list[RatFunc]]] = [None] * (2 * d - 1)
        for i in range(d):
            if not xnz[i]:
                continue
            for j in range(d):
                if not ynz[j]:
                    continue
                prod_ij = self._mul(xb[i], yb[j], level - 1)
                k = i + j
                acc[k] = prod_ij if acc[k] is None else [u + v for u, v in zip(acc[k], prod_ij)]
        rel = self.relations[level - 1]
        for k in range(2 * d - 2, d - 1, -1):
            ck = acc[k]
            if ck is None or all(c.is_zero() for c in ck):
                continue
            # c_k t^k = -sum_e m_e c_k t^(k-d+e)
            for e in range(d):
                if all(c.is_zero() for c in rel[e]):
                    continue
                term = self._mul(ck, rel[e], level - 1)
                slot = k - d + e
                if acc[slot] is None:
                    acc[slot] = [-v for v in term]
                else:
                    acc[slot] = [u - v for u, v in zip(acc[slot], term)]
        out: list[RatFunc] = []
        for k in range(d):
            out.extend(acc[k] if acc[k] is not None else [zero] * D)
        return out

    def mul(self, a: "AlgElem", b: "AlgElem") -> "AlgElem":
        if a.alg is not self or b.alg is not self:
            raise AlgebraMismatchError("elements of different algebras")
        return AlgElem(self, tuple(self._mul(a.coeffs, b.coeffs, len(self.degrees))))

    def basis_traces(self) -> tuple[RatFunc, ...]:
        if self._basis_traces is None:
            self._basis_traces = tuple(mx.trace(mult_matrix(self.basis(j))) for j in range(self.dim))
        return self._basis_traces

    def to_dict(self) -> dict:
        return {
            "generators": [{"name": g, "degree": d} for g, d in zip(self.gens, self.degrees)],
            "dimension": self.dim,
            "relations": [[[str(c) for c in coeff] for coeff in rel] for rel in self.relations],
        }

    def __repr__(self):
        return f"QuotAlgebra(gens={self.gens}, degrees={self.degrees})"


class AlgElem:
    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: QuotAlgebra, coeffs: Sequence[RatFunc]):
        if len(coeffs) != alg.dim:
            raise ValueError(f"expected {alg.dim} coefficients, got {len(coeffs)}")
        self.alg = alg
        self.coeffs = tuple(coeffs)

    def _coerce(self, other) -> "AlgElem":
        if isinstance(other, AlgElem):
            if other.alg is not self.alg:
                raise AlgebraMismatchError("elements of different algebras")
            return other
        if isinstance(other, (RatFunc, int)):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgElem(self.alg, [u + v for u, v in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.alg, [-u for u in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgElem(self.alg, [u - v for u, v in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return self.alg.mul(self, self._coerce(other))
        if isinstance(other, (RatFunc, int, Fraction)):
            return AlgElem(self.alg, [u * other for u in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            return alg_inverse(self) ** (-e)
        result = self.alg.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, AlgElem):
            return self * alg_inverse(other)
        if isinstance(other, RatFunc):
            return self * other.inverse()
        return self * (Fraction(1) / other)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            exps = self.alg.basis_exponents(k)
            mono = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(self.alg.gens, exps) if e)
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "AlgElem(" + (" + ".join(terms) or "0") + ")"


def alg_mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a.alg.mul(a, b)


def mult_matrix(a: AlgElem) -> list[list[RatFunc]]:
    """Matrix of multiplication by a in the monomial basis (column j = a * b_j)."""
    alg = a.alg
    cols = [alg.mul(a, alg.basis(j)).coeffs for j in range(alg.dim)]
    return [[cols[j][i] for j in range(alg.dim)] for i in range(alg.dim)]


def trace_pi(a: AlgElem) -> RatFunc:
    """tr_{F/E}(a), computed E-linearly from the cached traces of the basis."""
    traces = a.alg.basis_traces()
    total = RatFunc.const(0, a.alg.n)
    for c, t in zip(a.coeffs, traces):
        if not c.is_zero() and not t.is_zero():
            total = total + c * t
    return total


def _solve_fraction_free(M: list[list[RatFunc]], rhs: list[RatFunc]) -> list[RatFunc]:
    """Solve M x = rhs over E by Bareiss elimination on the row-cleared polynomial system.

    Every intermediate division is exact, so no gcds are taken until back substitution.
    """
    n = len(M)
    rows = []
    for row, b in zip(M, rhs):
        L = row[0].den
        for e in list(row[1:]) + [b]:
            L = L * e.den / L.gcd(e.den)
        rows.append([(e.num * (L / e.den)) for e in list(row) + [b]])
    prev = rows[0][0].context().constant(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if not rows[r][k].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        rows[k], rows[piv] = rows[piv], rows[k]
        akk = rows[k][k]
        for i in range(k + 1, n):
            aik = rows[i][k]
            rows[i] = [(akk * rows[i][j] - aik * rows[k][j]) / prev if j > k else rows[i][j] * 0
                       for j in range(n + 1)]
        prev = akk
    x: list[RatFunc] = [None] * n
    for i in range(n - 1, -1, -1):
        acc = RatFunc(rows[i][n])
        for j in range(i + 1, n):
            if not rows[i][j].is_zero():
                acc = acc - RatFunc(rows[i][j]) * x[j]
        x[i] = acc / RatFunc(rows[i][i])
    return x


def alg_inverse(a: AlgElem) -> AlgElem:
    """b with a*b = 1, by solving mult_matrix(a) b = e_0 over E."""
    alg = a.alg
    if a.is_zero():
        raise NotInvertibleError("inverse of zero")
    if a.is_scalar():
        return AlgElem(alg, [a.coeffs[0].inverse()] + list(a.coeffs[1:]))
    rhs = [RatFunc.const(int(k == 0), alg.n) for k in range(alg.dim)]
    try:
        sol = _solve_fraction_free(mult_matrix(a), rhs)
    except ZeroDivisionError:
        raise NotInvertibleError(f"{a!r} is a zero divisor") from None
    return AlgElem(alg, sol)


# --- evaluation of E -> F ------------------------------------------------------

def _eval_poly_in(alg: QuotAlgebra, f, images: Mapping[int, AlgElem]) -> AlgElem:
    R = f.context()
    names = R.names()
    cache: dict[tuple[int, int], AlgElem] = {}

    def power(i: int, e: int) -> AlgElem:
        if (i, e) not in cache:
            cache[(i, e)] = images[i] if e == 1 else power(i, e - 1) * images[i]
        return cache[(i, e)]

    total = None
    for exps, c in f.terms():
        scalar_part = R.constant(c)
        elem = None
        for i, e in enumerate(exps):
            if not e:
                continue
            if i in images:
                elem = power(i, e) if elem is None else elem * power(i, e)
            else:
                scalar_part *= R.gen(i) ** e
        s = RatFunc(scalar_part)
        term = alg.scalar(s) if elem is None else elem * s
        total = term if total is None else total + term
    return total if total is not None else alg.zero()


def evaluate_in_algebra(f: RatFunc, assignment: Mapping[str, AlgElem]) -> AlgElem:
    """Image of f under the ring map E -> F sending variables to the given elements.

    Unassigned variables go to themselves through the structural inclusion.
    """
    algs = {id(v.alg): v.alg for v in assignment.values() if isinstance(v, AlgElem)}
    if len(algs) != 1:
        raise AlgebraMismatchError("all images must lie in one algebra")
    alg = next(iter(algs.values()))
    names = f.ctx.names()
    images = {}
    for name, img in assignment.items():
        idx = names.index(name)
        images[idx] = img if isinstance(img, AlgElem) else alg.scalar(img)
    num = _eval_poly_in(alg, f.num, images)
    if f.den.is_one():
        return num
    den = _eval_poly_in(alg, f.den, images)
    if den.is_scalar():
        if den.coeffs[0].is_zero():
            raise NotInvertibleError(f"denominator of {f} maps to 0")
        return num * den.coeffs[0].inverse()
    return num * alg_inverse(den)


@dataclass
class Correspondence:
    """Gamma = (Spec F, pi, phi) with pi the inclusion E -> F and phi(x_kl) = phi_images[k][l]."""

    algebra: QuotAlgebra
    phi_images: list[list[AlgElem]]
    label: str
    kind: str = "custom"
    p: Optional[int] = None
    barred: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.phi_images)

    @property
    def left_degree(self) -> int:
        return self.algebra.dim

    def assignment(self) -> dict[str, AlgElem]:
        names = P.matrix_vars(self.n)
        flat = [e for row in self.phi_images for e in row]
        return dict(zip(names, flat))

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "algebra": self.algebra.to_dict(),
            "phi_images": [[[str(c) for c in e.coeffs] for e in row] for row in self.phi_images],
        }


def phi_apply(G: Correspondence, f: RatFunc) -> AlgElem:
    if G.algebra.dim == 1:
        # trivial algebra: phi is an endomorphism of E
        images = {k: v.coeffs[0] for k, v in G.assignment().items()}
        return G.algebra.scalar(subst(f, images))
    return evaluate_in_algebra(f, G.assignment())


def gamma_star(G: Correspondence, f: RatFunc) -> RatFunc:
    """Gamma^* = tr_pi o phi."""
    return trace_pi(phi_apply(G, f))


def _fresh_names(existing: Sequence[str], names: Sequence[str]) -> list[str]:
    taken = set(existing)
    out = []
    for g in names:
        while g in taken:
            g = g + "'"
        taken.add(g)
        out.append(g)
    return out


def _push(G2: Correspondence, coeffs: Sequence[RatFunc]) -> tuple[RatFunc, ...]:
    """Map an element of F1 (coefficients in E) into F1 (x)_{E,phi2} F2."""
    out: list[RatFunc] = []
    for c in coeffs:
        out.extend(phi_apply(G2, c).coeffs)
    return tuple(out)


def compose_correspondences(G1: Correspondence, G2: Correspondence) -> Correspondence:
    """G1 o G2 in the convention (G1 o G2)^* = G2^* o G1^*.

    The algebra is F2[t(F1)] with F1's relation coefficients and phi-images pushed
    through phi2.
    """
    A1, A2 = G1.algebra, G2.algebra
    if G1.n != G2.n:
        raise AlgebraMismatchError("correspondences over different E")
    gens = list(A2.gens) + _fresh_names(A2.gens, A1.gens)
    degrees = list(A2.degrees) + list(A1.degrees)
    relations = [list(rel) for rel in A2.relations]
    for rel in A1.relations:
        relations.append([_push(G2, c) for c in rel])
    alg = QuotAlgebra(gens, degrees, relations, G1.n)
    images = [[AlgElem(alg, _push(G2, e.coeffs)) for e in row] for row in G1.phi_images]
    return Correspondence(alg, images, f"({G1.label})o({G2.label})", kind="composite")


def tensor_algebras(A: QuotAlgebra, B: QuotAlgebra) -> tuple[QuotAlgebra, callable, callable]:
    """A (x)_E B with its two embeddings."""
    dA = A.dim
    z = RatFunc.const(0, A.n)

    def spread(coeffs):
        out = []
        for c in coeffs:
            out.append(c)
            out.extend([z] * (dA - 1))
        return tuple(out)

    gens = list(A.gens) + _fresh_names(A.gens, B.gens)
    relations = [list(rel) for rel in A.relations] + [[spread(c) for c in rel] for rel in B.relations]
    T = QuotAlgebra(gens, list(A.degrees) + list(B.degrees), relations, A.n)

    def left(x: AlgElem) -> AlgElem:
        return T.embed(x.coeffs)

    def right(y: AlgElem) -> AlgElem:
        return T.embed(spread(y.coeffs))

    return T, left, right


@dataclass
class PsiReport:
    p: int
    p2: int
    dimension: int
    psi_plus_nonzero: bool
    psi_minus_nonzero: bool
    product_zero: bool
    cross_left: RatFunc
    cross_right: RatFunc
    twist_left: RatFunc
    twist_right: RatFunc
    expected: RatFunc

    @property
    def cross_terms_match(self) -> bool:
        return (self.cross_left == self.expected and self.cross_right == self.expected
                and self.twist_left == self.cross_left and self.twist_right == self.cross_right)

    @property
    def ok(self) -> bool:
        return (self.dimension == 16 and self.psi_plus_nonzero and self.psi_minus_nonzero
                and self.product_zero and self.cross_terms_match)


def psi_partial_commute_check(p: int, p2: int) -> PsiReport:
    """psi+ psi- = 0 with psi+, psi- != 0 in F_{pp'} (x)_E F_{p'p} for the split antisymmetric q."""
    from .chern import beta_p, build_antisym_gl2, det_twist

    if p == p2:
        raise ValueError("p and p' must differ")
    Gp, Gq = build_antisym_gl2(p), build_antisym_gl2(p2)
    F_pq = compose_correspondences(Gp, Gq).algebra  # F_{pp'}: t_{p'} then t_p
    F_qp = compose_correspondences(Gq, Gp).algebra  # F_{p'p}: t_p then t_{p'}
    T, left, right = tensor_algebras(F_pq, F_qp)
    tp, tq = f"t{p}", f"t{p2}"
    L = F_pq.gen(tp) * F_pq.gen(tq) ** p
    R = F_qp.gen(tq) * F_qp.gen(tp) ** p2
    psi_plus = left(L) + right(R)
    psi_minus = left(L) - right(R)
    product = psi_plus * psi_minus
    L2, R2 = L * L, R * R
    if not (L2.is_scalar() and R2.is_scalar()):
        raise AssertionError("squares of the twisted generators must lie in E")
    twist_left = phi_apply(Gq, beta_p(p)).coeffs[0] * beta_p(p2) ** p
    twist_right = phi_apply(Gp, beta_p(p2)).coeffs[0] * beta_p(p) ** p2
    expected = det_twist(p * p2)
    return PsiReport(
        p=p, p2=p2, dimension=T.dim,
        psi_plus_nonzero=not psi_plus.is_zero(),
        psi_minus_nonzero=not psi_minus.is_zero(),
        product_zero=product.is_zero(),
        cross_left=L2.coeffs[0], cross_right=R2.coeffs[0],
        twist_left=twist_left, twist_right=twist_right,
        expected=expected,
    )
