"""Small dense matrices as nested lists over any commutative ring with + - *.

Sizes here are tiny (n <= 4, or n^2 <= 16 for Jordan maps), so cofactor expansion and
plain Gaussian elimination are adequate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
Matrix = list[list[T]]


def identity(n: int, one, zero) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    inner = len(B)
    cols = len(B[0])
    out = []
    for row in A:
        new_row = []
        for j in range(cols):
            acc = row[0] * B[0][j]
            for k in range(1, inner):
                acc = acc + row[k] * B[k][j]
            new_row.append(acc)
        out.append(new_row)
    return out


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in A]


def mat_map(A: Matrix, fn: Callable) -> Matrix:
    return [[fn(x) for x in row] for row in A]


def trace(A: Matrix):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def _minor(M: Matrix, i: int, j: int) -> Matrix:
    return [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]


def det(M: Matrix):
    """Determinant by cofactor expansion (division free)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = None
    for j in range(n):
        term = M[0][j] * det(_minor(M, 0, j))
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def adjugate(M: Matrix) -> Matrix:
    n = len(M)
    if n == 1:
        return [[M[0][0] * 0 + 1]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(_minor(M, i, j))
            out[j][i] = -c if (i + j) % 2 else c
    return out


def inverse(M: Matrix) -> Matrix:
    """Inverse over a field: adj(M)/det(M)."""
    d = det(M)
    inv_d = 1 / d
    return [[e * inv_d for e in row] for row in adjugate(M)]


def solve(A: Matrix, b: Sequence, is_zero: Callable = lambda v: v == 0):
    """Solve A x = b over a field by Gaussian elimination.

    Pivots are the first nonzero entry in each column; raises ZeroDivisionError when
    A is singular.
    """
    n = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(rows[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and not is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def charpoly(M: Matrix, one) -> list:
    """Coefficients c_0..c_n of det(lambda*1 - M), constant first (Faddeev-LeVerrier)."""
    n = len(M)
    zero = one * 0
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    Mk = identity(n, zero, zero)  # M_0 = 0
    for k in range(1, n + 1):
        AM = mat_mul(M, Mk)
        Mk = [[AM[i][j] + (coeffs[n - k + 1] if i == j else zero) for j in range(n)] for i in range(n)]
        AMk = mat_mul(M, Mk)
        coeffs[n - k] = trace(AMk) * Fraction(-1, k)
    return coeffs


def poly_mul_coeffs(f: Sequence, g: Sequence) -> list:
    """Product of two coefficient lists (constant first)."""
    zero = f[0] * 0
    out = [zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def det_elim(M: Matrix, is_zero: Callable = lambda v: v == 0):
    """Determinant over a field by Gaussian elimination; for sizes where cofactors blow up."""
    n = len(M)
    rows = [list(r) for r in M]
    sign = 1
    acc = None
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(rows[r][col])), None)
        if piv is None:
            return rows[0][0] * 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pv = rows[col][col]
        acc = pv if acc is None else acc * pv
        inv = 1 / pv
        for r in range(col + 1, n):
            if not is_zero(rows[r][col]):
                f = rows[r][col] * inv
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return acc if sign > 0 else -acc
