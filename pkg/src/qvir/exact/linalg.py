"""Exact dense linear algebra over any field of domain elements.

Elimination follows Bareiss' fraction-free scheme: every division is by
the previous pivot and is exact, so entries stay minors of the input and
do not swell.
"""
from __future__ import annotations


class SingularMatrixError(ArithmeticError):
    pass


def _is_zero(x) -> bool:
    return x == 0


def det(M, one=1):
    """Determinant by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return one
    A = [list(row) for row in M]
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(A[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(A[i][k]):
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return one * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def solve(M, b):
    """Solve M x = b for square nonsingular M."""
    n = len(M)
    A = [list(M[i]) + [b[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        if _is_zero(A[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(A[i][k]):
                    A[k], A[i] = A[i], A[k]
                    break
            else:
                raise SingularMatrixError(f"singular matrix at column {k}")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) / prev
            A[i][k] = A[i][k] * 0
        prev = A[k][k]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = A[i][n]
        for j in range(i + 1, n):
            acc = acc - A[i][j] * x[j]
        x[i] = acc / A[i][i]
    return x


def nullspace(M, ncols: int | None = None):
    """Basis of {x : M x = 0} from the reduced row echelon form."""
    rows = [list(r) for r in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * ncols
        vec[fcol] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fcol]
        basis.append(vec)
    return basis


def matvec(M, x):
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, x):
            if not _is_zero(a) and not _is_zero(b):
                acc = acc + a * b
        out.append(acc)
    return out


def vecmat(x, M):
    ncols = len(M[0]) if M else 0
    out = [0] * ncols
    for a, row in zip(x, M):
        if _is_zero(a):
            continue
        for j, b in enumerate(row):
            if not _is_zero(b):
                out[j] = out[j] + a * b
    return out


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def is_symmetric(M) -> bool:
    n = len(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n))
