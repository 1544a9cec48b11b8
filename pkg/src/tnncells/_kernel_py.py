"""Pure-Python arithmetic kernels.

Behavioral twin of the optional compiled module ``_kernel_c``; `kernel`
picks one of the two at import time.  Everything here is exact: integer
matrices use Python's arbitrary-precision ints, term maps carry Fraction
(or int) coefficients.
"""

from __future__ import annotations

from itertools import combinations


def term_map_mul(a: dict, b: dict) -> dict:
    """Product of two sparse exponent-vector -> coefficient maps.

    Keys are equal-length tuples of ints; zero coefficients are dropped so
    the result is normalized whenever the inputs are.
    """
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e)
            if c is None:
                out[e] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[e] = c
                else:
                    del out[e]
    return out


def det_bareiss_int(rows: list) -> int:
    """Determinant of a square integer matrix, fraction-free elimination.

    Row swaps supply pivots; every division is exact.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            ri = a[i]
            rk = a[k]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def all_minors_int(mat: list) -> dict:
    """Determinants of every nonempty square submatrix of an integer matrix.

    Returns {(rows, cols): det} with 0-based strictly increasing index
    tuples, filled in order of size so each first-row Laplace expansion
    reuses the size-(k-1) entries already present.
    """
    m = len(mat)
    p = len(mat[0]) if m else 0
    out: dict = {}
    for i in range(m):
        row = mat[i]
        for a in range(p):
            out[((i,), (a,))] = row[a]
    for k in range(2, min(m, p) + 1):
        for rows in combinations(range(m), k):
            rest = rows[1:]
            row0 = mat[rows[0]]
            for cols in combinations(range(p), k):
                acc = 0
                sign = 1
                for t in range(k):
                    x = row0[cols[t]]
                    if x:
                        sub = out[(rest, cols[:t] + cols[t + 1:])]
                        if sub:
                            acc += sign * x * sub
                    sign = -sign
                out[(rows, cols)] = acc
    return out
