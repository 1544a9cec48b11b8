# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels, behavioral twin of ``_kernel_py``.

Coefficients stay Python objects (Fractions and arbitrary-precision
ints), so the win here is loop and dispatch overhead, not machine
arithmetic; correctness is bit-identical to the pure module by
construction and by the equivalence tests.
"""

from itertools import combinations


def term_map_mul(a: dict, b: dict) -> dict:
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef Py_ssize_t n, i
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            e = tuple([ea[i] + eb[i] for i in range(n)])
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


def det_bareiss_int(rows: list):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t k, i, j, r
    cdef int sign = 1
    cdef list ri, rk
    if n == 0:
        return 1
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
    if sign > 0:
        return a[n - 1][n - 1]
    return -a[n - 1][n - 1]


def all_minors_int(mat: list) -> dict:
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t p = len(mat[0]) if m else 0
    cdef dict out = {}
    cdef Py_ssize_t i, a, k, t
    cdef tuple rows, cols, rest
    cdef list row, row0
    cdef int sign
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
                            if sign > 0:
                                acc += x * sub
                            else:
                                acc -= x * sub
                    sign = -sign
                out[(rows, cols)] = acc
    return out
