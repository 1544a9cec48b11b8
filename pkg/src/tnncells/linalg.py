"""Exact matrices: fraction-free determinants, all-minors tables, rank.

Matrices are immutable tuples of row tuples with 1-based public indexing
handled by callers; everything here is 0-based.  Entries are either all
rational (int/Fraction) or all :class:`~tnncells.laurent.LaurentPoly`
over one registry.  Rational work is routed through the integer kernel
after clearing denominators row by row, which keeps the big-int fast path
in one place.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import kernel
from .errors import InexactDivisionError
from .laurent import LaurentPoly, laurent_div_exact

Matrix = tuple[tuple, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Validate and freeze a rectangular matrix, coercing scalar entries.

    int entries become Fraction; if any entry is a LaurentPoly, every
    scalar entry is lifted into its registry.
    """
    data = [list(r) for r in rows]
    if not data or not data[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise ValueError("ragged rows")
    registry = None
    for r in data:
        for x in r:
            if isinstance(x, LaurentPoly):
                registry = x.registry
                break
        if registry is not None:
            break
    out = []
    for r in data:
        row = []
        for x in r:
            if isinstance(x, LaurentPoly):
                row.append(x)
            elif registry is not None:
                row.append(registry.const(x))
            else:
                row.append(Fraction(x))
        out.append(tuple(row))
    return tuple(out)


def dims(M: Matrix) -> tuple[int, int]:
    return len(M), len(M[0])


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    ra, ca = dims(A)
    rb, cb = dims(B)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(ca)) for j in range(cb))
        for i in range(ra)
    )


def is_symbolic(M: Matrix) -> bool:
    return isinstance(M[0][0], LaurentPoly)


def submatrix(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """0-based row/column selection."""
    return tuple(tuple(M[i][j] for j in cols) for i in rows)


def _scaled_int_rows(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row by row; returns (int rows, positive scales)."""
    ints, scales = [], []
    for row in M:
        scale = 1
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        ints.append([int(x.numerator * (scale // x.denominator)) for x in row])
        scales.append(scale)
    return ints, scales


def det_exact(M: Matrix):
    """Exact determinant of a square matrix over either entry domain."""
    n, w = dims(M)
    if n != w:
        raise ValueError(f"matrix is {n}x{w}, not square")
    if is_symbolic(M):
        return _det_symbolic(M)
    ints, scales = _scaled_int_rows(M)
    return Fraction(kernel.det_bareiss_int(ints), math.prod(scales))


def _det_symbolic(M: Matrix) -> LaurentPoly:
    try:
        return _det_bareiss_symbolic(M)
    except InexactDivisionError:
        return _det_cofactor(M)


def _det_bareiss_symbolic(M: Matrix) -> LaurentPoly:
    a = [list(r) for r in M]
    n = len(a)
    zero = M[0][0].registry.zero()
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else laurent_div_exact(num, prev)
            a[i][k] = zero
        prev = pivot
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _det_cofactor(M: Matrix):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    cols = list(range(1, n))
    for t in range(n):
        x = M[0][t]
        if x:
            sub = submatrix(M, range(1, n), [c for c in range(n) if c != t])
            term = x * _det_cofactor(sub)
            if t % 2:
                term = -term
            total = term if total is None else total + term
    if total is None:
        return M[0][0].registry.zero() if isinstance(M[0][0], LaurentPoly) else Fraction(0)
    return total


def all_minors(M: Matrix) -> dict[tuple[tuple[int, ...], tuple[int, ...]], object]:
    """Every nonempty square-submatrix determinant, keyed 0-based."""
    if is_symbolic(M):
        return _all_minors_symbolic(M)
    ints, scales = _scaled_int_rows(M)
    raw = kernel.all_minors_int(ints)
    out = {}
    for (rows, cols), d in raw.items():
        denom = math.prod(scales[i] for i in rows)
        out[(rows, cols)] = Fraction(d, denom)
    return out


def _all_minors_symbolic(M: Matrix) -> dict:
    m, p = dims(M)
    out: dict = {}
    for i in range(m):
        for a in range(p):
            out[((i,), (a,))] = M[i][a]
    for k in range(2, min(m, p) + 1):
        for rows in combinations(range(m), k):
            rest = rows[1:]
            row0 = M[rows[0]]
            for cols in combinations(range(p), k):
                total = None
                for t in range(k):
                    x = row0[cols[t]]
                    if x:
                        term = x * out[(rest, cols[:t] + cols[t + 1:])]
                        if t % 2:
                            term = -term
                        total = term if total is None else total + term
                out[(rows, cols)] = total if total is not None else M[0][0].registry.zero()
    return out


def rank_exact(M: Matrix) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    if is_symbolic(M):
        raise TypeError("rank_exact is defined for rational matrices only")
    ints, _ = _scaled_int_rows(M)
    return _rank_int(ints)


def _rank_int(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0])
    rank = 0
    prev = 1
    while rank < m and rank < n:
        # full pivot search in the trailing submatrix
        pr = pc = -1
        for i in range(rank, m):
            for j in range(rank, n):
                if a[i][j]:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        if pr != rank:
            a[rank], a[pr] = a[pr], a[rank]
        if pc != rank:
            for row in a:
                row[rank], row[pc] = row[pc], row[rank]
        pivot = a[rank][rank]
        for i in range(rank + 1, m):
            air = a[i][rank]
            for j in range(rank + 1, n):
                a[i][j] = (pivot * a[i][j] - air * a[rank][j]) // prev
            a[i][rank] = 0
        prev = pivot
        rank += 1
    return rank
