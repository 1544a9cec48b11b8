"""Vanishing families attached to restricted permutations.

`family_of_perm` evaluates four combinatorial conditions per minor; a
minor belongs to the family when at least one holds.  Conditions 1 and 2
quantify over index sets carried through the permutation's blocks,
conditions 3 and 4 are interval-counting ("stripe") conditions that
depend only on the column set, respectively the row set.

`bruhat_cell_vanishes` and `closure_rank_conditions_hold` realize the
same vanishing data through partial permutations and rank inequalities;
they exist as independent cross-checking oracles for the test suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from fractions import Fraction

from . import linalg
from .combinat import (
    RestrictedPermutation,
    block_decompose,
    index_set_leq,
)
from .minors import MinorFamily, MinorId, all_minor_ids


@dataclass(frozen=True)
class PartialPermutation:
    """A partial injection from columns to rows, as sorted (col, row) pairs."""

    size_rows: int
    size_cols: int
    assignment: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        cols = [c for c, _ in self.assignment]
        rows = [r for _, r in self.assignment]
        if cols != sorted(set(cols)):
            raise ValueError("assignment must be sorted by column, no duplicates")
        if len(set(rows)) != len(rows):
            raise ValueError("not injective")
        for c, r in self.assignment:
            if not (1 <= c <= self.size_cols and 1 <= r <= self.size_rows):
                raise ValueError(f"pair {(c, r)} out of range")

    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence[int]]) -> "PartialPermutation":
        """Read a 0/1 matrix with at most one 1 per row and per column."""
        nr = len(mat)
        nc = len(mat[0])
        pairs = []
        for c in range(1, nc + 1):
            hits = [r for r in range(1, nr + 1) if mat[r - 1][c - 1]]
            if len(hits) > 1:
                raise ValueError(f"column {c} has several nonzero entries")
            if hits:
                pairs.append((c, hits[0]))
        return cls(nr, nc, tuple(pairs))

    @property
    def rank(self) -> int:
        return len(self.assignment)

    def domain(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.assignment)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(r for _, r in self.assignment))

    def apply(self, col: int) -> int | None:
        for c, r in self.assignment:
            if c == col:
                return r
        return None

    def preimage(self, row: int) -> int | None:
        for c, r in self.assignment:
            if r == row:
                return c
        return None

    def to_matrix(self) -> tuple[tuple[int, ...], ...]:
        """0/1 matrix of shape size_rows x size_cols."""
        hits = {(r, c) for c, r in self.assignment}
        return tuple(
            tuple(1 if (i, c) in hits else 0 for c in range(1, self.size_cols + 1))
            for i in range(1, self.size_rows + 1)
        )


def enumerate_partial_permutations(
    size_rows: int, size_cols: int
) -> Iterable[PartialPermutation]:
    """Every partial injection from columns into rows, including the empty
    one."""
    from itertools import permutations

    cols = range(1, size_cols + 1)
    rows = range(1, size_rows + 1)
    for k in range(0, min(size_rows, size_cols) + 1):
        for dom in combinations(cols, k):
            for img in permutations(rows, k):
                yield PartialPermutation(
                    size_rows, size_cols, tuple(zip(dom, img))
                )


def _bounded_subsets(
    pool: Sequence[int], k: int, bound: Sequence[int]
) -> Iterable[tuple[int, ...]]:
    """Size-k subsets L of pool (ascending) with L <= bound componentwise."""
    for L in combinations(sorted(pool), k):
        if all(l <= b for l, b in zip(L, bound)):
            yield L


def bruhat_cell_vanishes(
    w: PartialPermutation, mid: MinorId, sign: str = "plus", *, via_inverse: bool = False
) -> bool:
    """Does the minor vanish identically on the (signed) triangular sweep
    of the partial permutation matrix?

    plus: no L inside the domain with L <= cols maps onto a row set
    dominating rows.  minus: the mirrored condition with rows and the
    inverse map.  `via_inverse` evaluates the plus condition through the
    inverse assignment instead; both formulations must always agree.
    """
    rows, cols = mid.rows, mid.cols
    k = len(rows)
    if sign == "plus":
        if via_inverse:
            for L2 in combinations(w.image(), k):
                if all(x >= y for x, y in zip(L2, rows)):
                    pre = sorted(w.preimage(r) for r in L2)
                    if index_set_leq(pre, cols):
                        return False
            return True
        for L in _bounded_subsets(w.domain(), k, cols):
            img = sorted(w.apply(c) for c in L)
            if index_set_leq(rows, img):
                return False
        return True
    if sign == "minus":
        if via_inverse:
            raise ValueError("via_inverse is defined for the plus form only")
        for L in _bounded_subsets(w.image(), k, rows):
            pre = sorted(w.preimage(r) for r in L)
            if index_set_leq(cols, pre):
                return False
        return True
    raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")


# -- the four membership conditions ----------------------------------------


def condition_flags(
    w: RestrictedPermutation, mid: MinorId
) -> tuple[bool, bool, bool, bool]:
    """Which of the four membership conditions hold for this minor."""
    ctx = _PermContext(w)
    return (
        ctx.cond1(mid.rows, mid.cols),
        ctx.cond2(mid.rows, mid.cols),
        ctx.cond3(mid.cols),
        ctx.cond4(mid.rows),
    )


class _PermContext:
    """Pools and images shared by all minors of one permutation."""

    def __init__(self, w: RestrictedPermutation):
        self.m, self.p = w.m, w.p
        self.n = w.n
        line = w.w
        m, p, n = self.m, self.p, self.n
        # columns a of the left block whose image stays in the top rows
        self.pool_rows = tuple(a for a in range(1, p + 1) if line[a - 1] <= m)
        self.img_rows = {a: m + 1 - line[a - 1] for a in self.pool_rows}
        # reversed positions l whose image lands in the bottom rows
        self.pool_cols = tuple(
            l for l in range(1, m + 1) if line[n - l] >= m + 1
        )
        self.img_cols = {l: line[n - l] for l in self.pool_cols}
        self.line = line

    def cond1(self, rows, cols) -> bool:
        k = len(rows)
        for L in _bounded_subsets(self.pool_rows, k, cols):
            img = sorted(self.img_rows[a] for a in L)
            if index_set_leq(rows, img):
                return False
        return True

    def cond2(self, rows, cols) -> bool:
        k = len(cols)
        shifted = [self.m + c for c in cols]
        for L in _bounded_subsets(self.pool_cols, k, rows):
            img = sorted(self.img_cols[l] for l in L)
            if index_set_leq(shifted, img):
                return False
        return True

    def cond3(self, cols) -> bool:
        m, p, line = self.m, self.p, self.line
        for r in range(1, p + 1):
            inside = 0
            free = 0
            for s in range(r, p + 1):
                if s in cols:
                    inside += 1
                # recompute the escape count for the widened window [r, s]
                free = sum(
                    1
                    for a in range(r, s + 1)
                    if not (m + r <= line[a - 1] <= m + s)
                )
                if inside > free:
                    return True
        return False

    def cond4(self, rows) -> bool:
        m, n, line = self.m, self.n, self.line
        for r in range(1, m + 1):
            for s in range(r, m + 1):
                inside = sum(1 for i in rows if r <= i <= s)
                free = sum(
                    1
                    for j in range(n + 1 - s, n + 2 - r)
                    if not (m + 1 - s <= line[j - 1] <= m + 1 - r)
                )
                if inside > free:
                    return True
        return False


def stripe_column_sets(w: RestrictedPermutation) -> list[tuple[int, ...]]:
    """Nonempty column sets pulled in by the interval condition alone."""
    ctx = _PermContext(w)
    out = []
    for k in range(1, w.p + 1):
        for cols in combinations(range(1, w.p + 1), k):
            if ctx.cond3(cols):
                out.append(cols)
    return out


def stripe_row_sets(w: RestrictedPermutation) -> list[tuple[int, ...]]:
    """Nonempty row sets pulled in by the interval condition alone."""
    ctx = _PermContext(w)
    out = []
    for k in range(1, w.m + 1):
        for rows in combinations(range(1, w.m + 1), k):
            if ctx.cond4(rows):
                out.append(rows)
    return out


def family_of_perm(w: RestrictedPermutation) -> MinorFamily:
    """All minors satisfying at least one of the four conditions."""
    ctx = _PermContext(w)
    members = []
    for mid in all_minor_ids(w.m, w.p):
        if (
            ctx.cond3(mid.cols)
            or ctx.cond4(mid.rows)
            or ctx.cond1(mid.rows, mid.cols)
            or ctx.cond2(mid.rows, mid.cols)
        ):
            members.append(mid)
    return MinorFamily.of(w.m, w.p, members)


# -- rank-condition oracle ---------------------------------------------------


def _ones_in(block, rows: range, cols: range) -> int:
    return sum(block[i - 1][a - 1] for i in rows for a in cols)


def closure_rank_conditions_hold(w: RestrictedPermutation, x: linalg.Matrix) -> bool:
    """Do all four families of rank inequalities hold for the matrix x?

    The right-hand bounds come from the blocks of the permutation matrix;
    block slices are partial permutation matrices, so their rank is their
    number of ones.
    """
    m, p = w.m, w.p
    mm, pp = linalg.dims(x)
    if (mm, pp) != (m, p):
        raise ValueError(f"matrix is {mm}x{pp}, expected {m}x{p}")
    blocks = block_decompose(w, m, p)
    rev_rows_11 = tuple(blocks.w11[m - i] for i in range(1, m + 1))  # flip rows
    w22t = tuple(tuple(blocks.w22[a - 1][i - 1] for a in range(1, p + 1)) for i in range(1, m + 1))
    rev_rows_22t = tuple(w22t[m - i] for i in range(1, m + 1))
    flip12 = tuple(
        tuple(blocks.w12[m - i][m - j] for j in range(1, m + 1)) for i in range(1, m + 1)
    )

    def xrank(rows: range, cols: range) -> int:
        sub = linalg.submatrix(x, [i - 1 for i in rows], [a - 1 for a in cols])
        return linalg.rank_exact(sub)

    for r in range(1, m + 1):
        for s in range(1, p + 1):
            if xrank(range(r, m + 1), range(1, s + 1)) > _ones_in(
                rev_rows_11, range(r, m + 1), range(1, s + 1)
            ):
                return False
            if xrank(range(1, r + 1), range(s, p + 1)) > _ones_in(
                rev_rows_22t, range(1, r + 1), range(s, p + 1)
            ):
                return False
    for r in range(1, p + 1):
        for s in range(r, p + 1):
            bound = s + 1 - r - _ones_in(blocks.w21, range(r, p + 1), range(r, s + 1))
            if xrank(range(1, m + 1), range(r, s + 1)) > bound:
                return False
    for r in range(1, m + 1):
        for s in range(r, m + 1):
            bound = s + 1 - r - _ones_in(flip12, range(r, s + 1), range(1, s + 1))
            if xrank(range(r, s + 1), range(1, p + 1)) > bound:
                return False
    return True


def witness_matrix(mid: MinorId, m: int, p: int) -> linalg.Matrix:
    """The 0/1 matrix with ones exactly at (rows[k], cols[k]); its minor
    [rows|cols] equals 1."""
    if mid.rows[-1] > m or mid.cols[-1] > p:
        raise ValueError(f"minor {mid} outside the {m}x{p} grid")
    ones = set(zip(mid.rows, mid.cols))
    return linalg.as_matrix(
        [
            [Fraction(1) if (i, a) in ones else Fraction(0) for a in range(1, p + 1)]
            for i in range(1, m + 1)
        ]
    )
