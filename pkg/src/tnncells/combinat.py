"""Cauchon diagrams, restricted permutations, Bruhat and index-set orders.

Diagrams are m x p black/white grids in which every black cell has either
all cells strictly to its left black or all cells strictly above it
black.  Restricted permutations are the w in S_{m+p} with
-p <= w(i) - i <= m; there are exactly as many of them as diagrams, which
the verification suites check by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import SizeCapError

MAX_GRID_CELLS = 64  # diagrams are stored as 64-bit row-major masks


def _check_grid(m: int, p: int) -> None:
    if m < 1 or p < 1:
        raise ValueError("grid dimensions must be positive")
    if m * p > MAX_GRID_CELLS:
        raise SizeCapError(f"{m}x{p} grid exceeds the {MAX_GRID_CELLS}-cell cap")


def _mask_is_cauchon(m: int, p: int, mask: int) -> bool:
    for i in range(1, m + 1):
        row = (mask >> ((i - 1) * p)) & ((1 << p) - 1)
        for a in range(1, p + 1):
            if not row >> (a - 1) & 1:
                continue
            left_full = row & ((1 << (a - 1)) - 1) == (1 << (a - 1)) - 1
            if left_full:
                continue
            above_full = all(mask >> ((k - 1) * p + a - 1) & 1 for k in range(1, i))
            if not above_full:
                return False
    return True


@dataclass(frozen=True, order=True)
class CauchonDiagram:
    """An m x p diagram as a row-major bitmask (set bit = black cell)."""

    m: int
    p: int
    mask: int

    def __post_init__(self) -> None:
        _check_grid(self.m, self.p)
        if not 0 <= self.mask < (1 << (self.m * self.p)):
            raise ValueError("mask out of range for the grid")
        if not _mask_is_cauchon(self.m, self.p, self.mask):
            raise ValueError("black cells violate the left-or-above condition")

    @classmethod
    def from_black(
        cls, m: int, p: int, black: Iterable[tuple[int, int]]
    ) -> "CauchonDiagram":
        _check_grid(m, p)
        mask = 0
        for i, a in black:
            if not (1 <= i <= m and 1 <= a <= p):
                raise ValueError(f"cell {(i, a)} outside the {m}x{p} grid")
            mask |= 1 << ((i - 1) * p + (a - 1))
        return cls(m, p, mask)

    def is_black(self, i: int, a: int) -> bool:
        if not (1 <= i <= self.m and 1 <= a <= self.p):
            raise ValueError(f"cell {(i, a)} outside the {self.m}x{self.p} grid")
        return bool(self.mask >> ((i - 1) * self.p + (a - 1)) & 1)

    def black_cells(self) -> tuple[tuple[int, int], ...]:
        """Black cells in row-major order."""
        return tuple(
            (i, a)
            for i in range(1, self.m + 1)
            for a in range(1, self.p + 1)
            if self.mask >> ((i - 1) * self.p + (a - 1)) & 1
        )

    def white_cells(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, a)
            for i in range(1, self.m + 1)
            for a in range(1, self.p + 1)
            if not self.mask >> ((i - 1) * self.p + (a - 1)) & 1
        )

    def to_json_obj(self) -> dict:
        return {"m": self.m, "p": self.p, "black": [[i, a] for i, a in self.black_cells()]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CauchonDiagram":
        return cls.from_black(obj["m"], obj["p"], [tuple(c) for c in obj["black"]])


def is_cauchon(m: int, p: int, black: Iterable[tuple[int, int]]) -> bool:
    """Does this black set satisfy the left-or-above diagram condition?"""
    _check_grid(m, p)
    mask = 0
    for i, a in black:
        if not (1 <= i <= m and 1 <= a <= p):
            raise ValueError(f"cell {(i, a)} outside the {m}x{p} grid")
        mask |= 1 << ((i - 1) * p + (a - 1))
    return _mask_is_cauchon(m, p, mask)


def enumerate_diagrams(m: int, p: int) -> Iterator[CauchonDiagram]:
    """All m x p diagrams, ascending by row-major bitmask."""
    _check_grid(m, p)
    for mask in range(1 << (m * p)):
        if _mask_is_cauchon(m, p, mask):
            yield CauchonDiagram(m, p, mask)


def count_diagrams(m: int, p: int) -> int:
    return sum(1 for _ in enumerate_diagrams(m, p))


def random_diagram(m: int, p: int, rng) -> CauchonDiagram:
    """Uniform random diagram by rejection sampling of bitmasks."""
    _check_grid(m, p)
    cells = m * p
    while True:
        mask = rng.getrandbits(cells)
        if _mask_is_cauchon(m, p, mask):
            return CauchonDiagram(m, p, mask)


@dataclass(frozen=True, order=True)
class RestrictedPermutation:
    """w in S_{m+p} with -p <= w(i) - i <= m, in one-line notation."""

    m: int
    p: int
    w: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1 or self.p < 1:
            raise ValueError("m and p must be positive")
        n = self.m + self.p
        if sorted(self.w) != list(range(1, n + 1)):
            raise ValueError(f"{self.w} is not a permutation of 1..{n}")
        for j, v in enumerate(self.w, start=1):
            if not -self.p <= v - j <= self.m:
                raise ValueError(
                    f"w({j}) = {v} violates the shift bounds -{self.p} <= w(i)-i <= {self.m}"
                )

    @property
    def n(self) -> int:
        return self.m + self.p

    def __call__(self, j: int) -> int:
        return self.w[j - 1]

    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for j, v in enumerate(self.w, start=1):
            inv[v - 1] = j
        return tuple(inv)

    def to_json_obj(self) -> dict:
        return {"m": self.m, "p": self.p, "w": list(self.w)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RestrictedPermutation":
        return cls(obj["m"], obj["p"], tuple(obj["w"]))


def w_max(m: int, p: int) -> RestrictedPermutation:
    """The Bruhat-maximal restricted permutation [m+1, ..., m+p, 1, ..., m]."""
    return RestrictedPermutation(
        m, p, tuple(range(m + 1, m + p + 1)) + tuple(range(1, m + 1))
    )


def enumerate_restricted_perms(m: int, p: int) -> Iterator[RestrictedPermutation]:
    """All restricted permutations in ascending one-line (lex) order."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be positive")
    n = m + p
    used = [False] * (n + 1)
    line: list[int] = []

    def extend(j: int) -> Iterator[RestrictedPermutation]:
        if j > n:
            yield RestrictedPermutation(m, p, tuple(line))
            return
        for v in range(max(1, j - p), min(n, j + m) + 1):
            if not used[v]:
                used[v] = True
                line.append(v)
                yield from extend(j + 1)
                line.pop()
                used[v] = False

    yield from extend(1)


def count_restricted_perms(m: int, p: int) -> int:
    return sum(1 for _ in enumerate_restricted_perms(m, p))


def _one_line(w) -> tuple[int, ...]:
    if isinstance(w, RestrictedPermutation):
        return w.w
    return tuple(w)


def bruhat_leq(w, z) -> bool:
    """Bruhat order via the rank-matrix (dominance) criterion.

    w <= z iff for all (i, j): #{k <= j : w(k) >= i} <= #{k <= j : z(k) >= i}.
    """
    wt = _one_line(w)
    zt = _one_line(z)
    n = len(wt)
    if len(zt) != n:
        raise ValueError("permutations act on different sets")
    for i in range(1, n + 1):
        cw = cz = 0
        for j in range(n):
            if wt[j] >= i:
                cw += 1
            if zt[j] >= i:
                cz += 1
            if cw > cz:
                return False
    return True


def longest_element(n: int) -> tuple[int, ...]:
    """One-line form of the order-reversing permutation [n, n-1, ..., 1]."""
    return tuple(range(n, 0, -1))


def compose(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """(u . v)(j) = u(v(j)), one-line forms."""
    return tuple(u[v[j] - 1] for j in range(len(v)))


@dataclass(frozen=True)
class BlockDecomposition:
    """The four blocks of an (m+p) x (m+p) permutation matrix split after
    row m and column p; entries are 0/1, matrix convention P[i][j] = 1 iff
    w(j) = i."""

    w11: tuple[tuple[int, ...], ...]  # m x p
    w12: tuple[tuple[int, ...], ...]  # m x m
    w21: tuple[tuple[int, ...], ...]  # p x p
    w22: tuple[tuple[int, ...], ...]  # p x m


def block_decompose(w, m: int, p: int) -> BlockDecomposition:
    line = _one_line(w)
    if len(line) != m + p:
        raise ValueError("permutation size does not match m + p")
    w11 = tuple(
        tuple(1 if line[a - 1] == i else 0 for a in range(1, p + 1))
        for i in range(1, m + 1)
    )
    w12 = tuple(
        tuple(1 if line[p + j - 1] == i else 0 for j in range(1, m + 1))
        for i in range(1, m + 1)
    )
    w21 = tuple(
        tuple(1 if line[a - 1] == m + c else 0 for a in range(1, p + 1))
        for c in range(1, p + 1)
    )
    w22 = tuple(
        tuple(1 if line[p + j - 1] == m + c else 0 for j in range(1, m + 1))
        for c in range(1, p + 1)
    )
    return BlockDecomposition(w11, w12, w21, w22)


def as_index_set(values: Iterable[int]) -> tuple[int, ...]:
    """Sorted tuple of distinct positive integers."""
    vals = [int(v) for v in values]
    out = tuple(sorted(set(vals)))
    if len(out) != len(vals):
        raise ValueError("duplicate indices")
    if out and out[0] < 1:
        raise ValueError("indices must be positive")
    return out


def index_set_leq(I: Iterable[int], J: Iterable[int]) -> bool:
    """Componentwise order after ascending sort; sizes must agree."""
    a = sorted(I)
    b = sorted(J)
    if len(a) != len(b):
        raise ValueError("index sets of different cardinality are incomparable")
    return all(x <= y for x, y in zip(a, b))
