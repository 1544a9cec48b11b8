"""The restoration algorithm and its inverse, generic over the entry domain.

Steps are indexed by grid positions (j, b) running lexicographically from
(1,2) to (m,p), plus a final label (m, p+1); the matrix stored at a label
is the state *before* that step runs.  One step engine serves both
directions - they differ in a sign and in traversal order - and divisions
go through exact division, so a non-exact pivot division can never pass
silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .combinat import CauchonDiagram, is_cauchon
from .laurent import LaurentPoly, laurent_div_exact
from .linalg import Matrix, as_matrix, dims
from .minors import MinorId, all_minor_ids, all_minors_table

Step = tuple[int, int]


def step_sequence(m: int, p: int) -> list[Step]:
    """All step labels in order: (1,2) ... (m,p), then the final (m,p+1).

    The first grid cell (1,1) is skipped; for the labels the final state
    counts as position (m, p+1).
    """
    if m < 1 or p < 1:
        raise ValueError("grid dimensions must be positive")
    labels = [(j, b) for j in range(1, m + 1) for b in range(1, p + 1)]
    labels.remove((1, 1))
    labels.append((m, p + 1))
    return labels


def step_successor(m: int, p: int, r: Step) -> Step:
    seq = step_sequence(m, p)
    k = seq.index(r)
    if k + 1 == len(seq):
        raise ValueError(f"{r} is the final label and has no successor")
    return seq[k + 1]


def _quot(numer, denom):
    if isinstance(numer, LaurentPoly):
        return laurent_div_exact(numer, denom)
    return numer / denom


def _apply_step(X: Matrix, r: Step, direction: int) -> Matrix:
    X = as_matrix(X)
    m, p = dims(X)
    j, b = r
    if not (1 <= j <= m and 1 <= b <= p) or r == (1, 1):
        raise ValueError(f"{r} is not a pivot position for a {m}x{p} matrix")
    pivot = X[j - 1][b - 1]
    if not pivot:
        return X
    rows = []
    for i in range(1, m + 1):
        if i >= j:
            rows.append(X[i - 1])
            continue
        row = list(X[i - 1])
        for a in range(1, b):
            correction = _quot(X[i - 1][b - 1] * X[j - 1][a - 1], pivot)
            row[a - 1] = row[a - 1] + correction if direction > 0 else row[a - 1] - correction
        rows.append(tuple(row))
    return tuple(rows)


def restore_step(X: Matrix, r: Step) -> Matrix:
    """One forward step: entries above-left of the pivot gain the
    pivot-scaled rank-one correction; a zero pivot leaves X unchanged."""
    return _apply_step(X, r, +1)


def delete_step(X: Matrix, r: Step) -> Matrix:
    """The inverse step (subtraction form), keyed on the same pivot
    position read from its own input."""
    return _apply_step(X, r, -1)


@dataclass(frozen=True)
class MatrixTrace:
    """All intermediate matrices of one run, keyed by step label."""

    m: int
    p: int
    labels: tuple[Step, ...]
    matrices: tuple[Matrix, ...]

    def __getitem__(self, label: Step) -> Matrix:
        try:
            return self.matrices[self.labels.index(label)]
        except ValueError:
            raise KeyError(f"no matrix at label {label}") from None

    @property
    def initial(self) -> Matrix:
        return self.matrices[0]

    @property
    def final(self) -> Matrix:
        return self.matrices[-1]

    def items(self) -> Iterator[tuple[Step, Matrix]]:
        return iter(zip(self.labels, self.matrices))


def restore(X: Matrix) -> MatrixTrace:
    """Run all forward steps; the final matrix sits at label (m, p+1)."""
    X = as_matrix(X)
    m, p = dims(X)
    labels = step_sequence(m, p)
    mats = [X]
    for r in labels[:-1]:
        mats.append(restore_step(mats[-1], r))
    return MatrixTrace(m, p, tuple(labels), tuple(mats))


def delete_derivations(Xbar: Matrix) -> MatrixTrace:
    """Run all inverse steps from the final label back to (1,2)."""
    Xbar = as_matrix(Xbar)
    m, p = dims(Xbar)
    labels = step_sequence(m, p)
    mats = [Xbar]
    for r in reversed(labels[:-1]):
        mats.append(delete_step(mats[-1], r))
    mats.reverse()
    return MatrixTrace(m, p, tuple(labels), tuple(mats))


def zero_pattern(X: Matrix) -> frozenset[tuple[int, int]]:
    m, p = dims(X)
    return frozenset(
        (i, a) for i in range(1, m + 1) for a in range(1, p + 1) if not X[i - 1][a - 1]
    )


def is_cauchon_matrix(X: Matrix) -> bool:
    """Is the zero pattern of X a valid diagram?"""
    m, p = dims(X)
    return is_cauchon(m, p, zero_pattern(X))


def diagram_of_matrix(X: Matrix) -> CauchonDiagram:
    m, p = dims(X)
    return CauchonDiagram.from_black(m, p, zero_pattern(X))


def _minor_before(mid: MinorId, r: Step) -> bool:
    """Does the minor close strictly before position r (lexicographically,
    comparing its largest row and largest column)?"""
    return (mid.rows[-1], mid.cols[-1]) < r


def trace_h_invariance_counterexample(
    trace: MatrixTrace,
) -> tuple[Step, MinorId] | None:
    """First (step, minor) whose vanishing fails to propagate backward.

    For every non-final label r and minor closing strictly before r, a
    zero value at the successor label must force a zero value at r.
    """
    tables = [all_minors_table(mat) for mat in trace.matrices]
    ids = all_minor_ids(trace.m, trace.p)
    for k, r in enumerate(trace.labels[:-1]):
        now, nxt = tables[k], tables[k + 1]
        for mid in ids:
            if _minor_before(mid, r) and not nxt[mid] and now[mid]:
                return r, mid
    return None


def is_h_invariant(X: Matrix) -> bool:
    """Does minor vanishing propagate backward through every step?"""
    return trace_h_invariance_counterexample(restore(X)) is None
