"""Totally nonnegative matrices, their cells, and the diagram families.

A cell is the set of tnn matrices sharing one exact vanishing family.
`family_of_diagram` computes a diagram's family symbolically: put an
indeterminate at every white cell, zero at every black cell, restore, and
read off which minors of the result are identically zero.  `classify`
sends a tnn matrix to its cell by running the inverse algorithm and
reading the zero pattern, then cross-checks the family; `match_families`
pairs every diagram family with the equal permutation family.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinat import (
    CauchonDiagram,
    RestrictedPermutation,
    enumerate_diagrams,
    enumerate_restricted_perms,
)
from .errors import NotTotallyNonnegativeError, SelfCheckError
from .families import family_of_perm
from .laurent import VarRegistry
from .linalg import Matrix, as_matrix, dims
from .minors import MinorFamily, MinorId, all_minor_ids, all_minors_table, vanishing_family
from .restoration import delete_derivations, diagram_of_matrix, restore


@dataclass(frozen=True)
class TnnVerdict:
    """Outcome of the total-nonnegativity test."""

    is_tnn: bool
    witness: MinorId | None = None
    witness_value: Fraction | None = None


@dataclass(frozen=True)
class CellDescriptor:
    """A cell named by its diagram, with its family and, when requested,
    the restricted permutation carrying the equal family."""

    diagram: CauchonDiagram
    family: MinorFamily
    matched_perm: RestrictedPermutation | None = None


def is_tnn(X: Matrix) -> TnnVerdict:
    """Check every minor exactly; report the first negative one in
    canonical order."""
    X = as_matrix(X)
    m, p = dims(X)
    table = all_minors_table(X)
    for mid in all_minor_ids(m, p):
        value = table[mid]
        if value < 0:
            return TnnVerdict(False, mid, value)
    return TnnVerdict(True)


def symbolic_cauchon_matrix(C: CauchonDiagram) -> tuple[VarRegistry, Matrix]:
    """The generic matrix of the diagram: a fresh indeterminate at every
    white cell, zero at every black cell."""
    registry = VarRegistry.grid(C.m, C.p, skip=C.black_cells())
    rows = []
    for i in range(1, C.m + 1):
        row = []
        for a in range(1, C.p + 1):
            row.append(
                registry.zero() if C.is_black(i, a) else registry.var(i, a)
            )
        rows.append(tuple(row))
    return registry, tuple(rows)


@lru_cache(maxsize=None)
def family_of_diagram(C: CauchonDiagram) -> MinorFamily:
    """The minors vanishing identically on the restored generic matrix."""
    _, M = symbolic_cauchon_matrix(C)
    return vanishing_family(restore(M).final)


def random_cauchon_matrix(C: CauchonDiagram, seed: int) -> Matrix:
    """Random nonnegative matrix with the diagram's zero pattern: white
    cells get positive rationals with numerator and denominator up to
    2**32, black cells are zero.  Fully determined by the seed."""
    rng = random.Random(seed)
    rows = []
    for i in range(1, C.m + 1):
        row = []
        for a in range(1, C.p + 1):
            if C.is_black(i, a):
                row.append(Fraction(0))
            else:
                row.append(Fraction(rng.randint(1, 2**32), rng.randint(1, 2**32)))
        rows.append(tuple(row))
    return tuple(rows)


def classify(Xbar: Matrix, *, find_perm: bool = False) -> CellDescriptor:
    """Locate the cell of a tnn matrix.

    Runs the inverse algorithm, reads the zero pattern of the resulting
    matrix as a diagram, and attaches the diagram's family - which must
    equal the matrix's own vanishing family, or the package is broken.
    """
    Xbar = as_matrix(Xbar)
    verdict = is_tnn(Xbar)
    if not verdict.is_tnn:
        raise NotTotallyNonnegativeError(verdict.witness, verdict.witness_value)
    X = delete_derivations(Xbar).initial
    try:
        diagram = diagram_of_matrix(X)
    except ValueError as exc:
        raise SelfCheckError(
            f"inverse algorithm produced a non-diagram zero pattern: {exc}"
        ) from None
    family = family_of_diagram(diagram)
    observed = vanishing_family(Xbar)
    if observed != family:
        raise SelfCheckError(
            "vanishing family disagrees with the diagram family: "
            f"matrix has {sorted_text(observed)}, diagram gives {sorted_text(family)}"
        )
    matched = None
    if find_perm:
        matched = _perm_with_family(family)
    return CellDescriptor(diagram, family, matched)


def sorted_text(family: MinorFamily) -> str:
    return "{" + ", ".join(mid.text() for mid in family) + "}"


def _perm_with_family(family: MinorFamily) -> RestrictedPermutation:
    for w in enumerate_restricted_perms(family.m, family.p):
        if family_of_perm(w) == family:
            return w
    raise SelfCheckError(
        f"no restricted permutation carries the family {sorted_text(family)}"
    )


def match_families(m: int, p: int) -> list[CellDescriptor]:
    """Pair every diagram with the permutation carrying the same family.

    Asserts that the two family collections coincide and that families
    are pairwise distinct on each side; returns one descriptor per
    diagram, in diagram enumeration order.
    """
    by_perm: dict[MinorFamily, RestrictedPermutation] = {}
    for w in enumerate_restricted_perms(m, p):
        fam = family_of_perm(w)
        if fam in by_perm:
            raise SelfCheckError(
                f"permutations {by_perm[fam].w} and {w.w} share one family"
            )
        by_perm[fam] = w
    out = []
    seen: dict[MinorFamily, CauchonDiagram] = {}
    for C in enumerate_diagrams(m, p):
        fam = family_of_diagram(C)
        if fam in seen:
            raise SelfCheckError(
                f"diagrams {seen[fam]} and {C} share one family"
            )
        seen[fam] = C
        w = by_perm.pop(fam, None)
        if w is None:
            raise SelfCheckError(
                f"diagram family {sorted_text(fam)} has no matching permutation"
            )
        out.append(CellDescriptor(C, fam, w))
    if by_perm:
        fam = next(iter(by_perm))
        raise SelfCheckError(
            f"permutation family {sorted_text(fam)} has no matching diagram"
        )
    return out
