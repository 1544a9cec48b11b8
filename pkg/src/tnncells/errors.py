"""Exception types shared across the package."""

from __future__ import annotations


class RegistryMismatchError(ValueError):
    """Operands belong to different variable registries."""


class InexactDivisionError(ArithmeticError):
    """Exact division failed: the quotient is not in the ring."""


class SizeCapError(ValueError):
    """Requested problem size exceeds a supported cap."""


class NotTotallyNonnegativeError(ValueError):
    """A matrix required to be totally nonnegative has a negative minor."""

    def __init__(self, witness, value):
        super().__init__(
            f"matrix is not totally nonnegative: minor {witness} = {value}"
        )
        self.witness = witness
        self.value = value


class SelfCheckError(AssertionError):
    """Two independently computed quantities disagree.

    Never caused by bad input; raising this means a bug in the package.
    """
