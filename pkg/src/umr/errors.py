"""Exception taxonomy shared across the package."""

from __future__ import annotations


class UmrError(Exception):
    """Base class for every error raised by this package."""


class FormatError(UmrError):
    """Malformed text input (USPACE, UTREE, QPOINT, MENU or move list)."""


class SpaceValidationError(UmrError):
    """A distance matrix failed validation; ``labels`` names the witnesses."""

    def __init__(self, *labels: str):
        self.labels = labels
        super().__init__(" ".join((type(self).__name__,) + labels))


class EmptySpace(SpaceValidationError):
    pass


class DuplicateLabel(SpaceValidationError):
    pass


class AsymmetricMatrix(SpaceValidationError):
    pass


class NonzeroDiagonal(SpaceValidationError):
    pass


class NonpositiveOffDiagonal(SpaceValidationError):
    pass


class UltrametricViolation(SpaceValidationError):
    pass


class NonConvexOrder(UmrError):
    """A permutation left some metric ball non-contiguous."""


class InternalNonIntegerTau(UmrError):
    """Convex-order count not divisible by the isometry count: a bug, never
    a valid outcome."""


class BudgetExceeded(UmrError):
    """An exhaustive search ran past its coloring budget; no verdict."""

    def __init__(self, copies: int, colorings: int):
        self.copies = copies
        self.colorings = colorings
        super().__init__(f"budget exhausted after {colorings} colorings")


class OracleFailure(UmrError):
    """A witness oracle could not produce an ordered witness within budget."""


class DuplicatePoint(UmrError):
    """Two source points of a partial map coincide."""


class NotPartialIsometry(UmrError):
    """A pair of the partial map witnesses a distance mismatch."""

    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"distance mismatch on pair ({i}, {j})")


class NotOrderPreserving(UmrError):
    """A pair of the partial map witnesses an order reversal."""

    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"order mismatch on pair ({i}, {j})")
