"""Exception hierarchy shared by every scatterlab module."""


class ScatterLabError(Exception):
    """Base class for all domain errors raised by scatterlab."""


class NonCanonicalOrdinal(ScatterLabError, ValueError):
    pass


class OrdinalParseError(ScatterLabError, ValueError):
    """Malformed ordinal literal; ``position`` is the 0-based offending column."""

    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class ZeroHasNoTrailingTerm(ScatterLabError, ValueError):
    pass


class PointOutsideSpace(ScatterLabError, ValueError):
    pass


class LevelOutOfRange(ScatterLabError, ValueError):
    pass


class SpaceMismatch(ScatterLabError, ValueError):
    pass


class EmptyPointSet(ScatterLabError, ValueError):
    pass


class UniverseMismatch(ScatterLabError, ValueError):
    pass


class SubsequenceTooLong(ScatterLabError, ValueError):
    pass


class FamilyFormatError(ScatterLabError, ValueError):
    pass


class ExtensionFailure(ScatterLabError):
    """A cell-splitting extension step could not be completed.

    ``reason`` is ``"insufficient_witnesses"`` or ``"cannot_separate"``;
    ``pattern`` and ``cell`` identify the offending Boolean cell.
    """

    def __init__(self, reason: str, pattern: tuple, cell, detail: str = "") -> None:
        msg = f"{reason}: cell {pattern} = {cell}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.reason = reason
        self.pattern = pattern
        self.cell = cell
