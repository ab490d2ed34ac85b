"""Exception types raised across the package."""


class SeasonalityError(Exception):
    """Base class for data and computation errors.

    ``stage`` is filled in by :func:`fluctseason.detect.analyze` to say which
    pipeline step failed.
    """

    stage = None

    def __str__(self):
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {msg}"
        return msg


class EmptySeries(SeasonalityError):
    pass


class NonFiniteValue(SeasonalityError):
    def __init__(self, index):
        super().__init__(f"non-finite value at index {index}")
        self.index = index


class WindowTooLarge(SeasonalityError):
    def __init__(self, window, length):
        super().__init__(f"window {window} exceeds series length {length}")
        self.window = window
        self.length = length


class AllUndefined(SeasonalityError):
    pass


class InsufficientData(SeasonalityError):
    pass


class ZeroDispersion(SeasonalityError):
    pass


class NoDefinedRegion(SeasonalityError):
    pass


class ParseError(SeasonalityError):
    def __init__(self, row, column, reason):
        super().__init__(f"row {row}, column {column}: {reason}")
        self.row = row
        self.column = column
        self.reason = reason


class MissingValue(SeasonalityError):
    def __init__(self, row):
        super().__init__(f"missing value at row {row}")
        self.row = row


class EmptyFile(SeasonalityError):
    pass


class UniformityWarning(UserWarning):
    """Index column of an input file is not uniformly spaced."""
