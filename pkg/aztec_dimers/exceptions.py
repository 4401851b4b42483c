"""
Oct-2026

Aztec diamond dimers for Django - exceptions.
"""


class AztecDimersError(Exception):
    """Base class of every domain error raised by aztec_dimers."""


class NotAdjacent(AztecDimersError):
    pass


class InvalidTiling(AztecDimersError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class TooLarge(AztecDimersError):
    pass


class Singular(AztecDimersError):
    pass


class TruncationTooShort(AztecDimersError):
    pass


class PrecisionExhausted(AztecDimersError):
    pass


class InvalidLine(AztecDimersError):
    pass


class OutOfRange(AztecDimersError):
    pass


class OutsideLiquidRegion(AztecDimersError):
    pass


class PoleOnContour(AztecDimersError):
    pass


class NotConverged(AztecDimersError):
    pass


class HeightInconsistency(AztecDimersError):
    """A tiling produced two different heights at one face. Always a bug."""


class ComputationError(AztecDimersError):
    pass


class TilingFileError(AztecDimersError):
    def __init__(self, line_number: int, message: str):
        super().__init__("line {line_number}: {message}".format(line_number=line_number, message=message))
        self.line_number = line_number
