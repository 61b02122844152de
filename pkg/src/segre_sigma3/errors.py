"""Exception hierarchy shared by every module."""


class Sigma3Error(Exception):
    """Base class for all library errors."""


class ShapeError(Sigma3Error, ValueError):
    """Dimensions or mode indices are inconsistent."""


class ContractError(Sigma3Error, ValueError):
    """A documented precondition of an operation does not hold."""


class UnsupportedError(Sigma3Error, ValueError):
    """The input lies outside the formats an operation handles."""


class DegenerateInputError(Sigma3Error, ValueError):
    """The input is degenerate (e.g. the zero tensor) where that is undefined."""


class TensorFileError(Sigma3Error, ValueError):
    """A tensor or form file is malformed."""
