class ButsonError(Exception):
    """Base class for errors raised by this package."""


class ModulusMismatch(ButsonError, ValueError):
    pass


class NotCoprime(ButsonError, ValueError):
    pass


class MatrixFormatError(ButsonError, ValueError):
    pass


class BudgetExceeded(ButsonError, RuntimeError):
    """An enumeration would exceed its configured candidate budget."""


class ZeroFirstColumn(ButsonError, ValueError):
    """Every eigenvector has first coordinate zero, so no sequence exists."""


class PreconditionFailed(ButsonError, ValueError):
    pass
