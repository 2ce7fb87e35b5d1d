"""Exception hierarchy shared by every module."""


class PseudoHermError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(PseudoHermError, ValueError):
    """Operand shapes are incompatible."""


class SingularMatrix(PseudoHermError, ArithmeticError):
    """A pivot fell below the singularity threshold."""


class ConvergenceFailure(PseudoHermError, ArithmeticError):
    """The eigensolver did not reach the requested residual."""


class DefectiveMatrix(PseudoHermError, ArithmeticError):
    """The matrix does not admit a complete biorthonormal eigensystem."""


class SingularMetric(PseudoHermError, ArithmeticError):
    """A metric operator failed its invertibility check."""


class SymmetryAbsent(PseudoHermError, ValueError):
    """The Hamiltonian does not commute with the given antilinear operator."""


class ParseError(PseudoHermError, ValueError):
    """A matrix or model file is malformed."""


class DimensionError(ParseError):
    """A matrix file declares a shape its entries do not fill."""
