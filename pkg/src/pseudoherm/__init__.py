"""Spectral reality of non-Hermitian matrices through biorthonormal metrics."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConvergenceFailure,
    DefectiveMatrix,
    DimensionError,
    DimensionMismatch,
    ParseError,
    PseudoHermError,
    SingularMatrix,
    SingularMetric,
    SymmetryAbsent,
)
from .biorthonormal import BiorthonormalSystem, decompose, verify  # noqa: E402
from .metric import (  # noqa: E402
    Classification,
    MetricOperator,
    canonical_metric,
    diagnose,
    pseudo_hermiticity_residual,
    theorem_check,
)
from .antilinear import AntilinearOperator, exactness_implies_real, make_parity_time  # noqa: E402

__all__ = [
    "AntilinearOperator",
    "BiorthonormalSystem",
    "Classification",
    "ConvergenceFailure",
    "DefectiveMatrix",
    "DimensionError",
    "DimensionMismatch",
    "MetricOperator",
    "ParseError",
    "PseudoHermError",
    "SingularMatrix",
    "SingularMetric",
    "SymmetryAbsent",
    "canonical_metric",
    "decompose",
    "diagnose",
    "exactness_implies_real",
    "make_parity_time",
    "pseudo_hermiticity_residual",
    "theorem_check",
    "verify",
]
