"""Metric operators and the spectral-reality criterion.

With ``O = sum_n |psi_n><n|`` (so ``O = Psi`` in the coordinate basis),
``O^{-1} = Phi^dagger`` and ``O^{-1} H O = diag(E_n)``.  ``H`` has a real
spectrum exactly when ``H (O O^dagger) = (O O^dagger) H^dagger``.

Two faces of the same metric are exposed:

* :func:`canonical_metric` returns ``eta = (O O^dagger)^{-1} = Phi Phi^dagger``,
  which satisfies ``H^dagger = eta H eta^{-1}``.
* :func:`e4_residual` tests ``H = (O O^dagger) H^dagger (O O^dagger)^{-1}``
  through ``O O^dagger = Psi Psi^dagger``.

All equation checks are written without explicit inverses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .biorthonormal import BiorthonormalSystem, decompose
from .errors import DimensionMismatch, SingularMetric
from .linalg import (
    SINGULAR_PIVOT,
    _frozen,
    as_square,
    frobenius_norm,
    relative,
)

__all__ = [
    "CONVENTIONS",
    "DEFAULT_TOL",
    "Classification",
    "Definiteness",
    "MetricOperator",
    "SpectrumDiagnosis",
    "TheoremCheck",
    "build_O",
    "build_O_inverse",
    "canonical_metric",
    "conjugate_pairing",
    "diagnose",
    "diagnose_system",
    "e4_residual",
    "off_diagonal_norm",
    "pseudo_hermiticity_residual",
    "similarity_transform",
    "theorem_check",
    "theorem_check_system",
]

DEFAULT_TOL = 1e-8

CONVENTIONS = (
    "eta = (O O^dagger)^-1 = Phi Phi^dagger, checked as H^dagger eta = eta H; "
    "e4 residual = ||H (O O^dagger) - (O O^dagger) H^dagger||_F / (||O O^dagger||_F ||H||_F) "
    "with O O^dagger = Psi Psi^dagger; basis |n> = coordinate basis in eigenvalue order"
)


class Definiteness(str, enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    INDEFINITE = "Indefinite"
    UNKNOWN = "Unknown"


class Classification(str, enum.Enum):
    ALL_REAL = "AllReal"
    CONJUGATE_PAIRED = "ConjugatePairedNotAllReal"
    STAR_VIOLATED = "StarViolated"


@dataclass(frozen=True)
class MetricOperator:
    """A candidate metric ``eta`` with its diagnostics.

    ``definiteness`` is ``Unknown`` when ``eta`` is not Hermitian to within
    ``1e-8 ||eta||_F``; otherwise it is read off the spectrum of the
    Hermitian part.  Anything short of positive definite is ``Indefinite``.
    """

    matrix: np.ndarray
    hermiticity_residual: float
    definiteness: Definiteness
    min_abs_eigenvalue: float

    @classmethod
    def from_matrix(cls, eta) -> "MetricOperator":
        """Classify ``eta``.

        Raises
        ------
        SingularMetric
            If the smallest eigenvalue modulus is not above ``1e-12 ||eta||_F``.
        """
        eta = as_square(eta)
        norm = frobenius_norm(eta)
        herm = frobenius_norm(eta - eta.conj().T)
        min_abs = float(np.min(np.abs(np.linalg.eigvals(eta))))
        threshold = SINGULAR_PIVOT * norm
        if not min_abs > threshold:
            raise SingularMetric(
                f"metric has eigenvalue of modulus {min_abs:.3e} <= {threshold:.3e}"
            )
        if herm > DEFAULT_TOL * norm:
            definiteness = Definiteness.UNKNOWN
        else:
            lo = float(np.linalg.eigvalsh((eta + eta.conj().T) / 2).min())
            definiteness = (
                Definiteness.POSITIVE_DEFINITE if lo > threshold else Definiteness.INDEFINITE
            )
        return cls(eta, herm, definiteness, min_abs)

    @property
    def is_invertible(self) -> bool:
        return self.min_abs_eigenvalue > SINGULAR_PIVOT * frobenius_norm(self.matrix)


def build_O(system: BiorthonormalSystem) -> np.ndarray:
    """``O = sum_n |psi_n><n|``; column ``k`` is ``psi_k``."""
    return _frozen(system.right)


def build_O_inverse(system: BiorthonormalSystem) -> np.ndarray:
    """``O^{-1} = sum_n |n><phi_n|``; row ``k`` is ``phi_k^dagger``."""
    return _frozen(system.left.conj().T)


def _check_dim(h, system):
    h = as_square(h)
    if h.shape[0] != system.dim:
        raise DimensionMismatch(f"matrix has dimension {h.shape[0]}, system {system.dim}")
    return h


def similarity_transform(h, system: BiorthonormalSystem) -> np.ndarray:
    """``O^{-1} H O``, diagonal with the system's eigenvalues on the diagonal."""
    h = _check_dim(h, system)
    return _frozen(build_O_inverse(system) @ h @ build_O(system))


def off_diagonal_norm(m) -> float:
    m = np.asarray(m)
    return frobenius_norm(m - np.diag(np.diag(m)))


def canonical_metric(system: BiorthonormalSystem) -> MetricOperator:
    """``eta = (O O^dagger)^{-1} = Phi Phi^dagger``.

    Hermitian and positive definite for any complete system.
    """
    phi = system.left
    return MetricOperator.from_matrix(phi @ phi.conj().T)


def pseudo_hermiticity_residual(h, eta: MetricOperator) -> float:
    """``||H^dagger eta - eta H||_F / (||eta||_F ||H||_F)``.

    Zero exactly when ``H^dagger = eta H eta^{-1}``.
    """
    h = as_square(h)
    m = np.asarray(eta.matrix)
    if m.shape != h.shape:
        raise DimensionMismatch(f"metric has shape {m.shape}, matrix {h.shape}")
    if not eta.is_invertible:
        raise SingularMetric("metric fails its invertibility check")
    return relative(
        frobenius_norm(h.conj().T @ m - m @ h), frobenius_norm(m) * frobenius_norm(h)
    )


def e4_residual(h, system: BiorthonormalSystem) -> float:
    """``||H G - G H^dagger||_F / (||G||_F ||H||_F)`` with ``G = O O^dagger``."""
    h = _check_dim(h, system)
    o = build_O(system)
    g = o @ o.conj().T
    return relative(
        frobenius_norm(h @ g - g @ h.conj().T), frobenius_norm(g) * frobenius_norm(h)
    )


def _max_imag_is_small(eigenvalues, tol):
    e = np.asarray(eigenvalues)
    max_imag = float(np.max(np.abs(e.imag)))
    return max_imag, max_imag <= tol * (1.0 + float(np.max(np.abs(e))))


@dataclass(frozen=True)
class TheoremCheck:
    spectrum_real: bool
    e4_residual: float
    agree: bool


def theorem_check(h, tol: float = DEFAULT_TOL) -> TheoremCheck:
    """Evaluate both sides of the reality criterion and whether they agree.

    ``spectrum_real`` is ``max|Im E_n| <= tol (1 + max|E_n|)``; the metric
    side holds when :func:`e4_residual` is at most ``tol``.

    Raises
    ------
    DefectiveMatrix
        If ``h`` has no complete biorthonormal system.
    """
    h = as_square(h)
    system = decompose(h, tol)
    return theorem_check_system(h, system, tol)


def theorem_check_system(h, system: BiorthonormalSystem, tol: float = DEFAULT_TOL) -> TheoremCheck:
    """As :func:`theorem_check`, for an already decomposed ``h``."""
    h = _check_dim(h, system)
    _, real = _max_imag_is_small(system.eigenvalues, tol)
    e4 = e4_residual(h, system)
    return TheoremCheck(real, e4, real == (e4 <= tol))


def conjugate_pairing(eigenvalues, tol: float = DEFAULT_TOL):
    """Group a spectrum into real singletons and complex-conjugate pairs.

    Eigenvalues with ``|Im l| <= tol (1 + |l|)`` are real singletons.  The
    rest are visited in order; each takes the unpaired partner ``j`` that
    minimises ``|l_i - conj(l_j)|`` (lowest index on ties) provided the
    distance is at most ``tol (1 + |l_i|)``.

    Returns
    -------
    groups : list of tuple
        ``(i,)`` for real singletons, ``(i, j)`` for pairs, and ``(i,)`` for
        unmatched eigenvalues too, in order of first index.
    unmatched : list of int
    """
    e = np.asarray(eigenvalues, dtype=np.complex128)
    is_real = np.abs(e.imag) <= tol * (1.0 + np.abs(e))
    taken = is_real.copy()
    groups = [(int(i),) for i in np.nonzero(is_real)[0]]
    unmatched = []
    for i in range(e.size):
        if taken[i]:
            continue
        taken[i] = True
        dist = np.where(taken, np.inf, np.abs(e[i] - e.conj()))
        j = int(np.argmin(dist)) if e.size else 0
        if dist[j] <= tol * (1.0 + abs(e[i])):
            taken[j] = True
            groups.append((i, j))
        else:
            unmatched.append(i)
            groups.append((i,))
    groups.sort(key=lambda g: g[0])
    return groups, unmatched


@dataclass(frozen=True)
class SpectrumDiagnosis:
    classification: Classification
    eigenvalues: np.ndarray
    pairing: list
    max_imag: float
    e4_residual: float
    metric: MetricOperator | None = None
    system: BiorthonormalSystem | None = field(default=None, repr=False)


def diagnose(h, tol: float = DEFAULT_TOL) -> SpectrumDiagnosis:
    """Classify the spectrum of ``h`` by reality and conjugate pairing.

    ``AllReal`` carries the canonical metric; the other classes do not.

    Raises
    ------
    DefectiveMatrix
        If ``h`` has no complete biorthonormal system.
    """
    h = as_square(h)
    system = decompose(h, tol)
    return diagnose_system(h, system, tol)


def diagnose_system(h, system: BiorthonormalSystem, tol: float = DEFAULT_TOL) -> SpectrumDiagnosis:
    """As :func:`diagnose`, for an already decomposed ``h``."""
    h = _check_dim(h, system)
    e = system.eigenvalues
    pairing, unmatched = conjugate_pairing(e, tol)
    if unmatched:
        cls = Classification.STAR_VIOLATED
    elif all(len(g) == 1 for g in pairing):
        cls = Classification.ALL_REAL
    else:
        cls = Classification.CONJUGATE_PAIRED
    metric = canonical_metric(system) if cls is Classification.ALL_REAL else None
    return SpectrumDiagnosis(
        classification=cls,
        eigenvalues=e,
        pairing=pairing,
        max_imag=float(np.max(np.abs(e.imag))),
        e4_residual=e4_residual(h, system),
        metric=metric,
        system=system,
    )
