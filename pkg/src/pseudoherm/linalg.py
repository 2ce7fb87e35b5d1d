"""Dense complex linear algebra substrate.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every public
function returns a fresh read-only array so results can be shared freely
between threads.  LAPACK does the heavy lifting; this module adds the
validation, ordering and residual bookkeeping the rest of the package relies
on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, DimensionMismatch, SingularMatrix

__all__ = [
    "SINGULAR_PIVOT",
    "EigenDecomposition",
    "adjoint",
    "as_matrix",
    "as_square",
    "as_vector",
    "conjugate_entrywise",
    "eigen_residual",
    "frobenius_norm",
    "general_eigendecomposition",
    "identity",
    "is_singular",
    "multiply",
    "relative",
    "solve",
    "spectral_order",
]

#: Pivot magnitudes below ``SINGULAR_PIVOT * ||A||_F`` mark a matrix singular.
SINGULAR_PIVOT = 1e-12

# Real parts closer than this (relative to ||H||_F) are treated as equal when
# ordering a spectrum, so rounding noise cannot flip a conjugate pair.
_ORDER_TIE = 1e-10


def _frozen(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a


def as_matrix(m) -> np.ndarray:
    """Validate ``m`` and return it as a read-only complex 2-D array.

    Raises
    ------
    DimensionMismatch
        If ``m`` is not two-dimensional or has an empty axis.
    ValueError
        If any entry is NaN or infinite.
    """
    a = np.asarray(m)
    if a.ndim != 2 or 0 in a.shape:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    if a.dtype == np.complex128 and not a.flags.writeable:
        return a
    return _frozen(a)


def as_square(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def as_vector(x) -> np.ndarray:
    v = np.asarray(x)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"expected a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return _frozen(v)


def identity(n: int) -> np.ndarray:
    return _frozen(np.eye(n))


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return _frozen(as_matrix(m).conj().T)


def conjugate_entrywise(m) -> np.ndarray:
    return _frozen(as_matrix(m).conj())


def multiply(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return _frozen(a @ b)


def frobenius_norm(m) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    # pre-scale so squares of tiny or huge entries neither underflow nor overflow
    peak = float(np.max(np.abs(m)))
    if peak == 0.0 or not np.isfinite(peak):
        return peak
    return peak * float(np.linalg.norm(m / peak))


def relative(numerator: float, denominator: float) -> float:
    """Return ``numerator / denominator`` with ``0/0`` read as an exact zero."""
    if denominator > 0.0:
        return numerator / denominator
    return 0.0 if numerator == 0.0 else float("inf")


def _lu(a, reference_norm):
    with warnings.catch_warnings():
        # exact zero pivots are reported through the threshold test below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    if reference_norm is None:
        reference_norm = frobenius_norm(a)
    pivots = np.abs(np.diag(lu))
    singular = reference_norm == 0.0 or pivots.min() < SINGULAR_PIVOT * reference_norm
    return lu, piv, singular


def is_singular(a, reference_norm: float | None = None) -> bool:
    """Apply the pivot test used by :func:`solve` without solving anything."""
    return _lu(as_square(a), reference_norm)[2]


def solve(a, b, reference_norm: float | None = None) -> np.ndarray:
    """Solve ``a @ x = b`` by partially pivoted LU.

    Parameters
    ----------
    a : (n, n) array_like
    b : (n, k) array_like
    reference_norm : float, optional
        Scale the pivot threshold is measured against.  Defaults to
        ``||a||_F``; callers solving against a Gram product pass the product
        of the factor norms instead, since a uniformly tiny Gram block is
        singular even though its pivots are large relative to itself.

    Raises
    ------
    SingularMatrix
        If some pivot magnitude is below ``SINGULAR_PIVOT * reference_norm``.
    """
    a = as_square(a)
    b = as_matrix(b)
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"right-hand side has {b.shape[0]} rows, expected {a.shape[0]}")
    lu, piv, singular = _lu(a, reference_norm)
    if singular:
        raise SingularMatrix("matrix is numerically singular")
    return _frozen(scipy.linalg.lu_solve((lu, piv), b, check_finite=False))


def spectral_order(values, scale: float = 1.0) -> np.ndarray:
    """Indices sorting ``values`` by (real part, imaginary part), ascending.

    Real parts within ``1e-10 * max(scale, 1)`` of their sorted neighbour are
    chained into one tie class, ordered by imaginary part.  The sort is
    stable, so exact ties keep their original index order.
    """
    values = np.asarray(values, dtype=np.complex128)
    if values.size == 0:
        return np.zeros(0, dtype=np.intp)
    by_real = np.argsort(values.real, kind="stable")
    gap = _ORDER_TIE * max(scale, 1.0)
    re = values.real[by_real]
    cls = np.concatenate([[0], np.cumsum(np.diff(re) > gap)])
    # lexsort keys: last is primary
    return by_real[np.lexsort((by_real, values.imag[by_real], cls))]


def eigen_residual(h, eigenvalues, vectors) -> float:
    """max_k ||H v_k - lambda_k v_k|| / (||H||_F ||v_k||)."""
    h = np.asarray(h)
    vectors = np.asarray(vectors)
    r = h @ vectors - vectors * np.asarray(eigenvalues)[None, :]
    num = np.linalg.norm(r, axis=0)
    den = frobenius_norm(h) * np.linalg.norm(vectors, axis=0)
    return max(relative(float(x), float(y)) for x, y in zip(num, den))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues with unit-norm right eigenvectors (column ``k`` pairs with
    ``eigenvalues[k]``), plus the relative residual they achieve."""

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    residual: float

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def general_eigendecomposition(h, tol: float = 1e-8) -> EigenDecomposition:
    """Eigenvalues and right eigenvectors of a general complex matrix.

    LAPACK ``zgeev`` (Hessenberg reduction plus shifted QR) does the work.
    The spectrum is returned in :func:`spectral_order`.

    Raises
    ------
    ConvergenceFailure
        If the QR iteration fails, or the achieved residual exceeds ``tol``.
    """
    h = as_square(h)
    if not tol > 0:
        raise ValueError("tol must be positive")
    try:
        w, v = np.linalg.eig(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    norm = frobenius_norm(h)
    order = spectral_order(w, norm)
    w, v = w[order], v[:, order]
    v = v / np.linalg.norm(v, axis=0)[None, :]
    residual = eigen_residual(h, w, v)
    if not residual <= tol:
        raise ConvergenceFailure(f"eigen residual {residual:.3e} exceeds tol {tol:.3e}")
    return EigenDecomposition(_frozen(w), _frozen(v), residual)
