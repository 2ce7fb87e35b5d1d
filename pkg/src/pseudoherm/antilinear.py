"""Antilinear symmetries ``A = M o K`` (``K`` = complex conjugation).

``[H, A] = 0`` reduces to the linear identity ``H M = M conj(H)``.  When it
holds, the spectrum is real or closed under conjugation, and every mode whose
eigenvector is mapped onto itself by ``A`` (up to a phase) has a real energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biorthonormal import BiorthonormalSystem, decompose
from .errors import DimensionMismatch, SingularMatrix, SymmetryAbsent
from .linalg import _frozen, as_square, as_vector, frobenius_norm, is_singular, relative
from .metric import DEFAULT_TOL, conjugate_pairing

__all__ = [
    "AntilinearOperator",
    "ExactnessReport",
    "ModeExactness",
    "apply",
    "commutes",
    "exactness",
    "exactness_implies_real",
    "make_parity_time",
    "mode_exactness",
    "star_property",
]

_INVOLUTION_TOL = 1e-12


@dataclass(frozen=True)
class AntilinearOperator:
    """The map ``x -> matrix @ conj(x)``.

    ``involutory=True`` asserts ``A^2 = 1``, i.e. ``M conj(M) = I``; the claim
    is checked on construction.
    """

    matrix: np.ndarray
    involutory: bool = False

    def __post_init__(self):
        m = as_square(self.matrix)
        object.__setattr__(self, "matrix", m)
        if is_singular(m):
            raise SingularMatrix("antilinear operator matrix is singular")
        if self.involutory:
            err = frobenius_norm(m @ m.conj() - np.eye(m.shape[0]))
            if err > _INVOLUTION_TOL * frobenius_norm(m):
                raise ValueError(f"operator is not an involution (||M conj(M) - I|| = {err:.3e})")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x):
        return apply(self, x)


def make_parity_time(n: int) -> AntilinearOperator:
    """Site reversal ``i -> n-1-i`` composed with complex conjugation."""
    if n < 1:
        raise ValueError("n must be positive")
    return AntilinearOperator(np.eye(n)[::-1], involutory=True)


def apply(a: AntilinearOperator, x) -> np.ndarray:
    x = as_vector(x)
    if x.size != a.dim:
        raise DimensionMismatch(f"vector has length {x.size}, operator dimension {a.dim}")
    return _frozen(a.matrix @ x.conj())


def commutes(h, a: AntilinearOperator) -> float:
    """Relative residual ``||H M - M conj(H)||_F / (||H||_F ||M||_F)``."""
    h = as_square(h)
    if h.shape[0] != a.dim:
        raise DimensionMismatch(f"matrix has dimension {h.shape[0]}, operator {a.dim}")
    m = a.matrix
    return relative(frobenius_norm(h @ m - m @ h.conj()), frobenius_norm(h) * frobenius_norm(m))


def star_property(eigenvalues, tol: float = DEFAULT_TOL) -> bool:
    """True when the spectrum equals its own conjugate as a multiset."""
    return not conjugate_pairing(eigenvalues, tol)[1]


@dataclass(frozen=True)
class ModeExactness:
    """Exactness of one mode.

    ``phase`` is ``c`` in ``A psi ~= c psi`` (meaningful only when exact),
    ``defect`` is ``||A psi|| ||psi|| - |<psi, A psi>|``.
    """

    exact: bool
    imag_part: float
    phase: complex
    defect: float


def mode_exactness(
    a: AntilinearOperator, system: BiorthonormalSystem, tol: float = DEFAULT_TOL
) -> list[ModeExactness]:
    if system.dim != a.dim:
        raise DimensionMismatch(f"system has dimension {system.dim}, operator {a.dim}")
    out = []
    for k in range(system.dim):
        psi = system.right[:, k]
        image = a.matrix @ psi.conj()
        overlap = np.vdot(psi, image)
        scale = float(np.linalg.norm(image) * np.linalg.norm(psi))
        # relative Cauchy-Schwarz gap; zero iff A psi is parallel to psi
        defect = (scale - abs(overlap)) / scale
        norm2 = float(np.vdot(psi, psi).real)
        out.append(
            ModeExactness(
                exact=bool(defect <= tol),
                imag_part=float(system.eigenvalues[k].imag),
                phase=complex(overlap / norm2),
                defect=defect,
            )
        )
    return out


def exactness(a: AntilinearOperator, system: BiorthonormalSystem, tol: float = DEFAULT_TOL) -> list[bool]:
    """Per mode: is ``A psi_n`` parallel to ``psi_n``?

    Eigenvectors carry an arbitrary phase, so invariance is tested
    projectively: ``1 - |<psi, A psi>| / (||A psi|| ||psi||) <= tol``.
    """
    return [m.exact for m in mode_exactness(a, system, tol)]


@dataclass(frozen=True)
class ExactnessReport:
    per_mode: list
    theorem_holds: bool
    commutation_residual: float

    @property
    def all_exact(self) -> bool:
        return all(m.exact for m in self.per_mode)


def exactness_implies_real(a: AntilinearOperator, h, tol: float = DEFAULT_TOL) -> ExactnessReport:
    """Check that every exact mode of a symmetric ``h`` has a real energy.

    Raises
    ------
    SymmetryAbsent
        If :func:`commutes` exceeds ``tol``.
    DefectiveMatrix
        Propagated from :func:`~pseudoherm.biorthonormal.decompose`.
    """
    h = as_square(h)
    residual = commutes(h, a)
    if not residual <= tol:
        raise SymmetryAbsent(f"commutation residual {residual:.3e} exceeds tol {tol:.3e}")
    system = decompose(h, tol)
    modes = mode_exactness(a, system, tol)
    holds = all(
        abs(m.imag_part) <= tol * (1.0 + abs(e))
        for m, e in zip(modes, system.eigenvalues)
        if m.exact
    )
    return ExactnessReport(modes, holds, residual)
