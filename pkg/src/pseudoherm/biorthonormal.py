"""Complete biorthonormal eigensystems of non-Hermitian matrices.

A diagonalizable ``H`` has right eigenvectors ``psi_n`` and left eigenvectors
``phi_n`` (eigenvectors of ``H^dagger`` for ``conj(E_n)``) which can be scaled
so that ``<phi_m|psi_n> = delta_mn`` and ``sum_n |psi_n><phi_n| = 1``.  This
module builds that pair of families, repairs degenerate subspaces, and
refuses matrices for which no such system exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DefectiveMatrix, DimensionMismatch, SingularMatrix
from .linalg import (
    _frozen,
    adjoint,
    as_square,
    eigen_residual,
    frobenius_norm,
    general_eigendecomposition,
    solve,
)

__all__ = [
    "BiorthonormalSystem",
    "VerifyReport",
    "condition_estimate",
    "decompose",
    "degenerate_groups",
    "match_left_to_right",
    "verify",
]

#: Largest accepted distance between a left eigenvalue and the conjugate of
#: its right partner, relative to ||H||_F.
MATCH_TOL = 1e-6


def _biorth_residual(right, left):
    return frobenius_norm(left.conj().T @ right - np.eye(right.shape[1]))


def _completeness_residual(right, left):
    return frobenius_norm(right @ left.conj().T - np.eye(right.shape[0]))


@dataclass(frozen=True)
class BiorthonormalSystem:
    """Eigenvalues ``E_n`` with right vectors (columns of ``right``) and left
    vectors (columns of ``left``).

    Use :meth:`from_vectors` rather than the raw constructor so the stored
    residuals agree with the vectors.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray
    biorthogonality_residual: float
    completeness_residual: float

    @classmethod
    def from_vectors(cls, eigenvalues, right, left) -> "BiorthonormalSystem":
        eigenvalues = np.asarray(eigenvalues, dtype=np.complex128)
        right = np.asarray(right, dtype=np.complex128)
        left = np.asarray(left, dtype=np.complex128)
        n = eigenvalues.size
        if right.shape != (n, n) or left.shape != (n, n):
            raise DimensionMismatch(
                f"{n} eigenvalues but vector blocks of shape {right.shape} and {left.shape}"
            )
        return cls(
            _frozen(eigenvalues),
            _frozen(right),
            _frozen(left),
            _biorth_residual(right, left),
            _completeness_residual(right, left),
        )

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def regauged(self, scales) -> "BiorthonormalSystem":
        """Rescale ``psi_n -> c_n psi_n`` and ``phi_n -> phi_n / conj(c_n)``.

        This is the full freedom left open by ``<phi_n|psi_n> = 1``; the unit
        norm convention for ``psi_n`` is given up in the process.
        """
        c = np.asarray(scales, dtype=np.complex128)
        if c.shape != (self.dim,):
            raise DimensionMismatch(f"expected {self.dim} scales, got shape {c.shape}")
        if np.any(c == 0):
            raise ValueError("scales must be nonzero")
        return self.from_vectors(self.eigenvalues, self.right * c, self.left / c.conj())

    def permuted(self, order) -> "BiorthonormalSystem":
        """Relabel the modes; ``order[k]`` is the old index of new mode ``k``."""
        order = np.asarray(order)
        if sorted(order.tolist()) != list(range(self.dim)):
            raise ValueError("order must be a permutation of the mode indices")
        return self.from_vectors(
            self.eigenvalues[order], self.right[:, order], self.left[:, order]
        )


def degenerate_groups(eigenvalues, tol: float = 1e-8) -> list[list[int]]:
    """Partition indices into clusters of (numerically) equal eigenvalues.

    ``i`` and ``j`` are linked when ``|l_i - l_j| <= tol * (1 + max|l|)``;
    groups are the transitive closure of that relation, each sorted, listed
    by smallest member.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    values = np.asarray(eigenvalues, dtype=np.complex128)
    n = values.size
    if n == 0:
        return []
    radius = tol * (1.0 + float(np.max(np.abs(values))))
    linked = np.abs(values[:, None] - values[None, :]) <= radius

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in zip(*np.nonzero(np.triu(linked, 1))):
        ri, rj = find(int(i)), find(int(j))
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def match_left_to_right(right_values, left_values, scale: float = 1.0) -> np.ndarray:
    """Greedy pairing of left eigenvalues with conjugated right eigenvalues.

    Walks the right spectrum in order; each takes the unused left eigenvalue
    nearest its conjugate (lowest index on ties).  Returns ``idx`` with
    ``left_values[idx[k]]`` paired to ``right_values[k]``.

    Raises
    ------
    DefectiveMatrix
        If some pair is farther apart than ``1e-6 * scale``.
    """
    right_values = np.asarray(right_values)
    left_values = np.asarray(left_values)
    free = np.ones(left_values.size, dtype=bool)
    idx = np.empty(right_values.size, dtype=np.intp)
    for k, lam in enumerate(right_values):
        dist = np.where(free, np.abs(left_values - np.conj(lam)), np.inf)
        j = int(np.argmin(dist))
        if not dist[j] <= MATCH_TOL * scale:
            raise DefectiveMatrix(
                f"no left eigenvalue within {MATCH_TOL:g}*||H|| of conj({lam:.6g})"
            )
        free[j] = False
        idx[k] = j
    return idx


def decompose(h, tol: float = 1e-8, degeneracy_tol: float = 1e-8) -> BiorthonormalSystem:
    """Build the complete biorthonormal eigensystem of ``h``.

    Right vectors come from the eigendecomposition of ``h`` and keep unit
    norm.  Left vectors come from the eigendecomposition of ``h^dagger``,
    are paired by conjugated eigenvalue, and inside every degenerate cluster
    the block ``Phi_g <- Phi_g (Phi_g^dagger Psi_g)^{-dagger}`` is applied so
    the cluster's Gram block becomes the identity.

    Raises
    ------
    DefectiveMatrix
        If a cluster's Gram block is singular, the pairing fails, or the
        biorthogonality / completeness residuals exceed ``tol``.
    ConvergenceFailure
        Propagated from the eigensolver.
    """
    h = as_square(h)
    if not tol > 0:
        raise ValueError("tol must be positive")
    scale = frobenius_norm(h)
    right = general_eigendecomposition(h, tol)
    left = general_eigendecomposition(adjoint(h), tol)

    idx = match_left_to_right(right.eigenvalues, left.eigenvalues, scale)
    psi = np.array(right.right_vectors)
    phi = np.array(left.right_vectors[:, idx])

    for group in degenerate_groups(right.eigenvalues, degeneracy_tol):
        g = np.asarray(group)
        gram = phi[:, g].conj().T @ psi[:, g]
        # factors have unit columns, so the Gram block's natural scale is len(g)
        try:
            phi[:, g] = solve(gram.conj(), phi[:, g].T, reference_norm=float(g.size)).T
        except SingularMatrix as exc:
            raise DefectiveMatrix(
                f"eigenvectors for eigenvalue {right.eigenvalues[g[0]]:.6g} "
                f"(multiplicity {g.size}) do not span a biorthonormal block"
            ) from exc

    with np.errstate(all="ignore"):
        system = BiorthonormalSystem.from_vectors(right.eigenvalues, psi, phi)
    worst = max(system.biorthogonality_residual, system.completeness_residual)
    if not worst <= tol:
        raise DefectiveMatrix(
            f"biorthonormal residual {worst:.3e} exceeds tol {tol:.3e}; "
            "no complete biorthonormal system"
        )
    return system


@dataclass(frozen=True)
class VerifyReport:
    eig_residual_right: float
    eig_residual_left: float
    biorth_residual: float
    completeness_residual: float

    def max(self) -> float:
        return max(
            self.eig_residual_right,
            self.eig_residual_left,
            self.biorth_residual,
            self.completeness_residual,
        )


def verify(system: BiorthonormalSystem, h) -> VerifyReport:
    """Recompute every defining residual of ``system`` against ``h``."""
    h = as_square(h)
    if h.shape[0] != system.dim:
        raise DimensionMismatch(f"system has dimension {system.dim}, matrix {h.shape[0]}")
    return VerifyReport(
        eig_residual_right=eigen_residual(h, system.eigenvalues, system.right),
        eig_residual_left=eigen_residual(adjoint(h), system.eigenvalues.conj(), system.left),
        biorth_residual=_biorth_residual(system.right, system.left),
        completeness_residual=_completeness_residual(system.right, system.left),
    )


def condition_estimate(system: BiorthonormalSystem) -> float:
    """2-norm condition number of the right eigenvector matrix,
    ``||Psi||_2 ||Phi||_2`` (``Phi^dagger`` is the inverse of ``Psi``)."""
    return float(np.linalg.norm(system.right, 2) * np.linalg.norm(system.left, 2))
