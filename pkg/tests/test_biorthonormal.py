import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoherm.biorthonormal import (
    BiorthonormalSystem,
    condition_estimate,
    decompose,
    degenerate_groups,
    verify,
)
from pseudoherm.errors import DefectiveMatrix, DimensionMismatch
from pseudoherm.linalg import frobenius_norm
from pseudoherm.models import conjugator, jordan_block, pt_dimer, random_real_spectrum

sizes = st.sampled_from([1, 2, 3, 5, 8, 16, 32, 64])
caps = st.sampled_from([1.0, 10.0, 100.0, 1e3])
seeds = st.integers(0, 2**64 - 1)


def dimer_closed_form(gamma, coupling):
    """Right/left vectors of [[i g, J], [J, -i g]] by hand.

    The matrix is complex symmetric, so H^dagger = conj(H) and the left
    vector is conj(psi) / conj(psi^T psi).
    """
    root = math.sqrt(coupling**2 - gamma**2)
    out = []
    for lam in (-root, root):
        psi = np.array([coupling, lam - 1j * gamma])
        psi /= np.linalg.norm(psi)
        phi = psi.conj() / np.conj(psi @ psi)
        out.append((lam, psi, phi))
    return out


def test_hermitian_diagonal():
    s = decompose(np.diag([1.0, 2.0]))
    np.testing.assert_array_equal(s.eigenvalues, [1, 2])
    np.testing.assert_array_equal(np.abs(s.right), np.eye(2))
    np.testing.assert_array_equal(np.abs(s.left), np.eye(2))
    assert s.biorthogonality_residual == 0 and s.completeness_residual == 0


def test_dimer_matches_hand_biorthonormalization():
    s = decompose(pt_dimer(0.5, 1.0))
    assert s.biorthogonality_residual <= 1e-10 and s.completeness_residual <= 1e-10
    for k, (lam, psi, phi) in enumerate(dimer_closed_form(0.5, 1.0)):
        assert abs(s.eigenvalues[k] - lam) <= 1e-10
        c = np.vdot(psi, s.right[:, k])  # psi_k = c psi with |c| = 1
        assert abs(abs(c) - 1) <= 1e-12
        np.testing.assert_allclose(s.right[:, k], c * psi, atol=1e-12)
        np.testing.assert_allclose(s.left[:, k], c * phi, atol=1e-12)
    assert not np.allclose(s.left, s.right)  # non-normal


@pytest.mark.parametrize(
    "h",
    [
        jordan_block(2, 0),
        jordan_block(3, 2 + 1j),
        pt_dimer(1.0, 1.0),  # exceptional point
        [[1.0, 1.0], [0.0, 1.0]],
    ],
)
def test_defective_rejected(h):
    with pytest.raises(DefectiveMatrix):
        decompose(h)


def test_zero_matrix_is_complete():
    s = decompose(np.zeros((3, 3)))
    np.testing.assert_array_equal(s.eigenvalues, 0)
    assert s.completeness_residual == 0


def test_verify_examples():
    h = np.diag([1.0, 2.0])
    r = verify(decompose(h), h)
    assert r.max() == 0

    h = pt_dimer(0.5, 1.0)
    assert verify(decompose(h), h).max() <= 1e-10

    s = decompose(h)
    doubled = BiorthonormalSystem.from_vectors(s.eigenvalues, s.right, 2 * s.left)
    # Phi^dagger Psi = 2I, so the residual is ||I||_F = sqrt(n)
    assert verify(doubled, h).biorth_residual == pytest.approx(math.sqrt(2), abs=1e-12)
    h4 = random_real_spectrum(4, 0, 1.0)
    s4 = decompose(h4)
    doubled4 = BiorthonormalSystem.from_vectors(s4.eigenvalues, s4.right, 2 * s4.left)
    assert verify(doubled4, h4).biorth_residual == pytest.approx(2.0, abs=1e-10)

    with pytest.raises(DimensionMismatch):
        verify(s, np.eye(3))


def test_degenerate_groups_examples():
    assert degenerate_groups([1, 2, 3], 1e-8) == [[0], [1], [2]]
    assert degenerate_groups([1, 1, 2], 1e-8) == [[0, 1], [2]]
    assert degenerate_groups([1, 1 + 5e-9, 2], 1e-8) == [[0, 1], [2]]
    # transitive chain: 0~1 and 1~2 but not 0~2 directly
    assert degenerate_groups([0.0, 0.6e-8, 1.2e-8, 5.0], 1e-9) == [[0, 1, 2], [3]]
    assert degenerate_groups([2, 1, 2], 0.0) == [[0, 2], [1]]
    with pytest.raises(ValueError):
        degenerate_groups([1], -1.0)


def test_degenerate_block_is_biorthonormalized():
    v = np.asarray(conjugator(3, 11, 50.0))
    h = v @ np.diag([1.0, 1.0, 2.0]) @ np.linalg.inv(v)
    s = decompose(h)
    assert s.biorthogonality_residual <= 1e-8
    assert s.completeness_residual <= 1e-8
    assert verify(s, h).max() <= 1e-8
    np.testing.assert_allclose(s.eigenvalues, [1, 1, 2], atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(sizes, seeds, caps)
def test_random_diagonalizable_meets_residuals(n, seed, cap):
    h = random_real_spectrum(n, seed, cap)
    s = decompose(h)
    r = verify(s, h)
    assert s.biorthogonality_residual <= 1e-8
    assert s.completeness_residual <= 1e-8
    assert r.eig_residual_right <= 1e-8 and r.eig_residual_left <= 1e-8
    # stored residuals agree with recomputation
    assert r.biorth_residual == s.biorthogonality_residual
    np.testing.assert_allclose(np.linalg.norm(s.right, axis=0), 1.0, atol=1e-13)
    # round trip: sum_n psi_n phi_n^dagger = I
    total = sum(np.outer(s.right[:, k], s.left[:, k].conj()) for k in range(n))
    assert frobenius_norm(total - np.eye(n)) <= s.completeness_residual + 1e-12


@settings(max_examples=20, deadline=None)
@given(sizes, seeds)
def test_left_vectors_carry_conjugate_eigenvalues(n, seed):
    h = random_real_spectrum(n, seed, 100.0)
    s = decompose(h)
    hd = h.conj().T
    for k in range(n):
        phi = s.left[:, k]
        # Rayleigh quotient of H^dagger at phi_k recovers conj(E_k)
        mu = np.vdot(phi, hd @ phi) / np.vdot(phi, phi)
        assert abs(mu - np.conj(s.eigenvalues[k])) <= 1e-8 * frobenius_norm(h)


@settings(max_examples=20, deadline=None)
@given(sizes, seeds, st.randoms(use_true_random=False))
def test_permutation_invariance(n, seed, rnd):
    h = np.asarray(random_real_spectrum(n, seed, 10.0))
    perm = list(range(n))
    rnd.shuffle(perm)
    p = np.eye(n)[perm]
    a = decompose(h).eigenvalues
    b = decompose(p @ h @ p.T).eigenvalues
    np.testing.assert_allclose(a, b, atol=1e-8)


def test_regauge_and_permute_preserve_biorthonormality():
    h = random_real_spectrum(6, 4, 100.0)
    s = decompose(h)
    c = np.exp(1j * np.arange(6)) * np.linspace(0.5, 3.0, 6)
    g = s.regauged(c)
    assert g.biorthogonality_residual <= 1e-10
    assert verify(g, h).max() <= 1e-8
    p = s.permuted([5, 4, 3, 2, 1, 0])
    np.testing.assert_array_equal(p.eigenvalues, s.eigenvalues[::-1])
    with pytest.raises(ValueError):
        s.regauged(np.zeros(6))
    with pytest.raises(ValueError):
        s.permuted([0, 0, 1, 2, 3, 4])


def test_condition_estimate():
    assert condition_estimate(decompose(np.diag([1.0, 2.0]))) == pytest.approx(1.0)
    assert condition_estimate(decompose(random_real_spectrum(8, 1, 1e3))) > 10
