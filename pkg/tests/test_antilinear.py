import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoherm.antilinear import (
    AntilinearOperator,
    apply,
    commutes,
    exactness,
    exactness_implies_real,
    make_parity_time,
    mode_exactness,
    star_property,
)
from pseudoherm.biorthonormal import decompose
from pseudoherm.errors import DefectiveMatrix, DimensionMismatch, SingularMatrix, SymmetryAbsent
from pseudoherm.metric import Classification, diagnose
from pseudoherm.models import hermitian_random, pt_chain, pt_dimer

T2 = AntilinearOperator(np.eye(2), involutory=True)
finite = st.floats(-10, 10, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def test_apply_examples():
    pt = make_parity_time(2)
    np.testing.assert_array_equal(apply(pt, [1, 0]), [0, 1])
    x = np.array([1 + 2j, -0.5j])
    np.testing.assert_allclose(apply(pt, 1j * x), -1j * apply(pt, x))
    np.testing.assert_array_equal(apply(T2, [1j, 1]), [-1j, 1])
    np.testing.assert_array_equal(pt([1, 0]), [0, 1])
    with pytest.raises(DimensionMismatch):
        apply(pt, [1, 2, 3])


def test_make_parity_time():
    np.testing.assert_array_equal(make_parity_time(2).matrix, [[0, 1], [1, 0]])
    np.testing.assert_array_equal(make_parity_time(3).matrix, np.eye(3)[::-1])
    for n in (1, 2, 5, 16):
        m = make_parity_time(n).matrix
        np.testing.assert_array_equal(m @ m.conj(), np.eye(n))


def test_operator_validation():
    with pytest.raises(SingularMatrix):
        AntilinearOperator(np.diag([1.0, 0.0]))
    with pytest.raises(ValueError):
        AntilinearOperator(np.diag([1.0, 2.0]), involutory=True)
    # i * identity: M conj(M) = I, so the conjugation-times-phase is involutory
    AntilinearOperator(1j * np.eye(2), involutory=True)


def test_commutes_examples():
    assert commutes(np.array([[1.0, 2.0], [3.0, 4.0]]), T2) == 0
    assert commutes(pt_dimer(0.7, 1.0), make_parity_time(2)) == 0
    assert commutes(np.diag([1j, 2]), T2) > 0
    with pytest.raises(DimensionMismatch):
        commutes(np.eye(3), T2)


def test_star_property_examples():
    assert star_property([1, 2, 3], 1e-8)
    assert star_property([1 + 2j, 1 - 2j, 5], 1e-8)
    assert not star_property([1j, 2], 1e-8)


def test_exactness_examples():
    h = hermitian_random(4, 1).real.astype(complex)
    h = (h + h.T) / 2
    assert all(exactness(AntilinearOperator(np.eye(4)), decompose(h), 1e-8))

    pt = make_parity_time(2)
    assert exactness(pt, decompose(pt_dimer(0.5, 1.0)), 1e-8) == [True, True]
    assert exactness(pt, decompose(pt_dimer(2.0, 1.0)), 1e-8) == [False, False]


def test_exactness_reports_phase():
    pt = make_parity_time(2)
    s = decompose(pt_dimer(0.5, 1.0))
    for k, m in enumerate(mode_exactness(pt, s, 1e-8)):
        assert abs(abs(m.phase) - 1) <= 1e-12
        np.testing.assert_allclose(apply(pt, s.right[:, k]), m.phase * s.right[:, k], atol=1e-12)
    # a literal A psi = psi test would fail on i * psi; the projective one must not
    rotated = s.regauged([1j, -1.0])
    assert exactness(pt, rotated, 1e-8) == [True, True]
    assert exactness(pt, s.regauged([1e4j, 1e-4]), 1e-8) == [True, True]


def test_exactness_implies_real_examples():
    pt = make_parity_time(2)
    r = exactness_implies_real(pt, pt_dimer(0.5, 1.0), 1e-8)
    assert r.all_exact and r.theorem_holds
    assert all(abs(m.imag_part) <= 1e-10 for m in r.per_mode)

    r = exactness_implies_real(pt, pt_dimer(2.0, 1.0), 1e-8)
    assert not any(m.exact for m in r.per_mode) and r.theorem_holds

    r = exactness_implies_real(T2, np.diag([1.0, 2.0]), 1e-8)
    assert r.all_exact and r.theorem_holds

    with pytest.raises(SymmetryAbsent):
        exactness_implies_real(T2, np.diag([1j, 2]), 1e-8)
    with pytest.raises(DefectiveMatrix):
        exactness_implies_real(pt, pt_dimer(1.0, 1.0), 1e-8)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.lists(cplx, min_size=n, max_size=n),
    st.lists(cplx, min_size=n, max_size=n),
    cplx,
)))
def test_antilinearity(args):
    x, y, c = (np.array(args[0]), np.array(args[1]), args[2])
    n = x.size
    a = make_parity_time(n)
    lhs = apply(a, c * x + y)
    rhs = np.conj(c) * apply(a, x) + apply(a, y)
    scale = abs(c) * np.linalg.norm(x) + np.linalg.norm(y) + 1e-300
    assert np.linalg.norm(lhs - rhs) <= 1e-14 * scale


@given(st.integers(1, 16).flatmap(lambda n: st.lists(cplx, min_size=n, max_size=n)))
def test_parity_time_involution(x):
    x = np.array(x)
    a = make_parity_time(x.size)
    np.testing.assert_array_equal(apply(a, apply(a, x)), x)
    xr = x.real
    np.testing.assert_array_equal(apply(a, apply(a, xr)), xr)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 8, 16]), st.floats(0.0, 2.0), st.floats(0.2, 3.0))
def test_star_and_exactness_on_chains(n, gamma, coupling):
    h = pt_chain(n, gamma, coupling)
    pt = make_parity_time(n)
    assert commutes(h, pt) <= 1e-12
    try:
        s = decompose(h)
    except DefectiveMatrix:
        return
    assert star_property(s.eigenvalues, 1e-8)
    r = exactness_implies_real(pt, h, 1e-8)
    assert r.theorem_holds
    if r.all_exact:
        assert diagnose(h).classification is Classification.ALL_REAL
