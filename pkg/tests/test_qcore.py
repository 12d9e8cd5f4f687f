import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import density_matrices, random_density
from qree.errors import ValidationError
from qree.qcore import (
    DensityMatrix,
    hermitian_function,
    jacobi_eigh,
    matrix_log_on_support,
    min_pt_eigenvalue,
    partial_transpose,
    takagi,
)

hermitian_entries = st.floats(-2.0, 2.0, allow_nan=False)


@st.composite
def hermitian_matrices(draw, n=4):
    a = np.array(draw(st.lists(hermitian_entries, min_size=n * n, max_size=n * n))).reshape(n, n)
    b = np.array(draw(st.lists(hermitian_entries, min_size=n * n, max_size=n * n))).reshape(n, n)
    m = a + 1j * b
    return (m + m.conj().T) / 2


@given(hermitian_matrices())
@settings(max_examples=60, deadline=None)
def test_jacobi_matches_lapack(m):
    es = jacobi_eigh(m)
    np.testing.assert_allclose(es.values, np.linalg.eigvalsh(m), atol=1e-11)
    assert np.linalg.norm(es.reconstruct() - m) < 1e-11
    assert np.linalg.norm(es.vectors.conj().T @ es.vectors - np.eye(4)) < 1e-12
    assert np.all(np.diff(es.values) >= 0)


def test_jacobi_phase_rule_and_degenerate_input():
    es = jacobi_eigh(np.eye(4) * 0.25)
    np.testing.assert_allclose(es.values, 0.25)
    m = random_density(np.random.default_rng(3))
    for v in jacobi_eigh(m).vectors.T:
        k = int(np.argmax(np.abs(v)))
        assert abs(v[k].imag) < 1e-15 and v[k].real > 0


def test_jacobi_handles_8x8_real_symmetric():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(8, 8))
    a = a + a.T
    np.testing.assert_allclose(jacobi_eigh(a).values, np.linalg.eigvalsh(a), atol=1e-11)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_takagi_reconstructs_symmetric(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a = a + a.T
    s, q = takagi(a)
    assert np.all(np.diff(s) <= 1e-12)
    assert np.linalg.norm(q @ np.diag(s) @ q.T - a) < 1e-10
    assert np.linalg.norm(q.conj().T @ q - np.eye(4)) < 1e-10


def test_takagi_rank_deficient():
    v = np.array([1, 1j, 0, 0.5])
    s, q = takagi(np.outer(v, v))
    np.testing.assert_allclose(s, [np.vdot(v, v).real, 0, 0, 0], atol=1e-12)
    assert np.linalg.norm(q.conj().T @ q - np.eye(4)) < 1e-10


@given(density_matrices())
@settings(max_examples=40, deadline=None)
def test_partial_transpose_is_involution_and_keeps_trace(m):
    pt = partial_transpose(m)
    np.testing.assert_allclose(partial_transpose(pt), m, atol=1e-15)
    assert abs(np.trace(pt) - 1) < 1e-12


def test_partial_transpose_of_singlet_has_negative_half():
    beta = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert min_pt_eigenvalue(np.outer(beta, beta)) == pytest.approx(-0.5, abs=1e-14)
    assert min_pt_eigenvalue(np.eye(4) / 4) == pytest.approx(0.25)


def test_matrix_functions_on_support():
    m = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
    log = matrix_log_on_support(m)
    np.testing.assert_allclose(np.diag(log).real, [np.log(0.5), np.log(0.5), 0, 0], atol=1e-14)
    sq = hermitian_function(m, np.sqrt)
    np.testing.assert_allclose(sq @ sq, m, atol=1e-14)


@pytest.mark.parametrize(
    "matrix, message",
    [
        (np.eye(4) * 0.3, "trace"),
        (np.array([[0.5, 0.1, 0, 0], [0.2, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]), "Hermitian"),
        (np.diag([1.2, -0.2, 0, 0]), "positive semidefinite"),
        (np.eye(3) / 3, "4x4"),
        (np.full((4, 4), np.nan), "finite"),
    ],
)
def test_density_matrix_rejects(matrix, message):
    with pytest.raises(ValidationError, match=message):
        DensityMatrix(matrix)


def test_density_matrix_is_read_only_and_reports_rank():
    rho = DensityMatrix.from_vector([1, 0, 0, 0])
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 0.0
    assert rho.rank() == 1
    assert DensityMatrix.maximally_mixed().rank() == 4
    assert rho.distance(rho) == 0.0


def test_jacobi_ignores_subnormal_couplings():
    m = np.zeros((4, 4), dtype=complex)
    m[2:, 2:] = 0.5
    m[0, 2] = m[0, 3] = 5e-324 - 5e-324j
    m[2, 0] = m[3, 0] = np.conj(m[0, 2])
    es = jacobi_eigh(m)
    np.testing.assert_allclose(es.values, [0, 0, 0, 1], atol=1e-15)
    assert np.linalg.norm(es.reconstruct() - m) < 1e-15
