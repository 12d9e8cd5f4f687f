import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import density_matrices
from qree.errors import InfeasibleMixingError
from qree.measures import binary_entropy, concurrence_mixed, eof, relative_entropy
from qree.procedure import classify_boundary, mix_member_css, ree_from_eof, solve_boundary_mixing
from qree.qcore import min_pt_eigenvalue
from qree.wootters import optimal_decomposition

SINGLET = np.array([0, 1, -1, 0]) / math.sqrt(2)


def test_separable_short_circuit():
    trace = ree_from_eof(np.eye(4) / 4)
    assert trace.separable and trace.ree_value == 0.0
    assert trace.x is None and trace.ensemble is None


@pytest.mark.parametrize("p", [0.4, 0.6, 0.9, 1.0])
def test_werner_states(p):
    rho = p * np.outer(SINGLET, SINGLET) + (1 - p) * np.eye(4) / 4
    trace = ree_from_eof(rho)
    f = (1 + 3 * p) / 4
    expected = math.log(2) - binary_entropy(f)
    assert trace.ree_value == pytest.approx(expected, abs=1e-9)
    assert classify_boundary(trace.sigma_star).is_boundary


@given(st.floats(0.05, 1.0))
@settings(max_examples=20, deadline=None)
def test_boundary_mixing_lands_on_boundary(p):
    # sigma strictly inside the separable set for p > 0
    rho = np.outer(SINGLET, SINGLET)
    sigma = p * np.eye(4) / 4 + (1 - p) * np.diag([0, 0.5, 0.5, 0])
    q = solve_boundary_mixing(rho, sigma)
    assert abs(min_pt_eigenvalue(q * rho + (1 - q) * sigma)) <= 1e-12
    assert 0 < q < 1


def test_no_sign_change_raises():
    with pytest.raises(InfeasibleMixingError):
        solve_boundary_mixing(np.eye(4) / 4, np.eye(4) / 4)


@given(density_matrices())
@settings(max_examples=40, deadline=None)
def test_procedure_output_is_boundary_upper_bound(m):
    if concurrence_mixed(m) <= 1e-6:
        return
    trace = ree_from_eof(m)
    assert classify_boundary(trace.sigma_star).is_boundary
    assert trace.ree_value <= eof(m) + 1e-9
    assert trace.ree_value == pytest.approx(relative_entropy(m, trace.sigma_star))
    mixed = mix_member_css(optimal_decomposition(m))
    assert mixed.distance(trace.sigma_tilde) < 1e-12


def test_trace_x_for_boundary_step3():
    beta = np.array([1, 0, 0, 1]) / math.sqrt(2)
    trace = ree_from_eof(np.outer(beta, beta))
    assert trace.boundary_at_step3 and trace.q0 is None and trace.x == 1.0
    assert trace.ree_value == pytest.approx(math.log(2), abs=1e-12)
