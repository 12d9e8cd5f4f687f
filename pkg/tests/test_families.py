import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qree import families as fam
from qree.errors import SeparableStateError, ValidationError
from qree.measures import relative_entropy
from qree.procedure import classify_boundary, ree_from_eof
from qree.qcore import DensityMatrix
from qree.verify import sample_specs

seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize(
    "name, params, ree",
    [
        ("bell_diagonal", (0.1, 0.15, 0.6, 0.15), 0.020135513550688877),
        ("gvp", (0.5, 0.3, 0.2), 0.131309),
        ("vp_type", (0.7, 0.3, 0.4), 0.40422498816991015),
        ("vp_type", (0.5, 0.5, 0.5), math.log(2)),
    ],
)
def test_reference_values(name, params, ree):
    spec = fam.FAMILY_SPECS[name](*params)
    case = fam.FAMILY_BUILDERS[name](spec)
    assert case.ree == pytest.approx(ree, abs=1e-6)
    assert relative_entropy(case.rho, case.css) == pytest.approx(case.ree, abs=1e-12)


@pytest.mark.parametrize("short", ["bd", "gvp", "gh", "vpt", "ht"])
@given(seed=seeds)
@settings(max_examples=15, deadline=None)
def test_members_rebuild_state_and_css_is_boundary(short, seed):
    spec = sample_specs(short, 1, np.random.default_rng(seed))[0]
    case = fam.FAMILY_BUILDERS[fam.SHORT_NAMES[short]](spec)
    assert np.linalg.norm(case.ensemble.density_matrix() - case.rho.matrix) < 1e-12
    assert classify_boundary(case.css).is_boundary


@pytest.mark.parametrize("short", ["bd", "gvp", "gh", "vpt"])
@given(seed=seeds)
@settings(max_examples=15, deadline=None)
def test_procedure_reproduces_closed_form(short, seed):
    spec = sample_specs(short, 1, np.random.default_rng(seed))[0]
    case = fam.FAMILY_BUILDERS[fam.SHORT_NAMES[short]](spec)
    trace = ree_from_eof(case.rho)
    assert trace.sigma_star.distance(case.css) < 1e-8
    assert trace.ree_value == pytest.approx(case.ree, abs=1e-9)


@given(seed=seeds)
@settings(max_examples=15, deadline=None)
def test_horodecki_type_procedure_lands_on_candidate_not_truth(seed):
    spec = fam.sample_horodecki_type(np.random.default_rng(seed))
    case = fam.horodecki_type(spec)
    trace = ree_from_eof(case.rho)
    assert trace.sigma_star.distance(case.procedure_css_candidate) < 1e-8
    assert trace.ree_value > case.true_ree
    assert trace.x == pytest.approx(case.x_star, abs=1e-8)


def test_bell_diagonal_canonical_frame():
    spec = fam.BellDiagonalSpec(0.7, 0.1, 0.1, 0.1)
    assert spec.dominant == 0
    assert spec.canonical[2] == 0.7
    assert classify_boundary(DensityMatrix(spec.sigma_tilde())).is_boundary


def test_gen_horodecki_equal_tails_needs_no_mixing():
    spec = fam.GenHorodeckiSpec(0.6, 0.2, 0.2)
    assert spec.x == pytest.approx(1.0)
    assert ree_from_eof(fam.gen_horodecki(spec).rho).boundary_at_step3


def test_gh_limit_of_horodecki_type():
    gh = fam.GenHorodeckiSpec(0.6, 0.3, 0.1)
    ht = fam.gh_limit_spec(0.6, 0.3, 0.1)
    np.testing.assert_allclose(ht.rho(), gh.rho(), atol=1e-15)
    np.testing.assert_allclose(ht.pi_tilde(), gh.sigma_tilde(), atol=1e-12)
    assert ht.x_star == pytest.approx(gh.x, abs=1e-12)


def test_vp_type_edge_cases():
    rho, css, ree, ens = fam.vp_type(fam.VpTypeSpec(0.6, 0.4, 0.0))
    assert ree == 0.0 and ens is None and css is rho
    pure = fam.vp_type(fam.VpTypeSpec(0.5, 0.5, 0.5))
    assert len(pure.ensemble) == 1


@pytest.mark.parametrize(
    "build",
    [
        lambda: fam.BellDiagonalSpec(0.5, 0.5, 0.5, -0.5),
        lambda: fam.BellDiagonalSpec(0.3, 0.3, 0.3, 0.3),
        lambda: fam.GvpSpec(0.5, 0.5, float("nan")),
        lambda: fam.VpTypeSpec(0.3, 0.7, 0.1),
        lambda: fam.VpTypeSpec(0.7, 0.3, 0.5),
        lambda: fam.HorodeckiTypeSpec(0.2, 0.1, 0.35, 0.4),
    ],
)
def test_invalid_parameters(build):
    with pytest.raises(ValidationError):
        build()


@pytest.mark.parametrize(
    "name, params",
    [
        ("bell_diagonal", (0.4, 0.2, 0.2, 0.2)),
        ("gvp", (0.0, 0.5, 0.5)),
        ("gen_horodecki", (0.2, 0.4, 0.4)),
        ("horodecki_type", (0.25, 0.25, 0.25, 0.2)),
    ],
)
def test_separable_parameters(name, params):
    with pytest.raises(SeparableStateError):
        fam.FAMILY_BUILDERS[name](fam.FAMILY_SPECS[name](*params))


def test_horodecki_type_concurrence_one_corner():
    spec = fam.HorodeckiTypeSpec(0.0, 0.0, 0.5, 0.5)
    with pytest.raises(ValidationError, match="corner"):
        spec.mix_a1
