import numpy as np
import pytest
from hypothesis import given, settings

from conftest import density_matrices, random_density
from qree import families as fam
from qree.errors import SeparableStateError, ValidationError
from qree.measures import concurrence_mixed
from qree.wootters import Ensemble, optimal_decomposition, validate_optimal


@given(density_matrices())
@settings(max_examples=80, deadline=None)
def test_optimal_decomposition_is_optimal(m):
    if concurrence_mixed(m) <= 1e-6:
        return
    ens = optimal_decomposition(m)
    report = validate_optimal(m, ens)
    assert report.passes(1e-8), report
    assert len(ens) <= 4


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_member_count_matches_rank(rank):
    rng = np.random.default_rng(rank)
    for _ in range(50):
        m = random_density(rng, rank)
        if concurrence_mixed(m) > 1e-3:
            break
    else:
        pytest.skip("no entangled sample")
    assert len(optimal_decomposition(m)) == rank


def test_separable_input_raises():
    with pytest.raises(SeparableStateError):
        optimal_decomposition(np.eye(4) / 4)


def test_ensemble_validation():
    with pytest.raises(ValidationError, match="sum"):
        Ensemble((0.5, 0.4), ([1, 0, 0, 0], [0, 1, 0, 0]))
    with pytest.raises(ValidationError, match="1 to 4"):
        Ensemble((0.2,) * 5, ([1, 0, 0, 0],) * 5)
    ens = Ensemble.from_unnormalized([[0.5, 0, 0, 0], [0, 0, 0, 0], [0, 0.5j, 0, 0]])
    assert len(ens) == 2
    assert ens.weights == (0.5, 0.5)


@pytest.mark.parametrize(
    "case",
    [
        fam.bell_diagonal(fam.BellDiagonalSpec(0.1, 0.15, 0.6, 0.15)),
        fam.gen_horodecki(fam.GenHorodeckiSpec(0.6, 0.3, 0.1)),
        fam.vp_type(fam.VpTypeSpec(0.7, 0.3, 0.4)),
        fam.horodecki_type(fam.HorodeckiTypeSpec(0.2, 0.1, 0.35, 0.3)),
    ],
    ids=["bd", "gh", "vpt", "ht"],
)
def test_family_ensembles_are_optimal(case):
    assert validate_optimal(case.rho, case.ensemble).passes(1e-8)


@pytest.mark.xfail(strict=True, reason="two-member gvp ensemble has member concurrence sqrt((a-c)^2+4b^2) != C(rho)")
def test_gvp_two_member_ensemble_is_optimal():
    case = fam.gvp(fam.GvpSpec(0.5, 0.3, 0.2))
    assert validate_optimal(case.rho, case.ensemble).passes(1e-8)


def test_gvp_two_member_ensemble_still_reconstructs():
    case = fam.gvp(fam.GvpSpec(0.5, 0.3, 0.2))
    report = validate_optimal(case.rho, case.ensemble)
    assert report.reconstruction_residual < 1e-12
    assert report.eof_excess > 1e-3
