"""REE estimate built from the EOF-optimal ensemble.

Steps: decompose rho optimally, replace each member by its closest
separable state, mix them with the same weights into ``sigma_tilde``,
and, if that mixture sits strictly inside the separable set, push it
towards rho until it reaches the PPT boundary.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleMixingError
from .measures import concurrence_mixed, relative_entropy
from .qcore import DensityMatrix, as_density, min_pt_eigenvalue
from .schmidt import css_matrix
from .wootters import SEPARABLE_TOL, Ensemble, optimal_decomposition

log = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
SCAN_POINTS = 65
MAX_BISECTIONS = 200
ROOT_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryVerdict:
    min_pt_eigenvalue: float
    is_boundary: bool
    is_interior: bool
    is_entangled: bool

    @property
    def label(self) -> str:
        if self.is_boundary:
            return "boundary"
        return "interior" if self.is_interior else "entangled"


def classify_boundary(sigma, tol: float = BOUNDARY_TOL) -> BoundaryVerdict:
    m = min_pt_eigenvalue(as_density(sigma).matrix)
    return BoundaryVerdict(
        min_pt_eigenvalue=m,
        is_boundary=abs(m) <= tol,
        is_interior=m > tol,
        is_entangled=m < -tol,
    )


def member_css(ensemble: Ensemble) -> list[DensityMatrix]:
    # a product member (C = 0) is returned unchanged by the Schmidt dephasing
    return [DensityMatrix(css_matrix(psi)) for _, psi in ensemble]


def mix_member_css(ensemble: Ensemble, members: list[DensityMatrix] | None = None) -> DensityMatrix:
    members = member_css(ensemble) if members is None else members
    out = sum(p * s.matrix for p, s in zip(ensemble.weights, members))
    return DensityMatrix((out + out.conj().T) / 2)


def _segment(rho: np.ndarray, sigma: np.ndarray, q: float) -> np.ndarray:
    return q * rho + (1.0 - q) * sigma


def solve_boundary_mixing(rho, sigma_tilde) -> float:
    """Smallest q in (0, 1) where q rho + (1 - q) sigma_tilde hits the PPT boundary."""
    r = as_density(rho).matrix
    s = as_density(sigma_tilde).matrix

    def g(q: float) -> float:
        return min_pt_eigenvalue(_segment(r, s, q))

    grid = np.linspace(0.0, 1.0, SCAN_POINTS)
    values = [g(q) for q in grid]
    bracket = None
    for k in range(SCAN_POINTS - 1):
        if values[k] > 0.0 and values[k + 1] <= 0.0:
            bracket = (grid[k], grid[k + 1], values[k], values[k + 1])
            break
    if bracket is None:
        raise InfeasibleMixingError(
            "min PT eigenvalue has no positive-to-negative sign change on [0, 1]"
        )
    lo, hi, glo, ghi = bracket
    if ghi == 0.0:
        return float(hi)
    mid = lo
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if abs(gm) <= ROOT_TOL or hi - lo <= 1e-16:
            break
        if gm > 0.0:
            lo = mid
        else:
            hi = mid
    return float(mid)


@dataclass(frozen=True, eq=False)
class ProcedureTrace:
    source: DensityMatrix
    ensemble: Ensemble | None
    member_css: tuple[DensityMatrix, ...]
    sigma_tilde: DensityMatrix | None
    boundary_at_step3: bool | None
    min_pt_eigenvalue: float | None
    q0: float | None
    sigma_star: DensityMatrix
    ree_value: float
    separable: bool = False
    note: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def x(self) -> float | None:
        """Weight of sigma_tilde in sigma_star (1 - q0); 1 when no mixing was needed."""
        if self.separable:
            return None
        return 1.0 if self.q0 is None else 1.0 - self.q0


def ree_from_eof(rho, ensemble: Ensemble | None = None, tol: float = BOUNDARY_TOL) -> ProcedureTrace:
    """Run the four steps and record every intermediate.

    ``ensemble`` may override the generic optimal decomposition (for
    instance with a hand-built one); it is used as given.
    """
    r = as_density(rho)
    if concurrence_mixed(r) <= SEPARABLE_TOL:
        log.info("separable input: sigma* = rho")
        return ProcedureTrace(
            source=r,
            ensemble=None,
            member_css=(),
            sigma_tilde=None,
            boundary_at_step3=None,
            min_pt_eigenvalue=None,
            q0=None,
            sigma_star=r,
            ree_value=0.0,
            separable=True,
            note="separable input: sigma* = rho, ree = 0",
        )
    ens = optimal_decomposition(r) if ensemble is None else ensemble
    members = member_css(ens)
    tilde = mix_member_css(ens, members)
    verdict = classify_boundary(tilde, tol)
    log.debug("sigma_tilde min PT eigenvalue %.3e (%s)", verdict.min_pt_eigenvalue, verdict.label)
    if verdict.is_boundary:
        q0 = None
        star = tilde
        note = "sigma_tilde is a boundary state"
    elif verdict.is_interior:
        q0 = solve_boundary_mixing(r, tilde)
        mixed = _segment(r.matrix, tilde.matrix, q0)
        star = DensityMatrix((mixed + mixed.conj().T) / 2)
        note = "sigma_tilde interior; mixed towards rho up to the boundary"
    else:
        raise InfeasibleMixingError("sigma_tilde is entangled; member CSS mixture is invalid")
    return ProcedureTrace(
        source=r,
        ensemble=ens,
        member_css=tuple(members),
        sigma_tilde=tilde,
        boundary_at_step3=verdict.is_boundary,
        min_pt_eigenvalue=verdict.min_pt_eigenvalue,
        q0=q0,
        sigma_star=star,
        ree_value=relative_entropy(r, star),
        note=note,
    )
