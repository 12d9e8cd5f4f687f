"""Optimal pure-state decomposition for the entanglement of formation.

Starting from the subnormalised eigenvectors of rho, a Takagi
factorisation of the spin-flip overlap matrix gives vectors whose
spin-flip overlaps are diagonal.  One phase per vector then makes the
overlaps sum to the concurrence, and a sequence of real plane rotations
equalises every member's concurrence to that value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SeparableStateError, ValidationError
from .measures import (
    PureState,
    concurrence_mixed,
    concurrence_pure,
    eof,
    eof_from_concurrence,
)
from .qcore import SPIN_FLIP, SUPPORT_THRESHOLD, DensityMatrix, as_density, takagi

SEPARABLE_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-12
WEIGHT_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted pure states, at most four, weights summing to one."""

    weights: tuple[float, ...]
    states: tuple[PureState, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        s = tuple(x if isinstance(x, PureState) else PureState(x) for x in self.states)
        if len(w) != len(s):
            raise ValidationError("ensemble needs one weight per state")
        if not 1 <= len(w) <= 4:
            raise ValidationError(f"ensemble must have 1 to 4 members, got {len(w)}")
        if any(x < 0.0 or x > 1.0 for x in w):
            raise ValidationError("ensemble weights must lie in [0, 1]")
        if abs(sum(w) - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"ensemble weights sum to {sum(w):.15g}, not 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", s)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(zip(self.weights, self.states))

    def density_matrix(self) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for p, psi in self:
            v = psi.amplitudes
            out += p * np.outer(v, v.conj())
        return out

    def density(self) -> DensityMatrix:
        m = self.density_matrix()
        return DensityMatrix((m + m.conj().T) / 2)

    @classmethod
    def from_unnormalized(cls, vectors) -> Ensemble:
        """Build from subnormalised vectors whose squared norms are the weights."""
        vecs = [np.asarray(v, dtype=complex) for v in vectors]
        norms = [float(np.vdot(v, v).real) for v in vecs]
        total = sum(norms)
        keep = [(n, v) for n, v in zip(norms, vecs) if n > WEIGHT_FLOOR * total]
        weights = [n / total for n, _ in keep]
        weights[-1] = 1.0 - sum(weights[:-1])
        states = [PureState(v / math.sqrt(n)) for n, v in keep]
        return cls(tuple(weights), tuple(states))


def _zero_diagonal_rotation(k: np.ndarray) -> np.ndarray:
    """Real orthogonal O with diag(O^T k O) = 0 for a real symmetric traceless k."""
    k = k.copy()
    n = k.shape[0]
    o = np.eye(n)
    scale = max(1.0, float(np.max(np.abs(k))))
    active = list(range(n))
    while len(active) > 1:
        i = max(active, key=lambda m: abs(k[m, m]))
        if abs(k[i, i]) <= 1e-15 * scale:
            break
        partners = [m for m in active if m != i and k[m, m] * k[i, i] < 0]
        if not partners:
            break
        j = max(partners, key=lambda m: abs(k[m, m]))
        a, b, c = k[i, i], k[i, j], k[j, j]
        # new (i, i) entry: a cos^2 + 2 b cos sin + c sin^2 = 0, solved for tan
        disc = math.sqrt(max(0.0, b * b - a * c))
        denom = b + math.copysign(disc, b) if b != 0.0 else disc
        t = -a / denom
        cs = 1.0 / math.sqrt(1.0 + t * t)
        sn = t * cs
        r = np.eye(n)
        r[i, i], r[j, i], r[i, j], r[j, j] = cs, sn, -sn, cs
        k = r.T @ k @ r
        o = o @ r
        active.remove(i)
    return o


def optimal_decomposition(rho) -> Ensemble:
    """Ensemble of at most rank(rho) states, each with concurrence C(rho)."""
    r = as_density(rho)
    c = concurrence_mixed(r)
    if c <= SEPARABLE_TOL:
        raise SeparableStateError("state is separable (concurrence 0); no optimal ensemble needed")
    es = r.eig
    keep = es.values > SUPPORT_THRESHOLD
    x = es.vectors[:, keep] * np.sqrt(es.values[keep])
    s, q = takagi(x.T @ SPIN_FLIP @ x)
    y = x @ q.conj()  # y^T S y = diag(s)
    rank = y.shape[1]
    phases = np.ones(rank, dtype=complex)
    phases[1:] = 1j
    z = y * phases
    d = np.concatenate([[s[0]], -s[1:]])
    gram = np.real(z.conj().T @ z)
    k = np.diag(d) - d.sum() * gram
    w = z @ _zero_diagonal_rotation(k)
    return Ensemble.from_unnormalized(w.T)


@dataclass(frozen=True)
class ValidationReport:
    reconstruction_residual: float
    concurrence_deviations: tuple[float, ...]
    eof_excess: float
    target_concurrence: float

    @property
    def max_concurrence_deviation(self) -> float:
        return max(self.concurrence_deviations, default=0.0)

    def passes(self, tol: float = 1e-8) -> bool:
        return (
            self.reconstruction_residual <= tol
            and self.max_concurrence_deviation <= tol
            and abs(self.eof_excess) <= tol
        )


def validate_optimal(rho, ensemble: Ensemble) -> ValidationReport:
    r = as_density(rho)
    target = concurrence_mixed(r)
    residual = float(np.linalg.norm(ensemble.density_matrix() - r.matrix))
    concs = [concurrence_pure(psi) for _, psi in ensemble]
    mean_eof = sum(p * eof_from_concurrence(cj) for (p, _), cj in zip(ensemble, concs))
    return ValidationReport(
        reconstruction_residual=residual,
        concurrence_deviations=tuple(abs(cj - target) for cj in concs),
        eof_excess=mean_eof - eof(r),
        target_concurrence=target,
    )
