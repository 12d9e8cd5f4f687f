"""Scalar entanglement measures for two qubits, all entropies in nats."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .qcore import (
    SPIN_FLIP,
    SUPPORT_THRESHOLD,
    DensityMatrix,
    as_density,
    takagi,
)

NORM_TOL = 1e-12
LEAK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised amplitudes on |00>, |01>, |10>, |11>."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if v.shape != (4,):
            raise ValidationError(f"pure state needs 4 amplitudes, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("amplitudes must be finite")
        norm2 = float(np.vdot(v, v).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValidationError(f"amplitudes are not normalised (norm^2 = {norm2:.15g})")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @classmethod
    def normalized(cls, amps) -> PureState:
        v = np.asarray(amps, dtype=complex).reshape(-1)
        return cls(v / np.linalg.norm(v))

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __repr__(self):
        return f"PureState({np.array2string(self.amplitudes, precision=6)})"

    def density(self) -> DensityMatrix:
        v = self.amplitudes
        return DensityMatrix(np.outer(v, v.conj()))

    def coefficient_matrix(self) -> np.ndarray:
        """2x2 matrix psi[j, k] with |psi> = sum psi[j, k] |j>|k>."""
        return self.amplitudes.reshape(2, 2)


def as_pure(x) -> PureState:
    return x if isinstance(x, PureState) else PureState(x)


def concurrence_pure(psi) -> float:
    a = as_pure(psi).amplitudes
    return float(min(1.0, 2.0 * abs(a[0] * a[3] - a[1] * a[2])))


def spin_flip_values(rho) -> np.ndarray:
    """Descending s_i, the square roots of the spectrum of rho (Sy x Sy) rho* (Sy x Sy).

    Computed as Takagi values of X^T S X, where X X^dag = rho with
    columns sqrt(lambda_i) e_i over the support.  Those values are exactly
    the s_i, without the square-root amplification of rounding that a
    non-Hermitian eigenproblem would cause.
    """
    r = as_density(rho)
    es = r.eig
    keep = es.values > SUPPORT_THRESHOLD
    x = es.vectors[:, keep] * np.sqrt(es.values[keep])
    s, _ = takagi(x.T @ SPIN_FLIP @ x)
    out = np.zeros(4)
    out[: len(s)] = s
    return out


def concurrence_mixed(rho) -> float:
    s = spin_flip_values(rho)
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy needs x in [0, 1], got {x}")
    out = 0.0
    for p in (x, 1.0 - x):
        if p > 0.0:
            out -= p * math.log(p)
    return out


def eof_from_concurrence(c: float) -> float:
    c = min(1.0, max(0.0, c))
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def eof(rho) -> float:
    return eof_from_concurrence(concurrence_mixed(rho))


def _xlogx_sum(values) -> float:
    return float(sum(v * math.log(v) for v in values if v > SUPPORT_THRESHOLD))


def von_neumann_entropy(rho) -> float:
    return -_xlogx_sum(as_density(rho).eig.values)


def relative_entropy(rho, sigma) -> float:
    """S(rho || sigma) = tr rho ln rho - tr rho ln sigma.

    Returns ``math.inf`` when rho has weight above 1e-10 outside the
    support of sigma.
    """
    r = as_density(rho)
    s = as_density(sigma)
    es = s.eig
    on = es.values > SUPPORT_THRESHOLD
    vecs = es.vectors
    # <v_k| rho |v_k> for every eigenvector of sigma
    diag = np.real(np.einsum("ik,ij,jk->k", vecs.conj(), r.matrix, vecs))
    leak = float(np.sum(diag[~on]))
    if leak > LEAK_TOL:
        return math.inf
    cross = float(sum(d * math.log(lam) for d, lam, k in zip(diag, es.values, on) if k))
    value = _xlogx_sum(r.eig.values) - cross
    # rounding can leave tiny negatives for sigma == rho
    return max(value, 0.0)


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    PROCEDURE = "procedure"
    ORACLE = "oracle"


@dataclass(frozen=True)
class MeasureReport:
    concurrence: float
    eof: float
    ree: float
    method: Method

    def __post_init__(self):
        if not (0.0 <= self.concurrence <= 1.0):
            raise ValidationError(f"concurrence out of range: {self.concurrence}")
        if self.eof < 0 or self.ree < 0:
            raise ValidationError("entanglement values must be non-negative")
        if self.ree > self.eof + 1e-9:
            raise ValidationError(f"ree {self.ree} exceeds eof {self.eof}")

    def as_dict(self) -> dict:
        return {
            "concurrence": self.concurrence,
            "eof": self.eof,
            "ree": self.ree,
            "method": self.method.value,
        }
