"""Explicit Schmidt decomposition of a two-qubit pure state.

The generic branch builds the bases from closed expressions in the
amplitudes: the eigenvectors ``(x, y)`` of the reduced state on B and a
2x2 matrix ``u`` that maps them onto A.  Those expressions are 0/0 when
the state is already Schmidt-aligned or maximally entangled and lose all
precision when the smaller Schmidt weight vanishes, so those cases fall
back to diagonalising the reduced state on A directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import PureState, as_pure, binary_entropy, concurrence_pure
from .qcore import DensityMatrix, jacobi_eigh

NORMALIZER_FLOOR = 1e-4
WEIGHT_FLOOR = 1e-12
BRANCH_WEIGHT_FLOOR = 1e-8  # generic branch amplifies rounding by 1/sqrt(lambda_minus)


@dataclass(frozen=True, eq=False)
class SchmidtData:
    """Schmidt weights, intermediate quantities and bases of one pure state.

    ``psi = sqrt(lambda_plus) |0_A 0_B> + sqrt(lambda_minus) |1_A 1_B>``.
    ``basis_a[i]`` is column ``i`` of ``v``; ``basis_b[i]`` is row ``i`` of ``w``.
    """

    lambda_plus: float
    lambda_minus: float
    x_plus: complex
    x_minus: complex
    y_plus: complex
    y_minus: complex
    n_plus: float
    n_minus: float
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    basis_a: tuple[np.ndarray, np.ndarray]
    basis_b: tuple[np.ndarray, np.ndarray]
    degenerate: bool

    @property
    def weights(self) -> tuple[float, float]:
        return self.lambda_plus, self.lambda_minus

    def reconstruct(self) -> np.ndarray:
        out = np.zeros(4, dtype=complex)
        for lam, a, b in zip(self.weights, self.basis_a, self.basis_b):
            out += math.sqrt(lam) * np.kron(a, b)
        return out


def _weights(amps: np.ndarray) -> tuple[float, float]:
    # sqrt(1 - C^2) from the reduced state on B, stable near C = 1
    a1, a2, a3, a4 = amps
    gap = abs(a1) ** 2 + abs(a3) ** 2 - abs(a2) ** 2 - abs(a4) ** 2
    off = a1.conjugate() * a2 + a3.conjugate() * a4
    root = min(1.0, math.sqrt(gap * gap + 4.0 * abs(off) ** 2))
    lp = (1.0 + root) / 2.0
    # lambda_minus = C^2 / (4 lambda_plus) avoids cancellation for small C
    c = concurrence_pure(PureState(amps))
    lm = c * c / (4.0 * lp)
    return lp, lm


def _reduced_fallback(psi: np.ndarray, lp: float, lm: float, nums) -> SchmidtData:
    m = psi.reshape(2, 2)
    es = jacobi_eigh(m @ m.conj().T)
    a_vecs = [es.vectors[:, 1], es.vectors[:, 0]]  # descending weight
    b0 = a_vecs[0].conj() @ m
    b0 = b0 / np.linalg.norm(b0)
    # keep the phase of the minor term even when its weight is tiny
    b1 = a_vecs[1].conj() @ m
    b1 = b1 - np.vdot(b0, b1) * b0
    n1 = np.linalg.norm(b1)
    if n1 > 1e-300:
        b1 = b1 / n1
    else:
        b1 = np.array([-b0[1].conjugate(), b0[0].conjugate()])
    w = np.array([b0, b1])
    v = np.array(a_vecs).T
    f = w.conj().T  # columns (x_i, y_i)
    u = v @ f.conj().T
    return SchmidtData(
        lambda_plus=lp,
        lambda_minus=lm,
        x_plus=complex(f[0, 0]),
        x_minus=complex(f[0, 1]),
        y_plus=complex(f[1, 0]),
        y_minus=complex(f[1, 1]),
        n_plus=nums[0],
        n_minus=nums[1],
        u=u,
        v=v,
        w=w,
        basis_a=(v[:, 0].copy(), v[:, 1].copy()),
        basis_b=(b0, b1),
        degenerate=True,
    )


def schmidt_decompose(psi) -> SchmidtData:
    """Schmidt data for a normalised pure state (generic branch or fallback)."""
    state = as_pure(psi)
    a1, a2, a3, a4 = state.amplitudes
    lp, lm = _weights(state.amplitudes)
    off = a1.conjugate() * a2 + a3.conjugate() * a4
    pop = abs(a1) ** 2 + abs(a3) ** 2
    norms = tuple(math.sqrt(abs(off) ** 2 + (lam - pop) ** 2) for lam in (lp, lm))
    if min(norms) < NORMALIZER_FLOOR or lm < BRANCH_WEIGHT_FLOOR:
        return _reduced_fallback(state.amplitudes, lp, lm, norms)

    xp, xm = off / norms[0], off / norms[1]
    yp, ym = (lp - pop) / norms[0], (lm - pop) / norms[1]
    sp, sm = math.sqrt(lp), math.sqrt(lm)
    pxx = abs(xp) ** 2 / sp + abs(xm) ** 2 / sm
    pyx = xp.conjugate() * yp / sp + xm.conjugate() * ym / sm
    pxy = xp * yp.conjugate() / sp + xm * ym.conjugate() / sm
    pyy = abs(yp) ** 2 / sp + abs(ym) ** 2 / sm
    u = np.array(
        [
            [a1 * pxx + a2 * pyx, a1 * pxy + a2 * pyy],
            [a3 * pxx + a4 * pyx, a3 * pxy + a4 * pyy],
        ]
    )
    v = u @ np.array([[xp, xm], [yp, ym]])
    w = np.array([[xp, yp], [xm, ym]]).conj()
    return SchmidtData(
        lambda_plus=lp,
        lambda_minus=lm,
        x_plus=complex(xp),
        x_minus=complex(xm),
        y_plus=complex(yp),
        y_minus=complex(ym),
        n_plus=norms[0],
        n_minus=norms[1],
        u=u,
        v=v,
        w=w,
        basis_a=(v[:, 0].copy(), v[:, 1].copy()),
        basis_b=(w[0].copy(), w[1].copy()),
        degenerate=False,
    )


def css_matrix(psi) -> np.ndarray:
    data = schmidt_decompose(psi)
    out = np.zeros((4, 4), dtype=complex)
    for lam, a, b in zip(data.weights, data.basis_a, data.basis_b):
        if lam == 0.0:
            continue
        prod = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        out += lam * np.outer(prod, prod.conj())
    return (out + out.conj().T) / 2


def css_pure(psi) -> DensityMatrix:
    """Closest separable state of a pure state: its Schmidt-diagonal dephasing."""
    return DensityMatrix(css_matrix(psi))


def ree_pure(psi) -> float:
    data = schmidt_decompose(psi)
    return binary_entropy(min(1.0, data.lambda_plus))


__all__ = ["SchmidtData", "schmidt_decompose", "css_pure", "css_matrix", "ree_pure", "PureState"]
