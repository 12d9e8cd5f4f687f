"""Small dense Hermitian linear algebra for two-qubit states.

Everything here works on tiny matrices (2x2, 4x4, at most 8x8 for the
Takagi helper), so the eigensolver is a plain cyclic Jacobi iteration on
Python complex scalars.  It is deterministic and independent of LAPACK.

Basis ordering is |00>, |01>, |10>, |11> with the first qubit as
subsystem A.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ValidationError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
SUPPORT_THRESHOLD = 1e-12
JACOBI_TOL = 1e-14
MAX_SWEEPS = 64
NEGLIGIBLE = 1e-18

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real  # sigma_y (x) sigma_y is real


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.values) @ v.conj().T

    def __iter__(self):
        yield self.values
        yield self.vectors


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    # largest-modulus component made real-positive; first index wins near-ties
    mods = np.abs(vec)
    k = int(np.flatnonzero(mods >= mods.max() - 1e-12)[0])
    if mods[k] == 0.0:
        return vec
    return vec * (abs(vec[k]) / vec[k])


def jacobi_eigh(m, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenSystem:
    """Cyclic complex Jacobi diagonalisation of a small Hermitian matrix.

    The matrix is assumed Hermitian; only the upper triangle drives the
    rotations.  Iteration stops once the off-diagonal Frobenius mass is
    below ``tol * max(1, ||m||_F)``.
    """
    arr = np.asarray(m, dtype=complex)
    n = arr.shape[0]
    a = [[complex(arr[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        a[i][i] = complex(a[i][i].real, 0.0)
        for j in range(i + 1, n):
            a[j][i] = a[i][j].conjugate()
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    scale = max(1.0, math.sqrt(sum(abs(x) ** 2 for row in a for x in row)))
    limit = tol * scale

    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(i + 1, n)))
        if off < limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                mod = abs(apq)
                if mod <= NEGLIGIBLE * scale:
                    # far below the stopping tolerance; also keeps subnormals out of the phase
                    a[p][q] = a[q][p] = 0j
                    continue
                app = a[p][p].real
                aqq = a[q][q].real
                phase = apq / mod
                phase /= abs(phase)
                theta = (aqq - app) / (2.0 * mod)
                t = (1.0 if theta >= 0.0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                gpp, gpq = c, s
                gqp, gqq = -s * phase.conjugate(), c * phase.conjugate()
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = akp * gpp + akq * gqp
                    a[k][q] = akp * gpq + akq * gqq
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = vkp * gpp + vkq * gqp
                    v[k][q] = vkp * gpq + vkq * gqq
                # rows: G^dag applied from the left (gpp, gpq are real)
                cqp, cqq = gqp.conjugate(), gqq.conjugate()
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = gpp * apk + cqp * aqk
                    a[q][k] = gpq * apk + cqq * aqk
                a[p][q] = 0j
                a[q][p] = 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)

    values = np.array([a[i][i].real for i in range(n)])
    vectors = np.array(v, dtype=complex)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for k in range(n):
        vectors[:, k] = _fix_phase(vectors[:, k])
    return EigenSystem(values, vectors)


def check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max |M - M^dag| = {dev:.3e})")


def hermitian_eig(m) -> EigenSystem:
    """Eigen-decomposition of a Hermitian matrix (ascending, phase-fixed)."""
    arr = np.asarray(m, dtype=complex)
    check_hermitian(arr)
    return jacobi_eigh(arr)


def hermitian_function(m, fn, threshold: float | None = None) -> np.ndarray:
    """Apply ``fn`` to the spectrum of ``m``; eigenvalues <= threshold are dropped."""
    es = m.eig if isinstance(m, DensityMatrix) else hermitian_eig(m)
    keep = es.values > threshold if threshold is not None else np.ones(len(es.values), bool)
    vecs = es.vectors[:, keep]
    vals = np.array([fn(x) for x in es.values[keep]])
    out = (vecs * vals) @ vecs.conj().T
    return (out + out.conj().T) / 2


def matrix_log_on_support(m) -> np.ndarray:
    """Natural log restricted to the eigenvalues above ``SUPPORT_THRESHOLD``."""
    return hermitian_function(m, math.log, SUPPORT_THRESHOLD)


def partial_transpose(rho) -> np.ndarray:
    """Transpose on the second qubit: <ij|out|kl> = <il|rho|kj>."""
    m = np.asarray(rho, dtype=complex)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def min_pt_eigenvalue(rho) -> float:
    return float(hermitian_eig(partial_transpose(rho)).values[0])


def takagi(m, tol: float = 1e-13):
    """Takagi factorisation of a complex symmetric matrix: ``m = Q diag(s) Q^T``.

    Returns ``(s, Q)`` with ``s`` descending and ``Q`` unitary.  Built on
    the real symmetric embedding ``[[Re m, Im m], [Im m, -Re m]]``, whose
    positive eigenpairs ``(s, [a; b])`` give columns ``q = a + i b``.  Null
    directions are completed by Gram-Schmidt.  Each column is sign-fixed
    so that its largest-modulus entry has a positive real part (the only
    freedom left for a nondegenerate value).
    """
    m = np.asarray(m, dtype=complex)
    m = (m + m.T) / 2
    r = m.shape[0]
    big = np.block([[m.real, m.imag], [m.imag, -m.real]])
    es = jacobi_eigh(big)
    scale = max(1.0, float(np.max(np.abs(m))) if r else 1.0)
    order = np.argsort(-es.values, kind="stable")
    cols, vals = [], []
    for k in order[:r]:
        if es.values[k] <= tol * scale:
            break
        vec = es.vectors[:, k].real
        cols.append(vec[:r] + 1j * vec[r:])
        vals.append(es.values[k])
    basis = [c / np.linalg.norm(c) for c in cols]
    for e in np.eye(r, dtype=complex):
        if len(basis) == r:
            break
        w = e - sum(np.vdot(b, e) * b for b in basis)
        nrm = np.linalg.norm(w)
        if nrm > 1e-8:
            basis.append(w / nrm)
            vals.append(0.0)
    q = np.array(basis).T if basis else np.zeros((r, 0), complex)
    for k in range(q.shape[1]):
        col = q[:, k]
        j = int(np.argmax(np.abs(col)))
        if col[j].real < 0:
            q[:, k] = -col
    return np.array(vals, dtype=float), q


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated 4x4 two-qubit density matrix.

    Construction rejects (never repairs) inputs that are non-finite,
    non-Hermitian beyond 1e-12, off unit trace by more than 1e-12, or with
    an eigenvalue below -1e-10.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValidationError(f"density matrix must be 4x4, got shape {m.shape}")
        check_hermitian(m)
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace must be 1, got {tr.real:.15g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        lo = self.eig.values[0]
        if lo < -PSD_TOL:
            raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})")

    @cached_property
    def eig(self) -> EigenSystem:
        return jacobi_eigh(self.matrix)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(\n{np.array2string(self.matrix, precision=6, suppress_small=True)})"

    @classmethod
    def maximally_mixed(cls) -> DensityMatrix:
        return cls(np.eye(4) / 4)

    @classmethod
    def from_vector(cls, psi) -> DensityMatrix:
        v = np.asarray(psi, dtype=complex).reshape(4)
        return cls(np.outer(v, v.conj()))

    def partial_transpose(self) -> np.ndarray:
        return partial_transpose(self.matrix)

    def min_pt_eigenvalue(self) -> float:
        return min_pt_eigenvalue(self.matrix)

    def rank(self, threshold: float = SUPPORT_THRESHOLD) -> int:
        return int(np.sum(self.eig.values > threshold))

    def distance(self, other) -> float:
        """Frobenius distance to another state or array."""
        return float(np.linalg.norm(self.matrix - np.asarray(other)))


def as_density(x) -> DensityMatrix:
    return x if isinstance(x, DensityMatrix) else DensityMatrix(np.asarray(x, dtype=complex))
