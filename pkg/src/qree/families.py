"""Five parameterised two-qubit families with closed-form closest separable states.

Each ``*Spec`` dataclass validates its parameters and exposes the derived
intermediates as read-only properties, so tests can check them against
hand evaluation.  The family functions assemble the state, its closed-form
CSS and REE, and the explicit optimal ensemble.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import SeparableStateError, ValidationError
from .measures import PureState, binary_entropy, relative_entropy
from .qcore import DensityMatrix, min_pt_eigenvalue
from .wootters import Ensemble

SUM_TOL = 1e-12

KET = np.eye(4, dtype=complex)
BELL = (
    (KET[0] + KET[3]) / math.sqrt(2),
    (KET[0] - KET[3]) / math.sqrt(2),
    (KET[1] + KET[2]) / math.sqrt(2),
    (KET[1] - KET[2]) / math.sqrt(2),
)
# sign of <beta_j| S |beta_j*> for the spin flip S = sigma_y (x) sigma_y
BELL_FLIP_SIGN = (-1, 1, 1, -1)
HADAMARD_SIGNS = (
    (1, 1, 1, 1),
    (1, 1, -1, -1),
    (1, -1, 1, -1),
    (1, -1, -1, 1),
)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0.0 else 0.0


def _check_weights(values, count: int, label: str) -> None:
    if len(values) != count:
        raise ValidationError(f"{label} needs {count} weights")
    if any(not math.isfinite(v) for v in values):
        raise ValidationError(f"{label} weights must be finite")
    if any(v < 0.0 for v in values):
        raise ValidationError(f"{label} weights must be non-negative")
    if abs(sum(values) - 1.0) > SUM_TOL:
        raise ValidationError(f"{label} weights must sum to 1, got {sum(values):.15g}")


def _density(m: np.ndarray) -> DensityMatrix:
    m = np.asarray(m, dtype=complex)
    return DensityMatrix((m + m.conj().T) / 2)


@dataclass(frozen=True)
class FamilyCase:
    """A family instance: the state, its CSS and REE, and an explicit ensemble."""

    name: str
    rho: DensityMatrix
    css: DensityMatrix
    ree: float
    ensemble: Ensemble | None

    def __iter__(self):
        yield from (self.rho, self.css, self.ree, self.ensemble)


# --------------------------------------------------------------------------- Bell-diagonal


@dataclass(frozen=True)
class BellDiagonalSpec:
    """Mixture of the four Bell states with weights ``lambda1..lambda4``.

    Intermediates ``mu``, ``nu_*``, ``d_*``, ``n_*`` are evaluated in the
    canonical frame where the dominant weight sits in slot 3.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float

    def __post_init__(self):
        _check_weights(self.weights, 4, "Bell-diagonal")

    @property
    def weights(self) -> tuple[float, float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3, self.lambda4)

    @property
    def dominant(self) -> int:
        w = self.weights
        return max(range(4), key=lambda j: (w[j], -j))

    @property
    def lambda_max(self) -> float:
        return self.weights[self.dominant]

    @property
    def entangled(self) -> bool:
        return self.lambda_max > 0.5

    @property
    def canonical(self) -> tuple[float, float, float, float]:
        w = list(self.weights)
        k = self.dominant
        w[k], w[2] = w[2], w[k]
        return tuple(w)

    @property
    def mu(self) -> complex:
        l1, l2, _, _ = self.canonical
        return complex(math.sqrt(l1), math.sqrt(l2))

    def _nu(self, sign: int) -> float:
        _, _, l3, l4 = self.canonical
        return 2 * (1 - l3) * math.sqrt(l3) + sign * math.sqrt(l4)

    def _d(self, sign: int) -> float:
        _, _, l3, l4 = self.canonical
        return (1 - l3 + l4) + sign * 4 * (1 - l3) * math.sqrt(l3 * l4)

    def _n(self, sign: int) -> float:
        _, _, l3, l4 = self.canonical
        return math.sqrt(2 * math.sqrt(1 - l3) * (math.sqrt(1 - l3) + sign * math.sqrt(l4)))

    nu_plus = property(lambda self: self._nu(1))
    nu_minus = property(lambda self: self._nu(-1))
    d_plus = property(lambda self: self._d(1))
    d_minus = property(lambda self: self._d(-1))
    n_plus = property(lambda self: self._n(1))
    n_minus = property(lambda self: self._n(-1))

    @property
    def schmidt_weights(self) -> tuple[float, float]:
        l3 = self.lambda_max
        return tuple((math.sqrt(l3) + s * math.sqrt(1 - l3)) ** 2 / 2 for s in (1, -1))

    def rho(self) -> np.ndarray:
        return sum(w * projector(b) for w, b in zip(self.weights, BELL))

    def css(self) -> np.ndarray:
        lmax, k = self.lambda_max, self.dominant
        coef = [w / (2 * (1 - lmax)) for w in self.weights]
        coef[k] = 0.5
        return sum(c * projector(b) for c, b in zip(coef, BELL))

    def ree(self) -> float:
        return math.log(2) - binary_entropy(self.lambda_max)

    def member_vectors(self) -> list[np.ndarray]:
        """Four equal-weight members; in the canonical frame the phases are (1, i, 1, 1)."""
        k = self.dominant
        phase = [
            1.0 if BELL_FLIP_SIGN[j] * (1 if j == k else -1) > 0 else 1j for j in range(4)
        ]
        out = []
        for signs in HADAMARD_SIGNS:
            # the canonical frame reorders the sign pattern together with the weights
            perm = list(range(4))
            perm[k], perm[2] = perm[2], perm[k]
            v = sum(
                signs[perm[j]] * phase[j] * math.sqrt(self.weights[j]) * BELL[j] for j in range(4)
            )
            out.append(v)
        return out

    def member1_css_matrix(self) -> np.ndarray:
        """Closed-form CSS of the first canonical member (canonical slot 3 dominant)."""
        mu, mc = self.mu, self.mu.conjugate()
        nup, num, dp, dm = self.nu_plus, self.nu_minus, self.d_plus, self.d_minus
        l3 = self.canonical[2]
        m = np.array(
            [
                [mu * mc, mu * nup, mu * num, mu * mu],
                [mc * nup, dp, mu * mc, mu * nup],
                [mc * num, mu * mc, dm, mu * num],
                [mc * mc, mc * nup, mc * num, mu * mc],
            ]
        )
        return m / (4 * (1 - l3))

    def member1_schmidt_bases(self):
        """(|0_A>, |1_A>, |0_B>, |1_B>) of the first canonical member."""
        l1, l2, l3, l4 = self.canonical
        s1, s4 = math.sqrt(1 - l3), math.sqrt(l4)
        z = complex(math.sqrt(l1), -math.sqrt(l2))
        np_, nm = self.n_plus, self.n_minus
        a0 = np.array([s1 + s4, z]) / np_
        a1 = -np.array([s1 - s4, -z]) / nm
        b0 = np.array([z.conjugate(), s1 + s4]) / np_
        b1 = np.array([z.conjugate(), -(s1 - s4)]) / nm
        return a0, a1, b0, b1

    def sigma_tilde(self) -> np.ndarray:
        """Equal-weight mixture of the member CSSs, canonical frame mapped back."""
        l1, l2, l3, l4 = self.canonical
        m = np.array(
            [
                [l1 + l2, 0, 0, l1 - l2],
                [0, 1 - l3 + l4, l1 + l2, 0],
                [0, l1 + l2, 1 - l3 + l4, 0],
                [l1 - l2, 0, 0, l1 + l2],
            ],
            dtype=complex,
        ) / (4 * (1 - l3))
        k = self.dominant
        if k == 2:
            return m
        # rewrite in the Bell basis and swap slots k and 3 back
        basis = np.array(BELL).T
        bell = basis.conj().T @ m @ basis
        perm = list(range(4))
        perm[k], perm[2] = perm[2], perm[k]
        bell = bell[np.ix_(perm, perm)]
        return basis @ bell @ basis.conj().T


def bell_diagonal(spec: BellDiagonalSpec) -> FamilyCase:
    if not spec.entangled:
        raise SeparableStateError(
            "Bell-diagonal state is separable unless its largest weight exceeds 1/2"
        )
    ens = Ensemble(
        (0.25,) * 4, tuple(PureState(v) for v in spec.member_vectors())
    )
    return FamilyCase("bell_diagonal", _density(spec.rho()), _density(spec.css()), spec.ree(), ens)


# --------------------------------------------------------------------------- GVP


@dataclass(frozen=True)
class GvpSpec:
    """``lambda1 |beta3><beta3| + lambda2 |01><01| + lambda3 |10><10|``."""

    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        _check_weights((self.lambda1, self.lambda2, self.lambda3), 3, "GVP")

    @property
    def r(self) -> float:
        return math.hypot(self.lambda1, self.lambda2 - self.lambda3)

    @property
    def big_lambda_plus(self) -> float:
        return (1 + self.r) / 2

    @property
    def big_lambda_minus(self) -> float:
        return (1 - self.r) / 2

    @property
    def a(self) -> float:
        return self.lambda1 * self.big_lambda_plus / self.r

    @property
    def b(self) -> float:
        return -(self.lambda2 - self.lambda3) * math.sqrt(
            self.big_lambda_plus * self.big_lambda_minus
        ) / self.r

    @property
    def c(self) -> float:
        return -self.lambda1 * self.big_lambda_minus / self.r

    @property
    def omega(self) -> float:
        amc, t = self.a - self.c, math.hypot(self.a - self.c, 2 * self.b)
        return math.sqrt(max(0.0, 2 * (t * t - amc * t)))

    @property
    def n(self) -> float:
        return math.sqrt(2 * self.r * (self.r + self.lambda2 - self.lambda3))

    def eigvecs(self) -> tuple[np.ndarray, np.ndarray]:
        """Normalised eigenvectors for the nonzero eigenvalues (plus, minus)."""
        k = self.r + self.lambda2 - self.lambda3
        plus = (k * KET[1] + self.lambda1 * KET[2]) / self.n
        minus = (self.lambda1 * KET[1] - k * KET[2]) / self.n
        return plus, minus

    def v_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        plus, minus = self.eigvecs()
        return (
            math.sqrt(self.big_lambda_plus) * plus,
            math.sqrt(max(0.0, self.big_lambda_minus)) * minus,
        )

    def rho(self) -> np.ndarray:
        return (
            self.lambda1 * projector(BELL[2])
            + self.lambda2 * projector(KET[1])
            + self.lambda3 * projector(KET[2])
        )

    def css(self) -> np.ndarray:
        return (self.lambda1 / 2 + self.lambda2) * projector(KET[1]) + (
            self.lambda1 / 2 + self.lambda3
        ) * projector(KET[2])

    def ree(self) -> float:
        return binary_entropy(self.lambda1 / 2 + self.lambda2) - binary_entropy(
            min(1.0, self.big_lambda_plus)
        )

    def member_vectors(self) -> list[np.ndarray]:
        """The equal-weight pair (v+ + i v-, v+ - i v-) with its unit-modulus prefactors.

        Both members have the closest separable state of the mixture, but
        their concurrence is sqrt((a - c)^2 + 4 b^2) rather than that of the
        mixed state, so the pair is not EOF-optimal.
        """
        vp, vm = self.v_vectors()
        amc = self.a - self.c
        k = math.hypot(amc, 2 * self.b) - amc
        om = self.omega
        out = []
        for s in (1, -1):
            pref = -1j * complex(2 * self.b, -s * k) / om if om > 1e-300 else 1.0
            out.append(pref * (vp + s * 1j * vm))
        return out


def gvp(spec: GvpSpec) -> FamilyCase:
    if spec.lambda1 <= 0.0:
        raise SeparableStateError("GVP state with lambda1 = 0 is diagonal and separable")
    ens = Ensemble((0.5, 0.5), tuple(PureState.normalized(v) for v in spec.member_vectors()))
    return FamilyCase("gvp", _density(spec.rho()), _density(spec.css()), spec.ree(), ens)


# --------------------------------------------------------------------------- generalised Horodecki


@dataclass(frozen=True)
class GenHorodeckiSpec:
    """``lambda1 |beta3><beta3| + lambda2 |00><00| + lambda3 |11><11|``."""

    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        _check_weights((self.lambda1, self.lambda2, self.lambda3), 3, "generalized Horodecki")

    @property
    def entangled(self) -> bool:
        return self.lambda1 > 2 * math.sqrt(self.lambda2 * self.lambda3)

    @property
    def r(self) -> float:
        return math.sqrt(2 * self.lambda1 + (math.sqrt(self.lambda2) - math.sqrt(self.lambda3)) ** 2)

    def _ab(self, first: float) -> float:
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        return (
            math.sqrt(2 * l1)
            / (4 * self.r**2)
            * (2 * math.sqrt(first) + (math.sqrt(l2) + math.sqrt(l3)) * (l1 - 2 * math.sqrt(l2 * l3)))
        )

    @property
    def cal_a(self) -> float:
        return self._ab(self.lambda2)

    @property
    def cal_b(self) -> float:
        return self._ab(self.lambda3)

    @property
    def x(self) -> float:
        """Weight of sigma_tilde in the boundary mixture x sigma_tilde + (1 - x) rho."""
        l1 = self.lambda1
        return self.r**2 / (2 * l1) * (l1 + 2 * math.sqrt(self.lambda2 * self.lambda3))

    @property
    def schmidt_weights(self) -> tuple[float, float]:
        s = math.sqrt(self.lambda2) + math.sqrt(self.lambda3)
        return ((self.r + s) / 2) ** 2, ((self.r - s) / 2) ** 2

    def phi(self, theta: float) -> np.ndarray:
        e = cmath.exp(1j * theta)
        return (
            math.sqrt(self.lambda1) * BELL[2]
            + math.sqrt(self.lambda2) * e * KET[0]
            + math.sqrt(self.lambda3) / e * KET[3]
        )

    def schmidt_bases(self, theta: float):
        """(|0_A>, |1_A>, |0_B>, |1_B>) of phi(theta)."""
        l1, r = self.lambda1, self.r
        dd = math.sqrt(self.lambda2) - math.sqrt(self.lambda3)
        e = cmath.exp(1j * theta)
        a0 = np.array([math.sqrt(l1 / (r * (r - dd))), math.sqrt((r - dd) / (2 * r)) / e])
        a1 = np.array([-math.sqrt(l1 / (r * (r + dd))), math.sqrt((r + dd) / (2 * r)) / e])
        return a0, a1, e * a0, -e * a1

    def sigma_phi(self, theta: float) -> np.ndarray:
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        q = l1 / (2 * self.r**2)
        ca, cb = self.cal_a, self.cal_b
        e = cmath.exp(1j * theta)
        return np.array(
            [
                [(l1 + 2 * l2) / 2 - q, ca * e, ca * e, q * e * e],
                [ca / e, q, q, cb * e],
                [ca / e, q, q, cb * e],
                [q / (e * e), cb / e, cb / e, (l1 + 2 * l3) / 2 - q],
            ]
        )

    def sigma_tilde(self) -> np.ndarray:
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        q = l1 / (2 * self.r**2)
        m = np.diag([(l1 + 2 * l2) / 2 - q, q, q, (l1 + 2 * l3) / 2 - q]).astype(complex)
        m[1, 2] = m[2, 1] = q
        return m

    def rho(self) -> np.ndarray:
        return (
            self.lambda1 * projector(BELL[2])
            + self.lambda2 * projector(KET[0])
            + self.lambda3 * projector(KET[3])
        )

    def css(self) -> np.ndarray:
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        return (
            (l1 + 2 * l2) * (l1 + 2 * l3) / 2 * projector(BELL[2])
            + (l1 + 2 * l2) ** 2 / 4 * projector(KET[0])
            + (l1 + 2 * l3) ** 2 / 4 * projector(KET[3])
        )

    def ree(self) -> float:
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        return (
            _xlogx(l1)
            + _xlogx(l2)
            + _xlogx(l3)
            + 2 * binary_entropy(min(1.0, l1 / 2 + l2))
            - l1 * math.log(2)
        )

    def member_vectors(self) -> list[np.ndarray]:
        return [self.phi(2 * math.pi * k / 3) for k in range(3)]


def gen_horodecki(spec: GenHorodeckiSpec) -> FamilyCase:
    if not spec.entangled:
        raise SeparableStateError(
            "generalized Horodecki state is separable unless lambda1 > 2 sqrt(lambda2 lambda3)"
        )
    ens = Ensemble((1 / 3, 1 / 3, 1 / 3), tuple(PureState.normalized(v) for v in spec.member_vectors()))
    return FamilyCase("gen_horodecki", _density(spec.rho()), _density(spec.css()), spec.ree(), ens)


# --------------------------------------------------------------------------- vp-type (|01>, |10> block)


@dataclass(frozen=True)
class VpTypeSpec:
    """``A2 |01><01| + A3 |10><10| + D (|01><10| + |10><01|)``."""

    a2: float
    a3: float
    d: float

    def __post_init__(self):
        vals = (self.a2, self.a3, self.d)
        if any(not math.isfinite(v) for v in vals):
            raise ValidationError("parameters must be finite")
        if abs(self.a2 + self.a3 - 1.0) > SUM_TOL:
            raise ValidationError(f"A2 + A3 must equal 1, got {self.a2 + self.a3:.15g}")
        if self.a3 < 0.0 or self.a2 < self.a3:
            raise ValidationError("need A2 >= A3 >= 0")
        if self.d < 0.0 or self.d > math.sqrt(self.a2 * self.a3) + SUM_TOL:
            raise ValidationError("need 0 <= D <= sqrt(A2 A3)")

    @property
    def r(self) -> float:
        return math.hypot(self.a2 - self.a3, 2 * self.d)

    @property
    def theta(self) -> float:
        return 0.5 * math.atan2(2 * self.d, self.a2 - self.a3)

    @property
    def lambda1(self) -> float:
        return (self.a2 + self.a3 + self.r) / 2

    @property
    def lambda2(self) -> float:
        return max(0.0, (self.a2 + self.a3 - self.r) / 2)

    def eigvecs(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return c * KET[1] + s * KET[2], s * KET[1] - c * KET[2]

    @property
    def root(self) -> float:
        """sqrt(1 - 4 D^2)."""
        return math.sqrt(max(0.0, 1 - 4 * self.d**2))

    @property
    def p1(self) -> float:
        return 0.5 * (1 + (self.a2 - self.a3) / self.root) if self.root > 0 else 0.5

    @property
    def p2(self) -> float:
        return 1.0 - self.p1

    def _xi(self, sign: int) -> float:
        return self.r * math.sqrt(self.a2 * self.a3) + sign * self.d * (self.a2 + self.a3)

    def _eta(self, sign: int) -> float:
        return math.sqrt(self.a2 * self.a3) * self.root + sign * self.d * (self.a2 - self.a3)

    def _y(self, sign: int) -> float:
        return math.sqrt(max(0.0, 2 * self.a2 * self.a3 * self.r * (self.root + sign * (self.a2 - self.a3))))

    xi_plus = property(lambda self: self._xi(1))
    xi_minus = property(lambda self: self._xi(-1))
    eta_plus = property(lambda self: self._eta(1))
    eta_minus = property(lambda self: self._eta(-1))
    cal_y_plus = property(lambda self: self._y(1))
    cal_y_minus = property(lambda self: self._y(-1))

    def _s(self) -> tuple[float, float]:
        sq = lambda x: math.sqrt(max(0.0, x))  # noqa: E731
        xp, xm, ep, em = self.xi_plus, self.xi_minus, self.eta_plus, self.eta_minus
        return sq(xp * ep) + sq(xm * em), sq(xp * em) - sq(xm * ep)

    @property
    def is_pure(self) -> bool:
        return self.lambda2 <= 1e-12

    def member_vectors(self) -> list[np.ndarray]:
        v1, v2 = self.eigvecs()
        if self.is_pure:
            return [v1]
        s1, s2 = self._s()
        r1, r2 = math.sqrt(self.lambda1), math.sqrt(self.lambda2)
        out = [(s1 * r1 * v1 + s2 * r2 * v2) / self.cal_y_plus]
        if self.cal_y_minus > 1e-12:
            out.append((s2 * r1 * v1 - s1 * r2 * v2) / self.cal_y_minus)
        return out

    def member_css(self) -> list[np.ndarray]:
        """Diagonal CSSs of the two members in closed form."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        if self.is_pure:
            return [np.diag([0, c * c, s * s, 0]).astype(complex)]
        s1, s2 = self._s()
        r1, r2 = math.sqrt(self.lambda1), math.sqrt(self.lambda2)
        yp, ym = self.cal_y_plus, self.cal_y_minus
        out = [
            np.diag([0, ((c * r1 * s1 + s * r2 * s2) / yp) ** 2, ((s * r1 * s1 - c * r2 * s2) / yp) ** 2, 0])
        ]
        if ym > 1e-12:
            out.append(
                np.diag([0, ((c * r1 * s2 - s * r2 * s1) / ym) ** 2, ((s * r1 * s2 + c * r2 * s1) / ym) ** 2, 0])
            )
        return [m.astype(complex) for m in out]

    def rho(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        m[1, 1], m[2, 2] = self.a2, self.a3
        m[1, 2] = m[2, 1] = self.d
        return m

    def css(self) -> np.ndarray:
        return np.diag([0, self.a2, self.a3, 0]).astype(complex)


def vp_type(spec: VpTypeSpec) -> FamilyCase:
    rho = _density(spec.rho())
    if spec.d == 0.0:
        return FamilyCase("vp_type", rho, rho, 0.0, None)
    css = _density(spec.css())
    vecs = spec.member_vectors()
    weights = (spec.p1, spec.p2) if len(vecs) == 2 else (1.0,)
    ens = Ensemble(weights, tuple(PureState.normalized(v) for v in vecs))
    return FamilyCase("vp_type", rho, css, relative_entropy(rho, css), ens)


# --------------------------------------------------------------------------- Horodecki type


@dataclass(frozen=True)
class HorodeckiTypeSpec:
    """X-shaped state diag(A1, A, A, A4) with coherence D between |01> and |10>."""

    a1: float
    a4: float
    a: float
    d: float

    def __post_init__(self):
        vals = (self.a1, self.a4, self.a, self.d)
        if any(not math.isfinite(v) for v in vals):
            raise ValidationError("parameters must be finite")
        if min(vals) < 0.0:
            raise ValidationError("parameters must be non-negative")
        if abs(self.a1 + self.a4 + 2 * self.a - 1.0) > SUM_TOL:
            raise ValidationError("need A1 + A4 + 2 A = 1")
        if self.d > self.a + SUM_TOL:
            raise ValidationError("need D <= A for a valid state")

    @property
    def entangled(self) -> bool:
        return self.d > math.sqrt(self.a1 * self.a4)

    @property
    def cal_c(self) -> float:
        """Concurrence 2 (D - sqrt(A1 A4))."""
        return 2 * (self.d - math.sqrt(self.a1 * self.a4))

    @property
    def k(self) -> float:
        """1 - C^2."""
        return 1 - self.cal_c**2

    def _z(self, sign: int) -> float:
        sk = math.sqrt(self.k)
        root = math.sqrt(max(0.0, self.a**2 - self.d**2))
        return math.sqrt(max(0.0, 0.5 * sk * (sk - sign * (self.a1 - self.a4) + sign * 2 * root)))

    cal_z_plus = property(lambda self: self._z(1))
    cal_z_minus = property(lambda self: self._z(-1))

    def _require_k(self) -> float:
        if self.k <= 1e-12:
            raise ValidationError("concurrence 1 corner: mixture coefficients are undefined")
        return self.k

    def _base(self) -> tuple[float, float]:
        c = self.cal_c
        sp, sm = math.sqrt(self.a1) + math.sqrt(self.a4), math.sqrt(self.a1) - math.sqrt(self.a4)
        return (1 + c) * sp**2 + (1 - c) * sm**2, 2 * self.k * (self.a1 - self.a4)

    @property
    def mix_a1(self) -> float:
        base, extra = self._base()
        return (base + extra) / (4 * self._require_k())

    @property
    def mix_a4(self) -> float:
        base, extra = self._base()
        return (base - extra) / (4 * self._require_k())

    @property
    def mix_a(self) -> float:
        c = self.cal_c
        return ((1 + c) * (self.a - self.d) + (1 - c) * (self.a + self.d)) / (2 * self._require_k())

    @property
    def mix_d(self) -> float:
        return (2 * self.a * math.sqrt(self.a1 * self.a4) + self.d * (self.a1 + self.a4)) / self._require_k()

    @property
    def f(self) -> float:
        c = self.cal_c
        return c * (self.d - self.a * c)

    @property
    def g(self) -> float:
        c = self.cal_c
        return c * (c * self.d - self.a)

    def boundary_roots(self) -> list[float]:
        """Real roots of the quadratic boundary condition, ascending."""
        k = self._require_k()
        u, v = self.f / k, self.g / k
        c2 = u * u - v * v
        c1 = u * (self.a1 + self.a4) - 2 * v * self.d
        c0 = self.a1 * self.a4 - self.d**2
        if abs(c2) < 1e-15:
            return [-c0 / c1] if c1 != 0 else []
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return []
        sq = math.sqrt(disc)
        q = -0.5 * (c1 + math.copysign(sq, c1))
        roots = [q / c2, c0 / q] if q != 0 else [-c1 / (2 * c2)]
        return sorted(roots)

    @cached_property
    def x_star(self) -> float:
        """Largest root in [0, 1] whose mixture is PPT, i.e. the one closest to Pi_tilde."""
        tilde, rho = self.pi_tilde(), self.rho()
        ok = []
        for x in self.boundary_roots():
            if -1e-12 <= x <= 1 + 1e-12:
                x = min(1.0, max(0.0, x))
                if min_pt_eigenvalue(x * tilde + (1 - x) * rho) >= -1e-9:
                    ok.append(x)
        if not ok:
            raise ValidationError("boundary condition has no admissible root in [0, 1]")
        return max(ok)

    # closed-form CSS, with the off-diagonal block entry A in the A2 slot
    @property
    def cal_f(self) -> float:
        s = self.a1 + self.a + self.a4
        return 2 * (s + self.d) * (s - self.d)

    @property
    def delta(self) -> float:
        a1, a4, a2, d = self.a1, self.a4, self.a, self.d
        return d * math.sqrt(d * d * (a1 - a4) ** 2 + 4 * a1 * a4 * (a1 + a2) * (a2 + a4))

    @property
    def r1(self) -> float:
        a1, a4, a2, d = self.a1, self.a4, self.a, self.d
        return (2 * a1 * (a1 + a2) * (a1 + a2 + a4) - d * d * (a1 - a4) + self.delta) / self.cal_f

    @property
    def r4(self) -> float:
        a1, a4, a2, d = self.a1, self.a4, self.a, self.d
        return (2 * a4 * (a2 + a4) * (a1 + a2 + a4) + d * d * (a1 - a4) + self.delta) / self.cal_f

    @property
    def r(self) -> float:
        a1, a4, a2, d = self.a1, self.a4, self.a, self.d
        return (
            2 * (a1 + a2) * (a2 + a4) * (a1 + a2 + a4) - d * d * (a1 + 2 * a2 + a4) - self.delta
        ) / self.cal_f

    @property
    def y(self) -> float:
        return math.sqrt(max(0.0, self.r1 * self.r4))

    @staticmethod
    def _x_matrix(m1: float, m: float, off: float, m4: float) -> np.ndarray:
        out = np.diag([m1, m, m, m4]).astype(complex)
        out[1, 2] = out[2, 1] = off
        return out

    def rho(self) -> np.ndarray:
        return self._x_matrix(self.a1, self.a, self.d, self.a4)

    def pi_tilde(self) -> np.ndarray:
        return self._x_matrix(self.mix_a1, self.mix_a, self.mix_d, self.mix_a4)

    def pi_star(self, x: float | None = None) -> np.ndarray:
        x = self.x_star if x is None else x
        return x * self.pi_tilde() + (1 - x) * self.rho()

    def true_css(self) -> np.ndarray:
        return self._x_matrix(self.r1, self.r, self.y, self.r4)

    def varphi(self, theta: float, branch: int) -> np.ndarray:
        """Members: branch +1 and -1 differ by the sign of the |beta4> component."""
        e = cmath.exp(1j * theta)
        return (
            math.sqrt(self.a + self.d) * BELL[2]
            + branch * math.sqrt(self.a - self.d) * BELL[3]
            + e * math.sqrt(self.a1) * KET[0]
            + math.sqrt(self.a4) / e * KET[3]
        )

    def schmidt_bases(self, theta: float):
        """(|0_A>, |1_A>, |0_B>, |1_B>) of varphi(theta, +1)."""
        c = self.cal_c
        sa1, sa4 = math.sqrt(self.a1), math.sqrt(self.a4)
        spd, smd = math.sqrt(self.a + self.d), math.sqrt(self.a - self.d)
        cp, cm = math.sqrt(1 + c), math.sqrt(1 - c)
        sk = math.sqrt(self.k)
        root = math.sqrt(max(0.0, self.a**2 - self.d**2))
        e = cmath.exp(1j * theta)
        zp, zm = 2 * self.cal_z_plus, 2 * self.cal_z_minus
        a0 = np.array([math.sqrt(2) * (smd * cp + spd * cm), ((sa1 + sa4) * cp - (sa1 - sa4) * cm) / e]) / zp
        a1 = np.array([math.sqrt(2) * (smd * cp - spd * cm), ((sa1 + sa4) * cp + (sa1 - sa4) * cm) / e]) / zm
        top = math.sqrt(2) * e * (spd * (sa1 + sa4) + smd * (sa1 - sa4))
        b0 = np.array([top, -(self.a1 - self.a4) + 2 * root + sk]) / zp
        b1 = np.array([top, -(self.a1 - self.a4) + 2 * root - sk]) / zm
        return a0, a1, b0, b1

    def sigma1(self, theta: float) -> np.ndarray:
        c = self.cal_c
        lp = ((math.sqrt(1 + c) + math.sqrt(1 - c)) / 2) ** 2
        lm = ((math.sqrt(1 + c) - math.sqrt(1 - c)) / 2) ** 2
        a0, a1, b0, b1 = self.schmidt_bases(theta)
        return lp * projector(np.kron(a0, b0)) + lm * projector(np.kron(a1, b1))

    def member_vectors(self) -> list[np.ndarray]:
        return [
            self.varphi(0.0, 1),
            self.varphi(math.pi, 1),
            self.varphi(math.pi / 2, -1),
            self.varphi(-math.pi / 2, -1),
        ]


@dataclass(frozen=True)
class HorodeckiTypeCase:
    rho: DensityMatrix
    procedure_css_candidate: DensityMatrix
    true_css: DensityMatrix
    ensemble: Ensemble
    pi_tilde: DensityMatrix
    x_star: float

    name = "horodecki_type"

    @property
    def true_ree(self) -> float:
        return relative_entropy(self.rho, self.true_css)

    @property
    def candidate_ree(self) -> float:
        return relative_entropy(self.rho, self.procedure_css_candidate)

    @property
    def css(self) -> DensityMatrix:
        return self.true_css

    @property
    def ree(self) -> float:
        return self.true_ree

    def __iter__(self):
        yield from (self.rho, self.procedure_css_candidate, self.true_css, self.ensemble)


def horodecki_type(spec: HorodeckiTypeSpec) -> HorodeckiTypeCase:
    if not spec.entangled:
        raise SeparableStateError("Horodecki-type state is separable unless D > sqrt(A1 A4)")
    ens = Ensemble((0.25,) * 4, tuple(PureState.normalized(v) for v in spec.member_vectors()))
    return HorodeckiTypeCase(
        rho=_density(spec.rho()),
        procedure_css_candidate=_density(spec.pi_star()),
        true_css=_density(spec.true_css()),
        ensemble=ens,
        pi_tilde=_density(spec.pi_tilde()),
        x_star=spec.x_star,
    )


# --------------------------------------------------------------------------- registry and sampling

FAMILY_SPECS = {
    "bell_diagonal": BellDiagonalSpec,
    "gvp": GvpSpec,
    "gen_horodecki": GenHorodeckiSpec,
    "vp_type": VpTypeSpec,
    "horodecki_type": HorodeckiTypeSpec,
}
FAMILY_BUILDERS = {
    "bell_diagonal": bell_diagonal,
    "gvp": gvp,
    "gen_horodecki": gen_horodecki,
    "vp_type": vp_type,
    "horodecki_type": horodecki_type,
}
# external parameter names (JSON / CLI) per family, in constructor order
FAMILY_PARAMS = {
    "bell_diagonal": ("lambda1", "lambda2", "lambda3", "lambda4"),
    "gvp": ("lambda1", "lambda2", "lambda3"),
    "gen_horodecki": ("lambda1", "lambda2", "lambda3"),
    "vp_type": ("A2", "A3", "D"),
    "horodecki_type": ("A1", "A4", "A", "D"),
}
SHORT_NAMES = {
    "bd": "bell_diagonal",
    "gvp": "gvp",
    "gh": "gen_horodecki",
    "vpt": "vp_type",
    "ht": "horodecki_type",
}


def build(name: str, params: dict):
    keys = FAMILY_PARAMS[name]
    spec = FAMILY_SPECS[name](*(float(params[k]) for k in keys))
    return spec, FAMILY_BUILDERS[name](spec)


def spec_params(name: str, spec) -> dict:
    return dict(zip(FAMILY_PARAMS[name], (getattr(spec, f) for f in spec.__dataclass_fields__)))


def _simplex(rng: np.random.Generator, n: int) -> list[float]:
    w = rng.dirichlet(np.ones(n))
    w = [float(v) for v in w]
    w[-1] = 1.0 - sum(w[:-1])
    return w


def sample_bell_diagonal(rng: np.random.Generator, margin: float = 0.01) -> BellDiagonalSpec:
    while True:
        w = _simplex(rng, 4)
        if max(w) > 0.5 + margin and min(w) >= 0.0:
            return BellDiagonalSpec(*w)


def sample_gvp(rng: np.random.Generator, margin: float = 0.01) -> GvpSpec:
    while True:
        w = _simplex(rng, 3)
        if w[0] > margin and min(w) >= 0.0:
            return GvpSpec(*w)


def sample_gen_horodecki(
    rng: np.random.Generator, margin: float = 0.02, equal_tails: bool = False
) -> GenHorodeckiSpec:
    while True:
        if equal_tails:
            l1 = float(rng.uniform(margin, 1.0))
            spec = GenHorodeckiSpec(l1, (1 - l1) / 2, 1 - l1 - (1 - l1) / 2)
        else:
            w = _simplex(rng, 3)
            if min(w) < 0.0:
                continue
            spec = GenHorodeckiSpec(*w)
        if spec.lambda1 - 2 * math.sqrt(spec.lambda2 * spec.lambda3) > margin:
            return spec


def sample_vp_type(rng: np.random.Generator, margin: float = 0.01) -> VpTypeSpec:
    while True:
        a2 = float(rng.uniform(0.5, 1.0))
        a3 = 1.0 - a2
        top = math.sqrt(a2 * a3)
        if top <= 2 * margin:
            continue
        return VpTypeSpec(a2, a3, float(rng.uniform(margin, top)))


def sample_horodecki_type(
    rng: np.random.Generator,
    min_concurrence: float = 0.3,
    min_coherence_gap: float = 0.05,
    min_asymmetry: float = 0.1,
) -> HorodeckiTypeSpec:
    """Rejection sample away from the generalised Horodecki limit (A = D, A1 = A4)."""
    while True:
        a1, a4 = (float(v) for v in rng.uniform(0.0, 0.5, 2))
        a = (1.0 - a1 - a4) / 2
        lo = math.sqrt(a1 * a4)
        if a <= lo:
            continue
        d = float(rng.uniform(lo, a))
        if (
            2 * (d - lo) >= min_concurrence
            and a - d >= min_coherence_gap
            and abs(a1 - a4) >= min_asymmetry
        ):
            return HorodeckiTypeSpec(a1, a4, a, d)


SAMPLERS = {
    "bell_diagonal": sample_bell_diagonal,
    "gvp": sample_gvp,
    "gen_horodecki": sample_gen_horodecki,
    "vp_type": sample_vp_type,
    "horodecki_type": sample_horodecki_type,
}


def gh_limit_spec(l1: float, l2: float, l3: float) -> HorodeckiTypeSpec:
    """Horodecki-type parameters that reproduce the generalised Horodecki state."""
    return HorodeckiTypeSpec(l2, l3, l1 / 2, l1 / 2)
