# src/witgeo/measurements.py

"""Witness decompositions into coordinated local measurement settings.

A *setting* fixes one complete orthogonal basis per party (everyone
measures simultaneously) and attaches a real weight to every joint
outcome; the setting's value on a state is the weighted sum of joint
outcome probabilities.  A witness decomposition is

    W = identity_coeff * I + sum_s setting_weight_s * M_s,
    M_s = sum_outcomes weight_s[outcome] * (tensor of outcome projectors),

so the witness expectation is assembled from locally measurable data
plus a constant.  Outcome weights are stored densely, one entry per
joint outcome (at most 7^2 or 2^4 entries here), which keeps the
correlated and anti-correlated patterns uniform.

Builders cover the two-qubit witness (3 settings), the d x d witness
for odd prime d (d+1 settings from the spin projection families), the
three-qubit bound entangled family (4 settings), the n-qubit GHZ
witness, and the far-face witness of an unextendible product basis (m
single-outcome settings).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .linalg import DensityState
from .spin import is_prime, projection_family
from .states import (
    PAULI_X,
    PAULI_Y,
    closest_separable,
    ghz,
    ghz_corner_mix,
    ghz_dephased,
    max_entangled,
    three_qubit_family_mt,
    three_qubit_separable_candidates,
)
from .witness import Witness, nearest_witness

if TYPE_CHECKING:
    from .upb import UpbSet

_BASIS_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementSetting:
    """One complete local basis per party plus a weight per joint outcome.

    ``party_bases`` holds one (d, d) array per party whose *columns* are
    the measurement eigenvectors; column unitarity is exactly per-party
    completeness plus orthogonality of the outcome projectors.
    ``weights`` is real with shape equal to the local dimensions.
    """

    party_bases: tuple[np.ndarray, ...]
    weights: np.ndarray

    def __post_init__(self):
        bases = []
        for u in self.party_bases:
            u = np.array(u, dtype=complex)
            d = u.shape[0]
            if u.shape != (d, d):
                raise ValueError("party basis must be square")
            dev = np.abs(u.conj().T @ u - np.eye(d)).max()
            if dev > _BASIS_TOL:
                raise ValueError(f"party basis not orthonormal: deviation {dev:.3e}")
            u.setflags(write=False)
            bases.append(u)
        object.__setattr__(self, "party_bases", tuple(bases))
        w = np.array(self.weights, dtype=float)
        if w.shape != self.dims:
            raise ValueError(f"weight table shape {w.shape} != local dims {self.dims}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(u.shape[0] for u in self.party_bases)

    def projector(self, party: int, outcome: int) -> np.ndarray:
        v = self.party_bases[party][:, outcome]
        return np.outer(v, v.conj())

    def joint_isometry(self) -> np.ndarray:
        """Kron of the party bases; column o is the joint outcome vector."""
        return reduce(np.kron, self.party_bases)

    def weighted_sum(self) -> np.ndarray:
        """M = sum_o weights[o] * |o><o| in the joint measurement basis."""
        a = self.joint_isometry()
        return (a * self.weights.ravel()) @ a.conj().T

    def joint_probabilities(self, rho: DensityState) -> np.ndarray:
        """Exact outcome distribution Tr[(tensor of projectors) rho]."""
        if rho.dims != self.dims:
            raise ValueError(f"state shape {rho.dims} != setting shape {self.dims}")
        a = self.joint_isometry()
        p = np.einsum("io,ij,jo->o", a.conj(), rho.mat, a, optimize=True).real
        return p.reshape(self.dims)


@dataclass(frozen=True)
class WitnessDecomposition:
    identity_coeff: float
    settings: tuple[tuple[float, MeasurementSetting], ...]

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(self.settings))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.settings[0][1].dims

    def matrix(self) -> np.ndarray:
        n = int(np.prod(self.dims))
        out = self.identity_coeff * np.eye(n, dtype=complex)
        for sw, setting in self.settings:
            out += sw * setting.weighted_sum()
        return out

    def residual(self, w) -> float:
        target = w.matrix if isinstance(w, Witness) else np.asarray(w)
        return float(np.abs(self.matrix() - target).max())

    def expectation(self, rho: DensityState) -> float:
        """Exact Tr(W rho) through the settings (no sampling)."""
        val = self.identity_coeff
        for sw, setting in self.settings:
            val += sw * float(np.sum(setting.weights * setting.joint_probabilities(rho)))
        return val


def _columns_from_projections(projs: list[np.ndarray]) -> np.ndarray:
    """Assemble a basis matrix from rank-1 projections (top eigenvector each)."""
    cols = []
    for p in projs:
        w, v = np.linalg.eigh(p)
        cols.append(v[:, -1])
    return np.column_stack(cols)


_PAULI_BASES = {
    "z": np.eye(2, dtype=complex),
    "x": _columns_from_projections([(np.eye(2) + s * PAULI_X) / 2 for s in (1, -1)]),
    "y": _columns_from_projections([(np.eye(2) + s * PAULI_Y) / 2 for s in (1, -1)]),
}


def _parity_weights(n: int, parity: int, weight: float) -> np.ndarray:
    """Weight table over {0,1}^n supported on outcomes of fixed parity.

    Outcome bit 0 stands for the +1 eigenvector, so the joint sign is
    (-1)^(number of 1 bits).
    """
    w = np.zeros((2,) * n)
    for idx in np.ndindex(*w.shape):
        if (-1) ** sum(idx) == parity:
            w[idx] = weight
    return w


def two_qubit_decomposition() -> WitnessDecomposition:
    """Three-setting form of the two-qubit witness.

    The closest separable state is an equal mixture of three one-setting
    densities: equal outcomes along z, equal outcomes along x, opposite
    outcomes along y.  With W = (2/3) I - 2 tau0 each setting enters with
    weight -2/3.
    """
    settings = []
    for axis, parity in (("z", +1), ("x", +1), ("y", -1)):
        w = np.zeros((2, 2))
        if parity > 0:
            w[0, 0] = w[1, 1] = 0.5
        else:
            w[0, 1] = w[1, 0] = 0.5
        setting = MeasurementSetting(
            (_PAULI_BASES[axis], _PAULI_BASES[axis]), w
        )
        settings.append((-2.0 / 3.0, setting))
    return WitnessDecomposition(2.0 / 3.0, tuple(settings))


def qudit_decomposition(d: int) -> WitnessDecomposition:
    """(d+1)-setting form of the d x d witness for prime d.

    One setting pairs the spectral families of the two pure shift
    operators with indices (1,0) and (d-1,0); the remaining d settings
    pair the families of (j,1) with (d-j,1).  In every setting the weight
    sits on the anti-correlated outcomes (r, d-r) with value 1/d, making
    each setting's weighted sum a separable density; the closest
    separable state is their equal mixture and

        W = 2/(1+d) * I - d * tau0

    fixes the setting weights at -d/(d+1).
    """
    if d == 2:
        return two_qubit_decomposition()
    if not is_prime(d):
        raise ValueError(f"dimension must be prime, got {d}")

    index_pairs = [((1, 0), (d - 1, 0))] + [((j, 1), ((d - j) % d, 1)) for j in range(d)]
    weights = np.zeros((d, d))
    for r in range(d):
        weights[r, (d - r) % d] = 1.0 / d

    settings = []
    for u, v in index_pairs:
        basis_1 = _columns_from_projections(projection_family(d, *u))
        basis_2 = _columns_from_projections(projection_family(d, *v))
        setting = MeasurementSetting((basis_1, basis_2), weights)
        settings.append((-d / (d + 1), setting))

    _warn_if_not_unbiased(settings, d)
    return WitnessDecomposition(2.0 / (1 + d), tuple(settings))


def _warn_if_not_unbiased(settings, d: int) -> None:
    # Eigenbases of distinct shift operators should be mutually unbiased;
    # informative only, the reconstruction contract does not rely on it.
    bases = [s.party_bases[0] for _, s in settings]
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            overlaps = np.abs(bases[i].conj().T @ bases[j]) ** 2
            if np.abs(overlaps - 1.0 / d).max() > 1e-8:
                warnings.warn(
                    f"setting bases {i} and {j} are not mutually unbiased at d={d}",
                    stacklevel=3,
                )
                return


def three_qubit_decomposition(t: float) -> WitnessDecomposition:
    """Four-setting form of the three-qubit family witness at parameters (0, t).

    The witness equals t * [(5/4) I - 2 (P+(111) + P-(221) + P-(212) +
    P+(122))]; each parity state is one setting in the corresponding
    x/y local bases with weight 1/4 on the outcomes of matching parity.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    patterns = [
        (("x", "x", "x"), +1),
        (("y", "y", "x"), -1),
        (("y", "x", "y"), -1),
        (("x", "y", "y"), +1),
    ]
    settings = []
    for axes, parity in patterns:
        setting = MeasurementSetting(
            tuple(_PAULI_BASES[ax] for ax in axes),
            _parity_weights(3, parity, 0.25),
        )
        settings.append((-2.0 * t, setting))
    return WitnessDecomposition(1.25 * t, tuple(settings))


class GhzDecomposition(NamedTuple):
    a: float
    b: float
    c: float
    mixing: float           # weight of the dephased part inside tau0
    witness: Witness
    decomposition: WitnessDecomposition


def _golden_minimize(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    g = (np.sqrt(5) - 1) / 2
    x1 = hi - g * (hi - lo)
    x2 = lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 > f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
    return (lo + hi) / 2


def _xy_axis_basis(phi: float) -> np.ndarray:
    """Eigenbasis of cos(phi) sigma_x + sin(phi) sigma_y, +1 eigenvector first."""
    plus = np.array([1.0, np.exp(1j * phi)], dtype=complex) / np.sqrt(2)
    minus = np.array([1.0, -np.exp(1j * phi)], dtype=complex) / np.sqrt(2)
    return np.column_stack([plus, minus])


def ghz_corner_settings(n: int) -> list[MeasurementSetting]:
    """n one-axis settings whose equal mixture reproduces the corner state.

    Setting j measures every party along the equatorial axis at angle
    pi*j/n and weights the outcomes of parity (-1)^j uniformly; the
    weighted sum is I/N + (-1)^j/N * (axis operator)^(tensor n), and the
    alternating average leaves exactly the two corner coherences.  The
    builder verifies that matrix identity and fails loudly otherwise.
    """
    settings = []
    acc = np.zeros((2**n, 2**n), dtype=complex)
    for j in range(n):
        basis = _xy_axis_basis(np.pi * j / n)
        setting = MeasurementSetting(
            (basis,) * n, _parity_weights(n, (-1) ** j, 1.0 / 2 ** (n - 1))
        )
        settings.append(setting)
        acc += setting.weighted_sum()
    dev = np.abs(acc / n - ghz_corner_mix(n).mat).max()
    if dev > 1e-12:
        raise AssertionError(f"corner-state expansion failed verification: {dev:.3e}")
    return settings


def ghz_decomposition(n: int) -> GhzDecomposition:
    """GHZ witness a*I - b*Delta - c*Q with its measurement settings.

    tau0 is the closest point to the GHZ state on the segment between
    the dephased state (Delta) and the corner state (Q); the mixing
    weight solves a one-dimensional quadratic, minimized by golden
    section and cross-checked against the parabola vertex.  Delta is one
    computational-basis setting, Q contributes n equatorial settings.
    """
    if n < 2:
        raise ValueError("need at least two parties")
    rho0 = ghz(n)
    delta = ghz_dephased(n)
    corner = ghz_corner_mix(n)
    size = 2**n

    diff = delta.mat - corner.mat
    resid = rho0.mat - corner.mat

    def objective(x: float) -> float:
        gap = resid - x * diff
        return float(np.vdot(gap, gap).real)

    x_golden = _golden_minimize(objective, 0.0, 1.0)
    denom = float(np.vdot(diff, diff).real)
    x_vertex = min(1.0, max(0.0, float(np.vdot(diff, resid).real) / denom))
    # a quadratic minimum cannot be localized below ~sqrt(machine eps) by
    # comparing function values, so the two solvers agree to ~1e-8 at best
    if abs(x_golden - x_vertex) > 1e-7:
        raise AssertionError(
            f"golden section ({x_golden}) and closed form ({x_vertex}) disagree"
        )
    x = x_vertex

    tau0 = DensityState(x * delta.mat + (1 - x) * corner.mat, rho0.shape)
    wit = nearest_witness(rho0, tau0)

    a = wit.c0 + 0.5
    b = 1.0 - x
    c = 2 ** (n - 1) - 1 + x
    recon = a * np.eye(size) - b * delta.mat - c * corner.mat
    dev = np.abs(recon - wit.matrix).max()
    if dev > 1e-10:
        raise AssertionError(f"witness coefficients inconsistent by {dev:.3e}")
    if min(a, b, c) <= 0:
        raise AssertionError(f"expected positive coefficients, got {(a, b, c)}")

    dephased_weights = np.zeros((2,) * n)
    dephased_weights[(0,) * n] = 0.5
    dephased_weights[(1,) * n] = 0.5
    settings = [(-b, MeasurementSetting((np.eye(2, dtype=complex),) * n, dephased_weights))]
    settings.extend((-c / n, s) for s in ghz_corner_settings(n))
    dec = WitnessDecomposition(a, tuple(settings))
    return GhzDecomposition(a, b, c, x, wit, dec)


def complete_basis(v: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis whose first column is v."""
    v = np.asarray(v, dtype=complex).ravel()
    d = len(v)
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(d)]))
    if abs(abs(np.vdot(q[:, 0], v)) - 1.0) > 1e-10:
        raise AssertionError("basis completion lost the seed vector")
    q = np.array(q)
    q[:, 0] = v  # undo the QR phase on the seed column
    return q


def far_face_decomposition(upb: "UpbSet", eps: float) -> WitnessDecomposition:
    """Settings measuring the far-face witness of an unextendible product basis.

    Each basis member is a product vector, so one local setting per
    member (factor completed to a full local basis, weight 1 on the
    all-zero outcome) measures its projector; m settings in total.

        W = eps*N/(N-m) * mu0 - eps^2*N/(m(N-m)) * I
    """
    n_total = upb.shape.size
    m = upb.m
    if not 0 < eps < m / n_total:
        raise ValueError(f"eps = {eps} outside (0, m/N)")
    coeff = eps * n_total / (n_total - m)
    settings = []
    for k in range(m):
        bases = tuple(complete_basis(f) for f in upb.vectors[k])
        w = np.zeros(upb.shape.dims)
        w[(0,) * upb.shape.parties] = 1.0
        settings.append((coeff / m, MeasurementSetting(bases, w)))
    return WitnessDecomposition(-coeff * eps / m, tuple(settings))


# ----------------------------------------------------------------------------
# finite-shot simulation


class ShotEstimate(NamedTuple):
    estimate: float
    stderr: float
    shots_per_setting: int


def shot_estimate(
    dec: WitnessDecomposition, rho: DensityState, shots_per_setting: int, seed: int
) -> ShotEstimate:
    """Plug-in estimate of Tr(W rho) from simulated local measurements.

    For each setting, joint outcomes are drawn from the exact outcome
    distribution by inverse CDF; the per-setting statistic is the sample
    mean of the outcome weights.  Substreams are derived from (seed,
    setting index), so results are bit-reproducible and independent of
    evaluation order.  The estimator is unbiased with standard error
    assembled from per-setting sample variances.
    """
    if shots_per_setting < 1:
        raise ValueError("need at least one shot per setting")
    estimate = dec.identity_coeff
    variance = 0.0
    for idx, (sw, setting) in enumerate(dec.settings):
        probs = setting.joint_probabilities(rho).ravel()
        total = probs.sum()
        if abs(total - 1.0) > 1e-8:
            raise ValueError(
                f"setting {idx} outcome probabilities sum to {total}, not 1"
            )
        probs = np.clip(probs, 0.0, None)
        cdf = np.cumsum(probs / probs.sum())
        cdf[-1] = 1.0  # guard the top bin against cumsum rounding
        rng = np.random.default_rng([seed, idx])
        draws = np.searchsorted(cdf, rng.random(shots_per_setting), side="right")
        values = setting.weights.ravel()[draws]
        mean = float(values.mean())
        var = float(values.var(ddof=1)) if shots_per_setting > 1 else 0.0
        estimate += sw * mean
        variance += sw * sw * var / shots_per_setting
    return ShotEstimate(estimate, float(np.sqrt(variance)), shots_per_setting)


# ----------------------------------------------------------------------------
# convenience: witness + decomposition bundles for the standard targets


def standard_witness(d: int) -> Witness:
    """Witness for the d x d maximally entangled state via its closed-form tau0."""
    return nearest_witness(max_entangled(d), closest_separable(d))


def three_qubit_witness(m: float, t: float) -> Witness:
    """Witness for the three-qubit family member at (m, t), t > 0.

    Built through the claimed nearest separable state; independent of m.
    """
    cands = three_qubit_separable_candidates(m, t)
    return nearest_witness(three_qubit_family_mt(m, t), cands.nearest)
