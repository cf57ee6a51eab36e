# src/witgeo/witness.py

"""Witness construction from separable-set geometry, plus detection bounds.

Given an entangled target rho0 and a separable reference tau0, the
supporting-hyperplane construction

    W = tau0 + c0*I - rho0,    c0 = Tr[tau0 (rho0 - tau0)]

yields a Hermitian observable with Tr(W rho0) = -||rho0 - tau0||^2 < 0.
The induced-inner-product identity

    Tr(W rho) = -<rho0 - tau0, rho - tau0>

holds for every rho and is what the verification suite leans on.  The
same observable can be assembled through the last separable point on the
segment from I/N to rho0; both routes are provided and agree
algebraically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityState, hs_distance, hs_inner

# An expectation value this far below zero counts as detection; anything
# closer to zero is treated as eigensolver noise.
DETECTION_TOL = 1e-10


@dataclass(frozen=True)
class Witness:
    """Hermitian witness observable with its construction data."""

    matrix: np.ndarray
    c0: float
    rho0: DensityState
    tau0: DensityState
    s0: float | None = None
    tau_tilde: DensityState | None = None

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        n = self.rho0.n
        eye = np.eye(n)
        dev = np.abs(mat - (self.tau0.mat + self.c0 * eye - self.rho0.mat)).max()
        if dev > 1e-10:
            raise ValueError(f"witness matrix violates its defining form by {dev:.3e}")
        c0_check = hs_inner(self.tau0.mat, self.rho0.mat - self.tau0.mat).real
        if abs(c0_check - self.c0) > 1e-10:
            raise ValueError(f"c0 = {self.c0} inconsistent with states ({c0_check})")
        if hs_inner(mat, self.rho0.mat).real >= 0:
            raise ValueError("witness does not detect its target state")

    @property
    def n(self) -> int:
        return self.rho0.n

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rho0.dims


def nearest_witness(rho0: DensityState, tau0: DensityState) -> Witness:
    """Witness through the closest separable state (hyperplane normal rho0 - tau0)."""
    if rho0.dims != tau0.dims:
        raise ValueError(f"shape mismatch: {rho0.dims} vs {tau0.dims}")
    if hs_distance(rho0.mat, tau0.mat) == 0.0:
        raise ValueError("degenerate construction: rho0 equals tau0")
    c0 = hs_inner(tau0.mat, rho0.mat - tau0.mat).real
    w = tau0.mat + c0 * np.eye(rho0.n) - rho0.mat
    return Witness(matrix=w, c0=c0, rho0=rho0, tau0=tau0)


def segment_witness(rho0: DensityState, tau0: DensityState, s0: float) -> Witness:
    """Same witness assembled through the segment point (1-s0)*I/N + s0*rho0.

    With tau_tilde = (1-s0)*I/N + s0*rho0 the observable

        I*(c0 + (1-s0)/(N*s0)) + tau0 - tau_tilde/s0

    is algebraically identical to nearest_witness(rho0, tau0); keeping
    both routes makes the substitution checkable.
    """
    if not 0.0 < s0 < 1.0:
        raise ValueError(f"s0 must lie in (0, 1), got {s0}")
    if rho0.dims != tau0.dims:
        raise ValueError(f"shape mismatch: {rho0.dims} vs {tau0.dims}")
    n = rho0.n
    eye = np.eye(n)
    tau_tilde_mat = (1 - s0) * eye / n + s0 * rho0.mat
    c0 = hs_inner(tau0.mat, rho0.mat - tau0.mat).real
    w = eye * (c0 + (1 - s0) / (n * s0)) + tau0.mat - tau_tilde_mat / s0
    tau_tilde = DensityState(tau_tilde_mat, rho0.shape)
    return Witness(matrix=w, c0=c0, rho0=rho0, tau0=tau0, s0=s0, tau_tilde=tau_tilde)


def evaluate(w: Witness, rho) -> float:
    """Expectation value Tr(W rho)."""
    mat = rho.mat if isinstance(rho, DensityState) else np.asarray(rho)
    if mat.shape != w.matrix.shape:
        raise ValueError(f"shape mismatch: {mat.shape} vs {w.matrix.shape}")
    return float(np.trace(w.matrix @ mat).real)


def detects(w: Witness, rho) -> bool:
    """True when the expectation value is decisively negative."""
    return evaluate(w, rho) < -DETECTION_TOL


def two_qubit_noise_threshold(a: float, b: float, delta: float = 0.0) -> float:
    """Visibility threshold (1+4*delta)/(4ab+1+4*delta) for two-qubit detection.

    For p above the returned value, p*|psi_a><psi_a| + (1-p)*sigma is
    guaranteed inseparable for every sigma within Hilbert-Schmidt
    distance delta of I/4.  Returns a value >= 1 when no visibility can
    give a guarantee (a*b = 0).
    """
    if a < 0 or b < 0:
        raise ValueError("Schmidt coefficients must be nonnegative")
    if abs(a * a + b * b - 1.0) > 1e-10:
        raise ValueError(f"coefficients not normalized: a^2+b^2 = {a*a + b*b}")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return (1 + 4 * delta) / (4 * a * b + 1 + 4 * delta)


def qudit_detection_predicate(d: int, amps, p: float, delta: float) -> bool:
    """Sufficient inseparability test for p*|psi_a><psi_a| + (1-p)*sigma on d x d.

    True when (1-p)/p * (1 - 1/d + delta*sqrt(2d(d-1))) < (sum_k a_k)^2 - 1,
    with ||sigma - I/N|| < delta.  At d = 2 this reduces to the threshold
    form of two_qubit_noise_threshold.
    """
    a = np.asarray(amps, dtype=float)
    if abs(np.dot(a, a) - 1.0) > 1e-10:
        raise ValueError("coefficients not normalized")
    if len(a) != d:
        raise ValueError(f"expected {d} coefficients, got {len(a)}")
    if not 0.0 < p <= 1.0:
        return False
    lhs = (1 - p) / p * (1 - 1 / d + delta * np.sqrt(2 * d * (d - 1)))
    rhs = float(np.sum(a)) ** 2 - 1
    return bool(lhs < rhs)


def frustum_predicate(p: float, delta: float, n: int, m: int, b: float, eps: float) -> bool:
    """Detection-region test for mixtures of reweighted far-face states.

    True when p*(m-b)/(N-b) + (1-p)/N + (1-p)*delta/sqrt(m) < eps/m, in
    which case (1-p)*sigma + p*rho_b stays on the detected side of the
    far-face hyperplane for every sigma within delta of I/N.
    """
    if not 0 < b <= m < n:
        raise ValueError(f"need 0 < b <= m < N, got b={b}, m={m}, N={n}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    lhs = p * (m - b) / (n - b) + (1 - p) / n + (1 - p) * delta / np.sqrt(m)
    return bool(lhs < eps / m)
