# src/witgeo/states.py

"""Constructors for the concrete states used throughout the toolkit.

Bipartite side: maximally entangled qudit states, Schmidt-diagonal pure
states, their closest separable state, and seeded noise near the
completely random state.  Multipartite side: the n-qubit GHZ family with
its dephased and corner-correlated separable companions, and the
two-parameter three-qubit bound entangled family with its separable
candidates.

Every constructor returns a validated DensityState.  Constructors with a
second, independent formula for the same matrix (the three-qubit family,
the GHZ segment state) evaluate both routes and refuse to return on
disagreement.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .linalg import DensityState, ProductProjection, SystemShape, tensor

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULI = {1: PAULI_X, 2: PAULI_Y}


def completely_random(dims) -> DensityState:
    """The maximally mixed state I/N on the given tensor shape."""
    shape = SystemShape(tuple(dims))
    return DensityState(np.eye(shape.size, dtype=complex) / shape.size, shape)


def schmidt_state(amps) -> DensityState:
    """Pure bipartite state sum_k a_k |kk> with real Schmidt coefficients."""
    a = np.asarray(amps, dtype=float)
    d = len(a)
    if d < 2:
        raise ValueError("need at least two Schmidt coefficients")
    if abs(np.dot(a, a) - 1.0) > 1e-10:
        raise ValueError(f"coefficients are not normalized: sum of squares {np.dot(a, a)}")
    psi = np.zeros(d * d, dtype=complex)
    for k in range(d):
        psi[k * d + k] = a[k]
    return DensityState(np.outer(psi, psi.conj()), SystemShape((d, d)))


def max_entangled(d: int) -> DensityState:
    """Maximally entangled state sum_k |kk>/sqrt(d) on a d x d system."""
    return schmidt_state(np.full(d, 1.0 / np.sqrt(d)))


def noisy_mixture(p: float, state: DensityState, noise: DensityState) -> DensityState:
    """Convex combination p*state + (1-p)*noise."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter {p} out of [0, 1]")
    if state.dims != noise.dims:
        raise ValueError(f"shape mismatch: {state.dims} vs {noise.dims}")
    return DensityState(p * state.mat + (1.0 - p) * noise.mat, state.shape)


def noise_ball(dims, delta: float, seed: int) -> DensityState:
    """A seeded valid density within Hilbert-Schmidt distance delta of I/N.

    Draws a traceless Hermitian direction with unit HS norm, steps 0.9*delta
    along it from I/N, and halves the step until the result is PSD.  The
    maximally mixed state is interior, so this terminates.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    shape = SystemShape(tuple(dims))
    n = shape.size
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (g + g.conj().T) / 2
    h -= np.trace(h) / n * np.eye(n)
    h /= np.sqrt(np.vdot(h, h).real)
    base = np.eye(n, dtype=complex) / n
    scale = 0.9 * delta
    while True:
        sigma = base + scale * h
        if np.linalg.eigvalsh(sigma).min() >= 0.0:
            return DensityState(sigma, shape)
        scale /= 2


def closest_separable(d: int) -> DensityState:
    """Closest separable state to the maximally entangled state.

    The closed form is the convex combination d/(d+1) * I/N + 1/(d+1) * rho0,
    which also lies on the segment from I/N to rho0 (so the nearest
    separable state and the last separable segment point coincide here).
    """
    rho0 = max_entangled(d)
    d0 = completely_random((d, d))
    mat = d / (d + 1) * d0.mat + 1 / (d + 1) * rho0.mat
    return DensityState(mat, rho0.shape)


# ----------------------------------------------------------------------------
# n-qubit GHZ family


def ghz(n: int) -> DensityState:
    """Projector onto (|0...0> + |1...1>)/sqrt(2) for n qubits."""
    if n < 2:
        raise ValueError("need at least two parties")
    size = 2**n
    psi = np.zeros(size, dtype=complex)
    psi[0] = psi[-1] = 1.0 / np.sqrt(2)
    return DensityState(np.outer(psi, psi.conj()), SystemShape((2,) * n))


def ghz_dephased(n: int) -> DensityState:
    """Equal mixture of |0...0> and |1...1> (the GHZ state without coherences)."""
    size = 2**n
    mat = np.zeros((size, size), dtype=complex)
    mat[0, 0] = mat[-1, -1] = 0.5
    return DensityState(mat, SystemShape((2,) * n))


def ghz_corner_mix(n: int) -> DensityState:
    """Separable companion state: I/N plus corner coherences of weight 1/2^n."""
    size = 2**n
    mat = np.eye(size, dtype=complex) / size
    mat[0, -1] = mat[-1, 0] = 1.0 / size
    return DensityState(mat, SystemShape((2,) * n))


def ghz_segment_weight(n: int) -> float:
    """Mixing weight s0 = 1/(2^(n-1) + 1) of the last separable segment point."""
    return 1.0 / (2 ** (n - 1) + 1)


def ghz_segment_state(n: int) -> DensityState:
    """Last separable state on the segment from I/N to the GHZ state.

    Computed both as (1-s0)*I/N + s0*rho0 and as the convex combination
    s0*dephased + (1-s0)*corner_mix; the two must agree entrywise.
    """
    s0 = ghz_segment_weight(n)
    via_segment = (1 - s0) * completely_random((2,) * n).mat + s0 * ghz(n).mat
    via_parts = s0 * ghz_dephased(n).mat + (1 - s0) * ghz_corner_mix(n).mat
    dev = np.abs(via_segment - via_parts).max()
    if dev > 1e-12:
        raise AssertionError(f"internal consistency failure: segment forms differ by {dev:.3e}")
    return DensityState(via_segment, SystemShape((2,) * n))


# ----------------------------------------------------------------------------
# three-qubit bound entangled family


class PauliParityState(NamedTuple):
    matrix: np.ndarray
    products: list[tuple[float, ProductProjection]]


def pauli_parity_state(j: int, k: int, l: int, sign: int) -> PauliParityState:
    """(1/8)[I + sign * sigma_j x sigma_k x sigma_l] with its product expansion.

    Indices take values 1 (sigma_x) or 2 (sigma_y).  The matrix is an
    equal mixture of the four rank-1 products

        (I + s1*sigma_j)/2 x (I + s2*sigma_k)/2 x (I + sign*s1*s2*sigma_l)/2

    over (s1, s2) in {+1, -1}^2: the cross terms cancel because each of
    s1, s2 and s1*s2 sums to zero.
    """
    if j not in _PAULI or k not in _PAULI or l not in _PAULI:
        raise ValueError("indices must be 1 (sigma_x) or 2 (sigma_y)")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    eye8 = np.eye(8, dtype=complex)
    mat = (eye8 + sign * tensor(_PAULI[j], _PAULI[k], _PAULI[l])) / 8

    products = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            facs = (
                _bloch_eigvec(_PAULI[j], s1),
                _bloch_eigvec(_PAULI[k], s2),
                _bloch_eigvec(_PAULI[l], sign * s1 * s2),
            )
            products.append((0.25, ProductProjection(facs)))
    avg = sum(w * p.matrix() for w, p in products)
    dev = np.abs(avg - mat).max()
    if dev > 1e-12:
        raise AssertionError(f"product expansion disagrees with matrix by {dev:.3e}")
    return PauliParityState(mat, products)


def _bloch_eigvec(pauli: np.ndarray, sign: int) -> np.ndarray:
    w, v = np.linalg.eigh(pauli)
    idx = int(np.argmax(w)) if sign > 0 else int(np.argmin(w))
    vec = v[:, idx]
    # fix the global phase so the first nonzero entry is real positive
    k = int(np.flatnonzero(np.abs(vec) > 1e-9)[0])
    return vec * (abs(vec[k]) / vec[k])


def four_vector(mat: np.ndarray) -> tuple[float, float, float, float]:
    """Anti-diagonal parameters of an 8x8 matrix, read center-outward.

    Returns (m34, m25, m16, m07) where m_ij is the (real) entry at
    positions (i, j) and (j, i).
    """
    mat = np.asarray(mat)
    return tuple(float(mat[3 - i, 4 + i].real) for i in range(4))


def _anti_diagonal_density(fv) -> np.ndarray:
    mat = np.eye(8, dtype=complex) / 8
    for i, v in enumerate(fv):
        mat[3 - i, 4 + i] = v
        mat[4 + i, 3 - i] = v
    return mat


def three_qubit_family(c: float, d: float) -> DensityState:
    """Three-qubit PPT family: diagonal 1/8, anti-diagonal (d, c, 1/8, 1/8).

    The constructor cross-checks the matrix against the independent
    expansion in parity states with m = (c+d)/2, t = (c-d)/2:

        (1/2+4m)*P+(111) + (1/2-4m)*P-(221) + 4t*(P-(212) + P+(122)) - 8t*I/8

    and raises on disagreement.  For the mirrored branch (d > c) the same
    family applies with the roles of the two inner anti-diagonal entries
    exchanged, which amounts to swapping the arguments.
    """
    if not (-0.125 - 1e-12 <= c <= 0.125 + 1e-12) or not (
        -0.125 - 1e-12 <= d <= 0.125 + 1e-12
    ):
        raise ValueError(f"parameters must lie in [-1/8, 1/8], got c={c}, d={d}")
    mat = _anti_diagonal_density((d, c, 0.125, 0.125))

    m = (c + d) / 2
    t = (c - d) / 2
    via_parity = (
        (0.5 + 4 * m) * pauli_parity_state(1, 1, 1, +1).matrix
        + (0.5 - 4 * m) * pauli_parity_state(2, 2, 1, -1).matrix
        + 4 * t * (pauli_parity_state(2, 1, 2, -1).matrix + pauli_parity_state(1, 2, 2, +1).matrix)
        - 8 * t * np.eye(8, dtype=complex) / 8
    )
    dev = np.abs(mat - via_parity).max()
    if dev > 1e-12:
        raise AssertionError(f"internal decomposition mismatch: {dev:.3e}")
    return DensityState(mat, SystemShape((2, 2, 2)))


def three_qubit_family_mt(m: float, t: float) -> DensityState:
    """Same family in the symmetric parameters m = (c+d)/2, t = (c-d)/2."""
    return three_qubit_family(m + t, m - t)


class SeparableCandidates(NamedTuple):
    nearest: DensityState   # closest separable state claimed for the family
    segment: DensityState   # last separable state on the segment from I/N


def three_qubit_separable_candidates(m: float, t: float) -> SeparableCandidates:
    """Separable companions of the three-qubit family member at (m, t), t > 0.

    ``nearest`` has anti-diagonal (m - t/2, m + t/2, 1/8 - t/2, 1/8 - t/2)
    and diagonal 1/8.  ``segment`` solves rho(m,t) = (1+8t)*segment - 8t*I/8,
    which places it on the segment from I/N to rho(m,t).  For t < 0 apply
    the family's mirror symmetry first.
    """
    if t <= 0:
        raise ValueError("t must be positive; use the mirrored parameters for t < 0")
    if abs(m) + t / 2 > 0.125 + 1e-12:
        raise ValueError(f"(m={m}, t={t}) leaves the valid parameter region")
    rho = three_qubit_family_mt(m, t)
    nearest = DensityState(
        _anti_diagonal_density((m - t / 2, m + t / 2, 0.125 - t / 2, 0.125 - t / 2)),
        SystemShape((2, 2, 2)),
    )
    d0 = completely_random((2, 2, 2))
    segment_mat = (rho.mat + 8 * t * d0.mat) / (1 + 8 * t)
    segment = DensityState(segment_mat, SystemShape((2, 2, 2)))
    # sanity: segment really lies on [I/N, rho]
    s = 1.0 / (1 + 8 * t)
    dev = np.abs(segment.mat - ((1 - s) * d0.mat + s * rho.mat)).max()
    if dev > 1e-12:
        raise AssertionError(f"segment point off the line by {dev:.3e}")
    return SeparableCandidates(nearest, segment)
