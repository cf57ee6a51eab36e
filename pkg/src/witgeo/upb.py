# src/witgeo/upb.py

"""Far-face machinery built on unextendible product bases.

An unextendible product basis (UPB) is an orthonormal family of m < N
product vectors whose orthogonal complement contains no product vector.
The uniform mixture over its projectors is a separable state of rank m
sitting on the face of the separable set diametrically opposite (through
I/N) the bound entangled state

    rho0 = (N * I/N - m * mu0) / (N - m),

which is PPT by construction of the family.  Because the minimum product
overlap eps/m = inf Tr(mu0 sigma) is strictly positive for a UPB, the
witness

    W = eps*N/(N-m) * (mu0 - eps/m * I)

detects rho0 while staying nonnegative on the separable set; it
coincides with the hyperplane construction through the segment point
tau0 = (1-s0) I/N + s0 rho0 at s0 = 1 - eps*N/m, and the constructor
checks that coincidence explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple

import numpy as np

from .linalg import DensityState, ProductProjection, SystemShape, hs_inner
from .oracle import MinProductsResult, SeeSawConfig, min_over_products
from .witness import Witness


@dataclass(frozen=True)
class UpbSet:
    """Orthonormal product vectors stored by their per-party factors."""

    shape: SystemShape
    vectors: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        stored = []
        for factors in self.vectors:
            if len(factors) != self.shape.parties:
                raise ValueError("each vector needs one factor per party")
            facs = []
            for f, d in zip(factors, self.shape.dims):
                f = np.asarray(f, dtype=complex).ravel()
                if len(f) != d:
                    raise ValueError(f"factor length {len(f)} != local dimension {d}")
                nrm = np.linalg.norm(f)
                if nrm < 1e-12:
                    raise ValueError("zero factor")
                f = f / nrm
                f.setflags(write=False)
                facs.append(f)
            stored.append(tuple(facs))
        object.__setattr__(self, "vectors", tuple(stored))
        if self.m >= self.shape.size:
            raise ValueError("a product basis this large cannot be unextendible")
        gram = self.gram()
        dev = np.abs(gram - np.eye(self.m)).max()
        if dev > 1e-10:
            raise ValueError(f"vectors are not orthonormal: Gram deviation {dev:.3e}")

    @property
    def m(self) -> int:
        return len(self.vectors)

    def product_vector(self, k: int) -> np.ndarray:
        return reduce(np.kron, self.vectors[k])

    def projector(self, k: int) -> np.ndarray:
        v = self.product_vector(k)
        return np.outer(v, v.conj())

    def gram(self) -> np.ndarray:
        vs = [self.product_vector(k) for k in range(self.m)]
        return np.array([[np.vdot(u, v) for v in vs] for u in vs])


def tiles() -> UpbSet:
    """The five-member 3 x 3 tiles family.

    Amplitudes follow the standard construction: four domino states
    |0>(|0>-|1>), |2>(|1>-|2>), (|0>-|1>)|2>, (|1>-|2>)|0> and the
    uniform stopper.  The constructor's orthonormality check plus the
    downstream PPT / positive-overlap checks are what certify the
    transcription.
    """
    e = np.eye(3)
    return UpbSet(
        SystemShape((3, 3)),
        (
            (e[0], e[0] - e[1]),
            (e[2], e[1] - e[2]),
            (e[0] - e[1], e[2]),
            (e[1] - e[2], e[0]),
            (e[0] + e[1] + e[2], e[0] + e[1] + e[2]),
        ),
    )


def uniform_mixture(upb: UpbSet) -> DensityState:
    """The separable state mu0 = (1/m) sum_k |phi_k><phi_k| (rank m, purity 1/m)."""
    mat = sum(upb.projector(k) for k in range(upb.m)) / upb.m
    return DensityState(mat, upb.shape)


def bound_entangled(upb: UpbSet) -> DensityState:
    """Normalized projector complement (N*I/N - m*mu0)/(N-m); PPT by construction."""
    n = upb.shape.size
    m = upb.m
    mu = uniform_mixture(upb)
    mat = (np.eye(n) - m * mu.mat) / (n - m)
    low = np.linalg.eigvalsh(mat).min()
    if low < -1e-10:
        raise ValueError(f"complement state not PSD (min eig {low:.3e}); invalid UPB input")
    return DensityState(mat, upb.shape)


class EpsilonEstimate(NamedTuple):
    epsilon: float
    argmin: ProductProjection
    consensus: int
    restarts: int

    def summary(self) -> str:
        return (
            f"eps = {self.epsilon:.12g} (upper bound, restart consensus "
            f"{self.consensus}/{self.restarts})"
        )


def estimate_epsilon(upb: UpbSet, restarts: int = 64, seed: int = 0) -> EpsilonEstimate:
    """Estimate eps = m * inf Tr(mu0 sigma) over product states by see-saw.

    The returned value is an upper bound on the true infimum (restart
    consensus is the confidence proxy).  A value at numerical zero
    contradicts unextendibility and is rejected; so is a value outside
    the bracket (0, m/N) required for the far-face witness.
    """
    mu = uniform_mixture(upb)
    res: MinProductsResult = min_over_products(
        mu.mat, upb.shape.dims, SeeSawConfig(restarts=restarts, seed=seed)
    )
    if res.value <= 1e-12:
        raise ValueError(
            "minimum product overlap is numerically zero; the family is extendible "
            "or otherwise invalid"
        )
    eps = upb.m * res.value
    if not eps < upb.m / upb.shape.size:
        raise AssertionError(f"eps = {eps} exceeds its bracket m/N")
    return EpsilonEstimate(eps, res.argmin, res.consensus, res.restarts)


def far_face_witness(upb: UpbSet, eps: float) -> Witness:
    """Witness eps*N/(N-m) * (mu0 - eps/m * I) for the UPB's bound entangled state.

    Also assembles the hyperplane form through tau0 = (1-s0) I/N + s0 rho0
    at s0 = 1 - eps*N/m and insists the two constructions coincide.
    (tau0 is a hyperplane intersection point here, not itself separable.)
    """
    n = upb.shape.size
    m = upb.m
    if not 0.0 < eps < m / n:
        raise ValueError(f"eps = {eps} outside (0, m/N = {m/n})")
    mu = uniform_mixture(upb)
    rho0 = bound_entangled(upb)
    closed = eps * n / (n - m) * (mu.mat - eps / m * np.eye(n))

    s0 = 1.0 - eps * n / m
    tau0_mat = (1 - s0) * np.eye(n) / n + s0 * rho0.mat
    tau0 = DensityState(tau0_mat, upb.shape)
    c0 = hs_inner(tau0_mat, rho0.mat - tau0_mat).real
    via_hyperplane = tau0_mat + c0 * np.eye(n) - rho0.mat
    dev = np.abs(closed - via_hyperplane).max()
    if dev > 1e-10:
        raise AssertionError(f"far-face constructions disagree by {dev:.3e}")
    return Witness(matrix=closed, c0=c0, rho0=rho0, tau0=tau0, s0=s0)


def reweighted_bound_entangled(upb: UpbSet, weights) -> DensityState:
    """Bound entangled neighbor (N*I/N - b*mu_b)/(N-b) from reweighted projectors.

    mu_b = sum_k p_k |phi_k><phi_k| with b the reciprocal of the largest
    weight.  Requires nonnegative weights summing to one; rejects any
    result that fails positive semidefiniteness.
    """
    p = np.asarray(weights, dtype=float)
    if len(p) != upb.m:
        raise ValueError(f"need {upb.m} weights, got {len(p)}")
    if p.min() < 0 or abs(p.sum() - 1.0) > 1e-10:
        raise ValueError("weights must be nonnegative and sum to one")
    n = upb.shape.size
    b = 1.0 / p.max()
    if b >= n:
        raise ValueError(f"b = {b} must stay below N = {n}")
    mu_b = sum(p[k] * upb.projector(k) for k in range(upb.m))
    mat = (np.eye(n) - b * mu_b) / (n - b)
    low = np.linalg.eigvalsh(mat).min()
    if low < -1e-10:
        raise ValueError(
            f"reweighted state not PSD (min eig {low:.3e}); weights too concentrated"
        )
    return DensityState(mat, upb.shape)
