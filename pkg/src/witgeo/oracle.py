# src/witgeo/oracle.py

"""Numerical verification oracles.

* ppt_report: minimum eigenvalue of every partial transpose, one cut per
  party subset up to complement symmetry.
* min_over_products: see-saw (alternating local eigenvector) minimization
  of Tr(H pi) over rank-1 product projections.  Linearity in the state
  makes product projections sufficient to probe the separable set, so
  the returned value is an upper bound on the true minimum over it, with
  restart consensus as the confidence signal.  Never a certified global
  minimum.
* bell_bound_three_qubit: multistart maximization of the trigonometric
  product-state objective attached to the three-qubit witness plane.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .linalg import DensityState, ProductProjection, hermitian_eigen, is_hermitian, partial_transpose


@dataclass(frozen=True)
class PptReport:
    """Minimum eigenvalue of the partial transpose for each canonical cut."""

    min_eigenvalues: dict[tuple[int, ...], float]

    @property
    def minimum(self) -> float:
        return min(self.min_eigenvalues.values())

    def is_ppt(self, tol: float = 1e-10) -> bool:
        return self.minimum >= -tol


def ppt_report(rho: DensityState) -> PptReport:
    """Partial-transpose spectra over all cuts, one per complement pair.

    Transposing a subset and its complement give matrices with the same
    spectrum, so only subsets excluding party 0 are listed.
    """
    n = rho.shape.parties
    if n < 2:
        raise ValueError("need at least two parties")
    out = {}
    others = range(1, n)
    for r in range(1, n):
        for subset in itertools.combinations(others, r):
            pt = partial_transpose(rho, subset)
            w, _ = hermitian_eigen(pt)
            out[subset] = float(w[0])
    return PptReport(out)


@dataclass(frozen=True)
class SeeSawConfig:
    restarts: int = 32
    max_sweeps: int = 200
    tol: float = 1e-11
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class MinProductsResult:
    value: float
    argmin: ProductProjection
    consensus: int
    restarts: int
    values: tuple[float, ...] = field(repr=False)

    def summary(self) -> str:
        return (
            f"upper bound {self.value:.12g} with restart consensus "
            f"{self.consensus}/{self.restarts}"
        )


def _effective_operator(t: np.ndarray, vecs: list[np.ndarray], k: int) -> np.ndarray:
    """Contract all parties except k: eff[a,b] = <a,others|H|b,others>."""
    n = len(vecs)
    letters = "abcdefghijklmnop"
    bra = [letters[i] for i in range(n)]
    ket = [letters[n + i] for i in range(n)]
    sub = "".join(bra) + "".join(ket)
    operands = [t]
    terms = [sub]
    for i in range(n):
        if i == k:
            continue
        operands.append(vecs[i].conj())
        terms.append(bra[i])
        operands.append(vecs[i])
        terms.append(ket[i])
    subscripts = ",".join(terms) + "->" + bra[k] + ket[k]
    return np.einsum(subscripts, *operands, optimize=True)


def min_over_products(h: np.ndarray, dims, cfg: SeeSawConfig | None = None) -> MinProductsResult:
    """See-saw minimization of Tr(H pi) over product projections pi.

    Each pass holds all parties but one fixed; the optimal local vector
    is the minimum eigenvector of the effective single-party operator.
    The per-sweep objective is non-increasing (asserted).  Restarts are
    independent and merged by min, keyed by (value, restart index), so
    the result is deterministic under (seed, restarts).
    """
    cfg = cfg or SeeSawConfig()
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise ValueError("objective matrix must be Hermitian")
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    if int(np.prod(dims)) != h.shape[0]:
        raise ValueError(f"dims {dims} do not match matrix size {h.shape[0]}")
    t = h.reshape(*dims, *dims)

    finals = []
    argmins = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, r])
        vecs = []
        for d in dims:
            v = rng.normal(size=d) + 1j * rng.normal(size=d)
            vecs.append(v / np.linalg.norm(v))
        prev = np.inf
        val = np.inf
        for _ in range(cfg.max_sweeps):
            for k in range(n):
                eff = _effective_operator(t, vecs, k)
                w, v = np.linalg.eigh(eff)
                vecs[k] = v[:, 0]
            val = float(_objective(t, vecs))
            assert val <= prev + 1e-9, "see-saw sweep increased the objective"
            if prev - val < cfg.tol:
                break
            prev = val
        finals.append(val)
        argmins.append(ProductProjection(tuple(vecs)))

    best_idx = min(range(cfg.restarts), key=lambda i: (finals[i], i))
    best = finals[best_idx]
    consensus = sum(1 for v in finals if v <= best + 1e-9)
    return MinProductsResult(
        value=best,
        argmin=argmins[best_idx],
        consensus=consensus,
        restarts=cfg.restarts,
        values=tuple(finals),
    )


def _objective(t: np.ndarray, vecs: list[np.ndarray]) -> float:
    n = len(vecs)
    letters = "abcdefghijklmnop"
    sub = letters[: 2 * n]
    operands = [t]
    terms = [sub]
    for i in range(n):
        operands.append(vecs[i].conj())
        terms.append(letters[i])
        operands.append(vecs[i])
        terms.append(letters[n + i])
    return np.einsum(",".join(terms) + "->", *operands, optimize=True).real


# ----------------------------------------------------------------------------
# three-qubit product-state bound


def bell_correlation(phi1: float, phi2: float, phi3: float) -> float:
    """Four-term cosine combination entering the three-qubit product bound."""
    return float(
        np.cos(phi1 + phi2 + phi3)
        + np.cos(phi1 + phi2 - phi3)
        + np.cos(phi1 - phi2 + phi3)
        - np.cos(phi1 - phi2 - phi3)
    )


def product_bound_objective(thetas, phis) -> float:
    """sin(2 t1) sin(2 t2) sin(2 t3) * C(phi1, phi2, phi3)."""
    s = np.sin(2 * np.asarray(thetas, dtype=float))
    return float(np.prod(s)) * bell_correlation(*phis)


def product_from_angles(thetas, phis) -> ProductProjection:
    """Product projection with local vectors (cos t_k, e^{i phi_k} sin t_k)."""
    facs = tuple(
        np.array([np.cos(t), np.exp(1j * p) * np.sin(t)], dtype=complex)
        for t, p in zip(thetas, phis)
    )
    return ProductProjection(facs)


def bell_bound_three_qubit(restarts: int = 120, seed: int = 0) -> float:
    """Maximum of the trigonometric objective over all angles.

    Multistart quasi-Newton refinement from seeded uniform starts.  The
    value equals 2 - min over product states of twice the integer-form
    three-qubit witness expectation, so it doubles as an independent
    check of the see-saw oracle on that witness.
    """
    rng = np.random.default_rng(seed)

    def neg(x):
        return -product_bound_objective(x[:3], x[3:])

    best = -np.inf
    for _ in range(restarts):
        x0 = np.concatenate(
            [rng.uniform(0, np.pi / 2, size=3), rng.uniform(-np.pi, np.pi, size=3)]
        )
        res = minimize(neg, x0, method="L-BFGS-B")
        if -res.fun > best:
            best = -res.fun
    return float(best)
