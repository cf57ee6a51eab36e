# src/witgeo/linalg.py

"""Dense complex matrix algebra for multipartite density operators.

Everything operates on plain ``numpy`` complex arrays.  States carry
their tensor-factor shape so partial transposes and local contractions
know where the party boundaries are.  All values are treated as
immutable after construction; arrays stored on the dataclasses are
marked read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

# Validation tolerances.  Matrices here stay small (N <= 128) and well
# conditioned, so these are comfortable.
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-9
TOL_EIG = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SystemShape:
    """Ordered local dimensions (d1, ..., dn) of a tensor-product space."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must all be >= 2, got {dims}")

    @property
    def size(self) -> int:
        """Total dimension N = d1 * ... * dn."""
        return int(np.prod(self.dims))

    @property
    def parties(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class DensityState:
    """A matrix certified as a density operator on a given tensor shape.

    Construction validates hermiticity, unit trace and positive
    semidefiniteness, so any ``DensityState`` in circulation is a valid
    state up to the module tolerances.
    """

    mat: np.ndarray
    shape: SystemShape

    def __post_init__(self):
        mat = _readonly(self.mat)
        object.__setattr__(self, "mat", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        if mat.shape[0] != self.shape.size:
            raise ValueError(
                f"matrix dimension {mat.shape[0]} does not match shape {self.shape.dims}"
            )
        herm = np.abs(mat - mat.conj().T).max()
        if herm > TOL_HERM:
            raise ValueError(f"not Hermitian: deviation {herm:.3e}")
        tr = np.trace(mat)
        if abs(tr - 1.0) > TOL_TRACE:
            raise ValueError(f"trace {tr} != 1")
        low = np.linalg.eigvalsh(mat).min()
        if low < -TOL_PSD:
            raise ValueError(f"not positive semidefinite: min eigenvalue {low:.3e}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.shape.dims

    @property
    def n(self) -> int:
        return self.shape.size

    @classmethod
    def from_matrix(cls, mat: np.ndarray, dims) -> "DensityState":
        return cls(np.asarray(mat, dtype=complex), SystemShape(tuple(dims)))


@dataclass(frozen=True)
class ProductProjection:
    """A rank-1 product projection, stored as one unit vector per party."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        facs = tuple(_readonly(np.ravel(f)) for f in self.factors)
        object.__setattr__(self, "factors", facs)
        for f in facs:
            if abs(np.linalg.norm(f) - 1.0) > 1e-12:
                raise ValueError("product factors must be unit vectors")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    def vector(self) -> np.ndarray:
        """The full product vector (kron of the factors)."""
        return reduce(np.kron, self.factors)

    def matrix(self) -> np.ndarray:
        v = self.vector()
        return np.outer(v, v.conj())


def tensor(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product with party 1 most significant: |jk> -> j*d2 + k."""
    if not mats:
        raise ValueError("tensor() needs at least one factor")
    return reduce(np.kron, [np.asarray(m, dtype=complex) for m in mats])


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr[a^dag b]."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))  # vdot conjugates a and sums entrywise


def hs_norm(a: np.ndarray) -> float:
    return float(np.sqrt(hs_inner(a, a).real))


def hs_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt distance sqrt(<a-b, a-b>)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return hs_norm(a - b)


def _as_matrix_and_dims(rho, dims=None):
    if isinstance(rho, DensityState):
        return np.asarray(rho.mat), rho.dims
    if dims is None:
        raise ValueError("dims required when passing a bare matrix")
    return np.asarray(rho, dtype=complex), tuple(dims)


def partial_transpose(rho, parties, dims=None) -> np.ndarray:
    """Transpose the tensor indices of the listed parties (0-based).

    Accepts a DensityState or a bare matrix plus ``dims``.
    """
    mat, dd = _as_matrix_and_dims(rho, dims)
    n = len(dd)
    parties = sorted(set(int(p) for p in parties))
    if not parties:
        raise ValueError("parties must be a nonempty set")
    if parties[0] < 0 or parties[-1] >= n:
        raise ValueError(f"invalid party index in {parties} for {n} parties")
    t = mat.reshape(*dd, *dd)
    perm = list(range(2 * n))
    for p in parties:
        perm[p], perm[n + p] = perm[n + p], perm[p]
    return t.transpose(perm).reshape(mat.shape)


def hermitian_eigen(a: np.ndarray):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as columns).  Rejects
    non-Hermitian input instead of silently symmetrizing.
    """
    a = np.asarray(a, dtype=complex)
    dev = np.abs(a - a.conj().T).max()
    if dev > TOL_HERM:
        raise ValueError(f"matrix is not Hermitian: deviation {dev:.3e}")
    w, v = np.linalg.eigh(a)
    return w, v


def is_hermitian(a: np.ndarray, tol: float = TOL_HERM) -> bool:
    a = np.asarray(a)
    return bool(np.abs(a - a.conj().T).max() <= tol)


def random_density(n: int, rng: np.random.Generator, dims=None) -> DensityState:
    """Full-rank random density from a complex Wishart draw (test helper)."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityState.from_matrix(m, dims if dims is not None else (n,))
