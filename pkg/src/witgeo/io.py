# src/witgeo/io.py

"""JSON documents for matrices, witnesses, decompositions and UPB families.

Matrix document: {"dims": [d1, ...], "entries": [[re, im], ...]} with the
entries row-major over the full N x N matrix, N = prod(dims).  Floats are
written by round-trip repr, so readers recover the exact doubles.  The
witness document is a matrix document plus a {"c0", "s0"} metadata block;
the decomposition document lists the identity coefficient and, per
setting, the party bases (as matrix documents) and the dense weight
table; the UPB document stores per-party complex factor lists.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .linalg import DensityState, SystemShape
from .measurements import MeasurementSetting, WitnessDecomposition
from .upb import UpbSet
from .witness import Witness


def _entries(mat: np.ndarray) -> list[list[float]]:
    flat = np.asarray(mat, dtype=complex).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def _from_entries(entries, n: int) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in entries])
    if len(flat) != n * n:
        raise ValueError(f"expected {n*n} entries, got {len(flat)}")
    return flat.reshape(n, n)


def matrix_doc(mat: np.ndarray, dims) -> dict:
    dims = [int(d) for d in dims]
    n = int(np.prod(dims))
    mat = np.asarray(mat)
    if mat.shape != (n, n):
        raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
    return {"dims": dims, "entries": _entries(mat)}


def matrix_from_doc(doc: dict) -> tuple[np.ndarray, tuple[int, ...]]:
    dims = tuple(int(d) for d in doc["dims"])
    n = int(np.prod(dims))
    return _from_entries(doc["entries"], n), dims


def save_matrix(path, mat: np.ndarray, dims) -> None:
    Path(path).write_text(json.dumps(matrix_doc(mat, dims)))


def load_matrix(path) -> tuple[np.ndarray, tuple[int, ...]]:
    return matrix_from_doc(json.loads(Path(path).read_text()))


def save_state(path, state: DensityState) -> None:
    save_matrix(path, state.mat, state.dims)


def load_state(path) -> DensityState:
    mat, dims = load_matrix(path)
    return DensityState.from_matrix(mat, dims)


def witness_doc(w: Witness) -> dict:
    doc = matrix_doc(w.matrix, w.dims)
    doc["c0"] = float(w.c0)
    doc["s0"] = None if w.s0 is None else float(w.s0)
    return doc


def save_witness(path, w: Witness) -> None:
    Path(path).write_text(json.dumps(witness_doc(w)))


def load_witness_matrix(path) -> tuple[np.ndarray, tuple[int, ...], float, float | None]:
    """Matrix, dims and metadata of a stored witness (states are not stored)."""
    doc = json.loads(Path(path).read_text())
    mat, dims = matrix_from_doc(doc)
    s0 = doc.get("s0")
    return mat, dims, float(doc["c0"]), None if s0 is None else float(s0)


def decomposition_doc(dec: WitnessDecomposition) -> dict:
    settings = []
    for sw, setting in dec.settings:
        settings.append(
            {
                "weight": float(sw),
                "party_bases": [
                    matrix_doc(u, [u.shape[0]]) for u in setting.party_bases
                ],
                "outcome_weights": {
                    "shape": list(setting.weights.shape),
                    "values": [float(x) for x in setting.weights.ravel()],
                },
            }
        )
    return {"identity_coeff": float(dec.identity_coeff), "settings": settings}


def save_decomposition(path, dec: WitnessDecomposition) -> None:
    Path(path).write_text(json.dumps(decomposition_doc(dec)))


def load_decomposition(path) -> WitnessDecomposition:
    doc = json.loads(Path(path).read_text())
    settings = []
    for s in doc["settings"]:
        bases = tuple(matrix_from_doc(b)[0] for b in s["party_bases"])
        w = np.array(s["outcome_weights"]["values"]).reshape(
            s["outcome_weights"]["shape"]
        )
        settings.append((float(s["weight"]), MeasurementSetting(bases, w)))
    return WitnessDecomposition(float(doc["identity_coeff"]), tuple(settings))


def upb_doc(upb: UpbSet) -> dict:
    return {
        "shape": list(upb.shape.dims),
        "vectors": [
            [[[float(z.real), float(z.imag)] for z in factor] for factor in vec]
            for vec in upb.vectors
        ],
    }


def save_upb(path, upb: UpbSet) -> None:
    Path(path).write_text(json.dumps(upb_doc(upb)))


def load_upb(path) -> UpbSet:
    doc = json.loads(Path(path).read_text())
    shape = SystemShape(tuple(int(d) for d in doc["shape"]))
    vectors = tuple(
        tuple(np.array([complex(re, im) for re, im in factor]) for factor in vec)
        for vec in doc["vectors"]
    )
    return UpbSet(shape, vectors)
