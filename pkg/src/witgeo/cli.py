# src/witgeo/cli.py

"""Command-line surface: construct, decompose, verify, estimate, threshold.

Every run emits one JSON report (or key,value CSV with --format csv) on
stdout; matrices go to sibling files under --out.  Randomized commands
require an explicit --seed.  Exit codes: 0 success, 1 verification
failure, 2 bad input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import io as wio
from .linalg import DensityState, hs_inner, random_density
from .measurements import (
    WitnessDecomposition,
    far_face_decomposition,
    ghz_decomposition,
    qudit_decomposition,
    shot_estimate,
    standard_witness,
    three_qubit_decomposition,
    three_qubit_witness,
    two_qubit_decomposition,
)
from .oracle import SeeSawConfig, min_over_products, ppt_report
from .spin import is_prime
from .states import completely_random
from .upb import estimate_epsilon, far_face_witness, tiles
from .witness import (
    DETECTION_TOL,
    Witness,
    evaluate,
    frustum_predicate,
    qudit_detection_predicate,
    two_qubit_noise_threshold,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3


class BadInput(Exception):
    pass


class Target(NamedTuple):
    name: str
    rho0: DensityState
    tau0: DensityState
    witness: Witness
    decomposition: WitnessDecomposition
    extras: dict


def _build_target(args) -> Target:
    kind = args.target
    extras: dict = {}
    if kind == "bell2":
        w = standard_witness(2)
        return Target("bell2", w.rho0, w.tau0, w, two_qubit_decomposition(), extras)
    if kind == "qudit":
        d = _positive_int(args.params, 0, "d")
        if not is_prime(d):
            raise BadInput(f"qudit dimension must be prime, got {d}")
        w = standard_witness(d)
        return Target(f"qudit{d}", w.rho0, w.tau0, w, qudit_decomposition(d), extras)
    if kind == "ghz":
        n = _positive_int(args.params, 0, "n")
        if n < 2:
            raise BadInput("ghz needs at least 2 parties")
        g = ghz_decomposition(n)
        extras = {"a": g.a, "b": g.b, "c": g.c, "mixing": g.mixing}
        return Target(f"ghz{n}", g.witness.rho0, g.witness.tau0, g.witness, g.decomposition, extras)
    if kind == "threeq":
        m = _float_param(args.params, 0, "m")
        t = _float_param(args.params, 1, "t")
        if t == 0:
            raise BadInput("separable target (t = 0), no witness")
        if t < 0:
            raise BadInput("t < 0: swap the anti-diagonal parameters (mirror symmetry) first")
        w = three_qubit_witness(m, t)
        return Target(f"threeq_m{m}_t{t}", w.rho0, w.tau0, w, three_qubit_decomposition(t), extras)
    if kind == "upb":
        if args.seed is None:
            raise BadInput("upb targets require an explicit --seed")
        source = args.params[0] if args.params else "tiles"
        upb = tiles() if source == "tiles" else wio.load_upb(source)
        est = estimate_epsilon(upb, restarts=args.restarts, seed=args.seed)
        w = far_face_witness(upb, est.epsilon)
        extras = {
            "epsilon": est.epsilon,
            "consensus": f"{est.consensus}/{est.restarts}",
            "m": upb.m,
            "N": upb.shape.size,
        }
        return Target("upb", w.rho0, w.tau0, w, far_face_decomposition(upb, est.epsilon), extras)
    raise BadInput(f"unknown target {kind!r}")


def _positive_int(params, idx, name) -> int:
    try:
        return int(params[idx])
    except (IndexError, ValueError):
        raise BadInput(f"missing or invalid integer parameter {name!r}") from None


def _float_param(params, idx, name) -> float:
    try:
        return float(params[idx])
    except (IndexError, ValueError):
        raise BadInput(f"missing or invalid parameter {name!r}") from None


def _scalar(value, tol=None, stderr=None) -> dict:
    out = {"value": float(value)}
    if tol is not None:
        out["tol"] = float(tol)
    if stderr is not None:
        out["stderr"] = float(stderr)
    return out


def _emit(report: dict, args) -> None:
    if args.quiet:
        print(report.get("headline", ""))
        return
    if args.format == "csv":
        for key, value in _flatten(report):
            print(f"{key},{value}")
        return
    print(json.dumps(report, indent=2))


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def cmd_witness(args) -> int:
    t0 = time.perf_counter()
    target = _build_target(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    wfile = out / f"{target.name}_witness.json"
    taufile = out / f"{target.name}_tau0.json"
    rhofile = out / f"{target.name}_rho0.json"
    wio.save_witness(wfile, target.witness)
    wio.save_state(taufile, target.tau0)
    wio.save_state(rhofile, target.rho0)
    outputs = {
        "c0": _scalar(target.witness.c0, tol=1e-12),
        "detection_value": _scalar(evaluate(target.witness, target.rho0), tol=DETECTION_TOL),
        "witness_file": str(wfile),
        "tau0_file": str(taufile),
        "rho0_file": str(rhofile),
    }
    if target.witness.s0 is not None:
        outputs["s0"] = _scalar(target.witness.s0, tol=1e-12)
    for key, value in target.extras.items():
        outputs[key] = _scalar(value, tol=1e-12) if isinstance(value, float) else value
    report = {
        "command": "witness",
        "target": target.name,
        "inputs": {"params": args.params},
        "outputs": outputs,
        "seed": args.seed,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "headline": target.witness.c0,
    }
    _emit(report, args)
    return EXIT_OK


def cmd_decompose(args) -> int:
    t0 = time.perf_counter()
    target = _build_target(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dfile = out / f"{target.name}_decomposition.json"
    wio.save_decomposition(dfile, target.decomposition)
    residual = target.decomposition.residual(target.witness)
    report = {
        "command": "decompose",
        "target": target.name,
        "outputs": {
            "settings": len(target.decomposition.settings),
            "reconstruction_residual": _scalar(residual, tol=1e-10),
            "decomposition_file": str(dfile),
        },
        "seed": args.seed,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "headline": len(target.decomposition.settings),
    }
    _emit(report, args)
    return EXIT_OK if residual <= 1e-10 else EXIT_INTERNAL


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.seed is None:
        raise BadInput("verify requires an explicit --seed")
    target = _build_target(args)
    rng = np.random.default_rng(args.seed)
    checks = []

    report_ppt = ppt_report(target.rho0)
    ppt_needed = args.target in ("threeq", "upb")
    if ppt_needed:
        checks.append(("ppt_all_cuts", report_ppt.minimum >= -1e-10, report_ppt.minimum))

    diff = target.rho0.mat - target.tau0.mat
    worst_identity = 0.0
    for _ in range(100):
        rho = random_density(target.rho0.n, rng, target.rho0.dims)
        lhs = evaluate(target.witness, rho)
        rhs = -hs_inner(diff, rho.mat - target.tau0.mat).real
        worst_identity = max(worst_identity, abs(lhs - rhs))
    checks.append(("induced_inner_product_identity", worst_identity <= 1e-10, worst_identity))

    residual = target.decomposition.residual(target.witness)
    checks.append(("decomposition_reconstruction", residual <= 1e-10, residual))

    detection = evaluate(target.witness, target.rho0)
    checks.append(("detects_target", detection < -DETECTION_TOL, detection))

    oracle = min_over_products(
        target.witness.matrix,
        target.rho0.dims,
        SeeSawConfig(restarts=args.restarts, seed=args.seed),
    )
    checks.append(("positive_on_products", oracle.value >= -1e-8, oracle.value))

    failed = [name for name, ok, _ in checks if not ok]
    report = {
        "command": "verify",
        "target": target.name,
        "checks": {name: {"passed": ok, "value": val} for name, ok, val in checks},
        "ppt_min_eigenvalues": {
            "+".join(str(p) for p in cut): _scalar(v, tol=1e-10)
            for cut, v in report_ppt.min_eigenvalues.items()
        },
        "confidence": {"seesaw": oracle.summary()},
        "failed": failed,
        "seed": args.seed,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "headline": "pass" if not failed else f"fail:{','.join(failed)}",
    }
    _emit(report, args)
    return EXIT_OK if not failed else EXIT_VERIFY_FAIL


def cmd_estimate(args) -> int:
    t0 = time.perf_counter()
    if args.seed is None:
        raise BadInput("estimate requires an explicit --seed")
    if args.shots < 1:
        raise BadInput("--shots must be >= 1")
    target = _build_target(args)
    state = {
        "rho0": target.rho0,
        "tau0": target.tau0,
        "d0": completely_random(target.rho0.dims),
    }[args.state]
    dec = target.decomposition
    if args.decomposition is not None:
        dec = wio.load_decomposition(args.decomposition)
        if dec.dims != target.rho0.dims:
            raise BadInput(
                f"decomposition shape {dec.dims} does not match target {target.rho0.dims}"
            )
    est = shot_estimate(dec, state, args.shots, args.seed)
    exact = evaluate(target.witness, state)
    z = (est.estimate - exact) / est.stderr if est.stderr > 0 else 0.0
    report = {
        "command": "estimate",
        "target": target.name,
        "inputs": {"state": args.state, "shots_per_setting": args.shots},
        "outputs": {
            "estimate": _scalar(est.estimate, stderr=est.stderr),
            "exact": _scalar(exact, tol=1e-12),
            "z_score": _scalar(z),
        },
        "seed": args.seed,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "headline": est.estimate,
    }
    _emit(report, args)
    return EXIT_OK


def _parse_amps(text: str):
    path = Path(text)
    if path.exists():
        return json.loads(path.read_text())
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise BadInput(f"cannot parse amplitudes from {text!r}") from None


def cmd_threshold(args) -> int:
    t0 = time.perf_counter()
    kind = args.kind
    if kind == "twoqubit":
        a = _float_param(args.params, 0, "a")
        b = _float_param(args.params, 1, "b")
        delta = _float_param(args.params, 2, "delta")
        norm = np.hypot(a, b)  # accept rounded inputs; rescale to the unit circle
        if norm == 0:
            raise BadInput("a and b cannot both be zero")
        value = two_qubit_noise_threshold(a / norm, b / norm, delta)
        outputs = {"threshold": _scalar(value, tol=1e-15)}
        headline = value
    elif kind == "qudit":
        d = _positive_int(args.params, 0, "d")
        amps = _parse_amps(args.params[1]) if len(args.params) > 1 else None
        if amps is None:
            raise BadInput("qudit threshold needs amplitudes (file or comma list)")
        amps = np.asarray(amps, dtype=float)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise BadInput("amplitudes cannot all be zero")
        p = _float_param(args.params, 2, "p")
        delta = _float_param(args.params, 3, "delta")
        value = qudit_detection_predicate(d, amps / norm, p, delta)
        outputs = {"detected": bool(value)}
        headline = value
    elif kind == "frustum":
        p, delta, n, m, b, eps = (_float_param(args.params, i, "frustum args") for i in range(6))
        value = frustum_predicate(p, delta, int(n), int(m), b, eps)
        outputs = {"detected": bool(value)}
        headline = value
    else:
        raise BadInput(f"unknown threshold kind {kind!r}")
    report = {
        "command": "threshold",
        "kind": kind,
        "inputs": {"params": args.params},
        "outputs": outputs,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "headline": headline,
    }
    _emit(report, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="witgeo",
        description="Entanglement witnesses from separable-set geometry: "
        "construction, local-measurement decomposition, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_target=True):
        if with_target:
            p.add_argument(
                "target", choices=["bell2", "qudit", "ghz", "threeq", "upb"]
            )
            p.add_argument("params", nargs="*", help="target parameters")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--shots", type=int, default=10000)
        p.add_argument("--restarts", type=int, default=32)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=".")
        p.add_argument("--quiet", action="store_true")

    add_common(sub.add_parser("witness", help="construct a witness"))
    add_common(sub.add_parser("decompose", help="emit measurement settings"))
    add_common(sub.add_parser("verify", help="run the invariant suite"))
    est = sub.add_parser("estimate", help="finite-shot estimate of Tr(W rho)")
    add_common(est)
    est.add_argument("--state", choices=["rho0", "tau0", "d0"], default="rho0")
    est.add_argument(
        "--decomposition", default=None, help="use a stored decomposition document"
    )
    thr = sub.add_parser("threshold", help="detection thresholds and predicates")
    thr.add_argument("kind", choices=["twoqubit", "qudit", "frustum"])
    thr.add_argument("params", nargs="*")
    thr.add_argument("--format", choices=["json", "csv"], default="json")
    thr.add_argument("--quiet", action="store_true")
    return parser


_HANDLERS = {
    "witness": cmd_witness,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "estimate": cmd_estimate,
    "threshold": cmd_threshold,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (BadInput, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except AssertionError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
