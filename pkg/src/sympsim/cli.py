"""Command-line driver: ``sympsim {run,evolve,verify,bench}``.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 input/parse error, 2 runtime error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from .circuit import parse_circuit
from .core import (
    ComplexState,
    PhaseState,
    complex_to_real_state,
    decompose_hermitian,
    matrix_from_json,
    real_to_complex_state,
)
from .dynamics import IntegratorConfig, QuadraticHamiltonian, integrate, trajectory_table
from .errors import InvalidInterval, SympsimError
from .runner import measure, run_complex, run_real
from .verify import run_battery

EXIT_OK, EXIT_INPUT, EXIT_RUNTIME, EXIT_VERIFY = 0, 1, 2, 3


def _default_seed() -> int:
    env = os.environ.get("SYMPSIM_SEED")
    return int(env) if env else 0


def _fail(code: int, message: str) -> int:
    print(f"sympsim: error: {message}", file=sys.stderr)
    return code


def _emit_json(obj, out) -> int:
    try:
        text = json.dumps(obj, allow_nan=False)
    except ValueError:
        return _fail(EXIT_RUNTIME, "result contains NaN or Inf; refusing to serialize")
    out.write(text + "\n")
    return EXIT_OK


def _state_json(state) -> dict:
    if isinstance(state, ComplexState):
        return {"re": state.amplitudes.real.tolist(), "im": state.amplitudes.imag.tolist()}
    return {"q": state.q.tolist(), "p": state.p.tolist()}


def _load_state(obj) -> ComplexState | PhaseState:
    if isinstance(obj, list):
        return ComplexState(np.array(obj, dtype=float))
    if "q" in obj:
        return PhaseState(obj["q"], obj["p"])
    re = np.array(obj["re"], dtype=float)
    im = np.array(obj.get("im", np.zeros_like(re)), dtype=float)
    return ComplexState(re + 1j * im)


# ---------------------------------------------------------------------------


def cmd_run(args, out=sys.stdout) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(EXIT_INPUT, f"cannot read {args.input}: {exc}")
    try:
        circuit = parse_circuit(text)
    except SympsimError as exc:
        return _fail(EXIT_INPUT, f"{args.input}: {exc}")

    try:
        init = _load_state(json.loads(Path(args.psi0).read_text())) if args.psi0 else None
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(EXIT_INPUT, f"cannot load initial state: {exc}")

    try:
        results = {}
        if args.backend in ("complex", "both"):
            psi0 = init if init is None or isinstance(init, ComplexState) else real_to_complex_state(init)
            results["complex"] = run_complex(circuit, psi0)
        if args.backend in ("real", "both"):
            phi0 = init if init is None or isinstance(init, PhaseState) else complex_to_real_state(init)
            results["real"] = run_real(circuit, phi0)

        payload = {}
        for name, state in results.items():
            entry = {"counts": None, "total_norm": state.norm_squared()}
            if circuit.measure_at_end and args.shots > 0:
                m = measure(state, args.shots, args.seed)
                entry["counts"] = {str(k): v for k, v in m.counts.items()}
                entry["total_norm"] = m.total_norm
            if args.emit_state:
                entry["state"] = _state_json(state)
            payload[name] = entry
    except SympsimError as exc:
        return _fail(EXIT_RUNTIME, f"{type(exc).__name__}: {exc}")

    if args.backend == "both":
        a = results["complex"].amplitudes
        b = real_to_complex_state(results["real"]).amplitudes
        doc = {"backend": "both", **payload, "deviation": float(np.max(np.abs(a - b)))}
    else:
        doc = {"backend": args.backend, **payload[args.backend]}
    return _emit_json(doc, out)


def _load_evolve_input(doc: dict, args):
    spec = doc["H"]
    if "K" in spec:
        k = np.array(spec["K"], dtype=float)
        l = np.array(spec["L"], dtype=float) if "L" in spec else np.zeros_like(k)
        H = QuadraticHamiltonian(k, l)
    else:
        H = QuadraticHamiltonian.from_operator(decompose_hermitian(matrix_from_json(spec), tol=args.tol))
    if "phi0" in doc:
        phi0 = PhaseState(doc["phi0"]["q"], doc["phi0"]["p"])
    else:
        state = _load_state(doc["psi0"])
        phi0 = state if isinstance(state, PhaseState) else complex_to_real_state(state)
    dt = args.dt if args.dt is not None else doc.get("dt", 1e-3)
    method = args.method if args.method is not None else doc.get("method", "midpoint")
    return H, phi0, float(doc.get("t0", 0.0)), float(doc["t1"]), IntegratorConfig(dt=float(dt), method=method)


def cmd_evolve(args, out=sys.stdout) -> int:
    try:
        doc = json.loads(Path(args.input).read_text(encoding="utf-8"))
        H, phi0, t0, t1, cfg = _load_evolve_input(doc, args)
        if not t1 > t0:
            raise InvalidInterval(f"need t0 < t1, got t0={t0}, t1={t1}")
    except (OSError, ValueError, KeyError, TypeError) as exc:
        name = type(exc).__name__
        return _fail(EXIT_INPUT, f"{name}: {exc}" if isinstance(exc, SympsimError) else f"bad evolve input: {exc}")
    try:
        traj = integrate(H, phi0, t0, t1, cfg)
    except SympsimError as exc:
        return _fail(EXIT_RUNTIME, f"{type(exc).__name__}: {exc}")
    table = trajectory_table(traj, H)
    if args.out == "json":
        return _emit_json(table, out)
    n = phi0.dim
    if not all(np.isfinite(v) for v in table["hsym"] + table["norm"]):
        return _fail(EXIT_RUNTIME, "trajectory contains NaN or Inf")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["time"] + [f"q{i}" for i in range(n)] + [f"p{i}" for i in range(n)] + ["hsym", "norm"])
    for i, t in enumerate(table["times"]):
        w.writerow([repr(t)] + [repr(v) for v in table["q"][i]] + [repr(v) for v in table["p"][i]]
                   + [repr(table["hsym"][i]), repr(table["norm"][i])])
    return EXIT_OK


def cmd_verify(args, out=sys.stdout) -> int:
    results = run_battery(seed=args.seed, max_dim=args.max_dim, trials=args.trials)
    props = {}
    first_fail = None
    for r in results:
        ok = r.max_deviation <= args.tol
        props[r.name] = {"max_deviation": r.max_deviation, "per_n": {str(n): d for n, d in r.per_n.items()},
                         "pass": ok}
        print(f"{r.name}: max deviation {r.max_deviation:.3e} ({'ok' if ok else 'FAIL'})", file=sys.stderr)
        if not ok and first_fail is None:
            first_fail = r.name
    code = _emit_json({"seed": args.seed, "tol": args.tol, "properties": props, "pass": first_fail is None}, out)
    if code:
        return code
    if first_fail is not None:
        return _fail(EXIT_VERIFY, f"property {first_fail} exceeds tol {args.tol:g}")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def cmd_bench(args, out=sys.stdout) -> int:
    rows = bench_mod.run_bench(args.qubits, args.depths, seed=args.seed, warmup=args.warmup, iters=args.iters)
    if args.out == "json":
        return _emit_json([dict(zip(bench_mod.CSV_HEADER, r.as_tuple())) for r in rows], out)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(bench_mod.CSV_HEADER)
    for r in rows:
        w.writerow(r.as_tuple())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["complex", "real", "both"], default="both")
    common.add_argument("--shots", type=int, default=1024)
    common.add_argument("--seed", type=int, default=_default_seed(),
                        help="RNG seed (default: $SYMPSIM_SEED or 0)")
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--emit-state", action="store_true")
    common.add_argument("--dt", type=float, default=None)
    common.add_argument("--method", choices=["midpoint", "strang"], default=None)
    common.add_argument("--out", choices=["json", "csv"], default=None)

    parser = argparse.ArgumentParser(prog="sympsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="execute a circuit file")
    p.add_argument("input")
    p.add_argument("--psi0", help="JSON initial state: {re, im} or {q, p}")
    p.set_defaults(func=cmd_run, default_out="json")

    p = sub.add_parser("evolve", parents=[common], help="integrate a quadratic Hamiltonian")
    p.add_argument("input")
    p.set_defaults(func=cmd_evolve, default_out="json")

    p = sub.add_parser("verify", parents=[common], help="run the randomized property battery")
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--trials", type=int, default=10)
    p.set_defaults(func=cmd_verify, default_out="json")

    p = sub.add_parser("bench", parents=[common], help="time both backends over a grid")
    p.add_argument("--qubits", type=_int_list, default=[2, 4, 6])
    p.add_argument("--depths", type=_int_list, default=[10, 100])
    p.add_argument("--warmup", type=int, default=5)
    p.add_argument("--iters", type=int, default=20)
    p.set_defaults(func=cmd_bench, default_out="csv")
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    if args.out is None:
        args.out = args.default_out
    if args.shots < 0:
        return _fail(EXIT_INPUT, "--shots must be >= 0")
    if not args.tol > 0:
        return _fail(EXIT_INPUT, "--tol must be positive")
    return args.func(args, out or sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
