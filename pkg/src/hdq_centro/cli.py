"""Command-line front end.

Exit codes: 0 success, 1 a structure check failed, 2 invalid input,
3 numerical instability.

Relative ``--out`` paths resolve against ``$HDQ_OUTPUT_DIR`` when it is set.
``--config FILE`` reads flat ``key=value`` lines whose keys are option names;
explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from .centro import classify, eig_centro, eig_dense, eig_skew, StructureClass
from .errors import (ConvergenceError, InvalidArgument, NumericalInstability, ReferenceMissing,
                     SingularSystem, StructureError)
from .grid import DEFAULT_DELTA, GRID_KINDS, make_grid
from .hdq import operator_from_csv, weights
from .plate import (METHODS, PlateSpec, lookup_reference, parse_bc, reference_values,
                    solve_plate)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_UNSTABLE = 0, 1, 2, 3
OUTPUT_DIR_ENV = "HDQ_OUTPUT_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidArgument(message)


def fmt(v):
    return format(float(v), ".12g")


def _float_list(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise InvalidArgument(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise InvalidArgument(f"expected comma-separated integers, got {text!r}") from None


def _alpha(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def _alpha_list(text):
    try:
        return [_alpha(v) for v in str(text).split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise InvalidArgument(f"invalid alpha list {text!r}") from None


def read_config(path):
    """Flat ``key=value`` file; ``#`` starts a comment, dashes in keys become underscores."""
    cfg = {}
    for num, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgument(f"{path}:{num}: expected key=value")
        key, value = line.split("=", 1)
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def resolve_out(path):
    if path is None or path == "-":
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def emit(text, out):
    target = resolve_out(out)
    if target is None:
        sys.stdout.write(text)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)


def rows_to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def rows_to_json(header, rows):
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"


def _render(header, rows, fmt_name):
    return rows_to_json(header, rows) if fmt_name == "json" else rows_to_csv(header, rows)


# -- weights ------------------------------------------------------------------

def cmd_weights(args):
    grid = make_grid(args.grid, args.n, args.delta)
    op = weights(grid, args.m)
    emit(op.to_json() + "\n" if args.format == "json" else op.to_csv(), args.out)
    return EXIT_OK


# -- parity -------------------------------------------------------------------

def cmd_parity(args):
    header = ["grid", "N", "m", "structure", "expected", "ok"]
    rows = []
    all_ok = True
    for kind in args.grids:
        for n in args.sizes:
            grid = make_grid(kind, n, args.delta)
            for m in args.orders:
                found = classify(weights(grid, m).W, args.tol)
                expected = StructureClass.SKEW if m % 2 else StructureClass.CENTRO
                ok = found is expected
                all_ok &= ok
                rows.append([kind, n, m, found.value, expected.value, "pass" if ok else "FAIL"])
    emit(_render(header, rows, args.format), args.out)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# -- eig ----------------------------------------------------------------------

def cmd_eig(args):
    text = Path(args.matrix).read_text() if args.matrix != "-" else sys.stdin.read()
    if text.lstrip().startswith("#"):
        _, q = operator_from_csv(text)
    else:
        q = np.array([[float(v) for v in ln.split(",")] for ln in text.strip().splitlines()])
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InvalidArgument(f"matrix must be square, got shape {q.shape}")
    structure = classify(q, args.tol)
    odd = q.shape[0] % 2 == 1
    if structure is StructureClass.CENTRO and odd and args.method != "dense":
        spec = eig_centro(q, vectors=True, tol=args.tol)
    elif structure is StructureClass.SKEW and odd and args.method != "dense":
        spec = eig_skew(q, tol=args.tol)
    else:
        spec = eig_dense(q, vectors=True, backend=args.backend)
    out = spec.sorted().to_dict(q)
    out["structure"] = structure.value
    emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


# -- plate --------------------------------------------------------------------

def _plate_job(job):
    spec, method, modes = job
    return solve_plate(spec, method, modes=modes)


def _check_plate_args(args):
    bc_x, bc_y = parse_bc(args.bc)
    methods = list(METHODS) if args.method == "all" else [m.strip() for m in args.method.split(",")]
    for m in methods:
        if m not in METHODS and m != "auto":
            raise InvalidArgument(f"unknown method {m!r}; expected one of {METHODS}, auto or all")
        if m in ("one_axis", "two_axis") and not (bc_x[0] == bc_x[1] and bc_y[0] == bc_y[1]):
            raise StructureError(f"method {m} needs symmetric edge pairs, got {args.bc}")
    if args.compare:
        reference_values(args.compare)
        for a in args.alpha:
            lookup_reference(a, args.compare)
    if args.modes < 1:
        raise InvalidArgument("--modes must be >= 1")
    return methods


def cmd_plate(args):
    methods = _check_plate_args(args)
    deltas = args.delta_sweep or [args.delta]
    jobs = [(PlateSpec.from_string(args.bc, a, args.n, args.ny, d), m,
             1 if args.delta_sweep else args.modes)
            for d in deltas for a in args.alpha for m in methods]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(_plate_job, jobs))

    header = ["alpha", "method", "mode_index", "omega_bar", "symmetry_label"]
    if args.delta_sweep:
        header = ["delta"] + header
    if args.compare:
        header += ["reference", "relative_error"]
    rows = []
    for (spec, method, _), sol in zip(jobs, results):
        for k, (w, label) in enumerate(zip(sol.omega, sol.labels), 1):
            row = [fmt(spec.alpha), sol.method, k, fmt(w), label]
            if args.delta_sweep:
                row = [fmt(spec.delta)] + row
            if args.compare:
                if k == 1:
                    ref = lookup_reference(spec.alpha, args.compare)
                    row += [fmt(ref), fmt((w - ref) / ref)]
                else:
                    row += ["", ""]
            rows.append(row)
    emit(_render(header, rows, args.format), args.out)
    return EXIT_OK


# -- bench --------------------------------------------------------------------

def cmd_bench(args):
    if args.repetitions < 1:
        raise InvalidArgument(f"--repetitions must be >= 1, got {args.repetitions}")
    results = bench_mod.run_bench(args.sizes, args.repetitions, args.bc, args.alpha)
    header = ["n", "interior", "one_axis_blocks", "two_axis_blocks", "t_dense", "t_one_axis",
              "t_two_axis", "speedup_one_axis", "speedup_two_axis", "ops_ratio_one_axis",
              "ops_ratio_two_axis", "largest_block_cost_fraction"]
    rows = [[r.n, r.interior, "/".join(map(str, r.one_axis_dims)), "/".join(map(str, r.two_axis_dims)),
             fmt(r.t_dense), fmt(r.t_one_axis), fmt(r.t_two_axis), fmt(r.speedup_one_axis),
             fmt(r.speedup_two_axis), fmt(r.ops_ratio_one_axis), fmt(r.ops_ratio_two_axis),
             fmt(r.ops_fraction_largest_block)] for r in results]
    emit(_render(header, rows, args.format), args.out)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="hdq", description="Harmonic differential quadrature operators, "
                     "structured eigensolvers and plate vibration.")
    parser.add_argument("--config", help="flat key=value file supplying option defaults")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("weights", help="write an HDQ weighting matrix")
    p.add_argument("--grid", choices=GRID_KINDS, default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    common(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("parity", help="check the even/odd structure of weighting matrices")
    p.add_argument("--grids", type=lambda s: s.split(","), default=list(GRID_KINDS))
    p.add_argument("--sizes", type=_int_list, default=[5, 7, 9, 11, 13, 15])
    p.add_argument("--orders", type=_int_list, default=[1, 2, 3, 4])
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("eig", help="spectrum of a CSV matrix, reduced when structured")
    p.add_argument("matrix", help="CSV file (hdq operator format or bare rows); '-' for stdin")
    p.add_argument("--method", choices=("auto", "dense"), default="auto")
    p.add_argument("--backend", choices=("lapack", "qr"), default="lapack")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("plate", help="plate natural frequencies")
    p.add_argument("--bc", default="SS-C-SS-C", help="edges at x=0, y=0, x=1, y=1, e.g. SS-C-SS-C")
    p.add_argument("--alpha", type=_alpha_list, default=[1.0], help="aspect ratios a/b, e.g. 0.4,2/3,1")
    p.add_argument("--n", type=int, default=11)
    p.add_argument("--ny", type=int, default=None, help="points along y (default --n)")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--delta-sweep", type=_float_list, default=None,
                   help="comma-separated deltas; reports the fundamental for each")
    p.add_argument("--method", default="two_axis", help="dense, one_axis, two_axis, auto, all or a list")
    p.add_argument("--modes", type=int, default=1)
    p.add_argument("--compare", choices=("paper", "leissa"), default=None)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_plate)

    p = sub.add_parser("bench", help="dense vs reduced eigensolve timing")
    p.add_argument("--sizes", type=_int_list, default=[11, 15, 21])
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--bc", default="SS-SS-SS-SS")
    p.add_argument("--alpha", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_bench)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in sub_action.choices.values():
        converted = {}
        for action in sp._actions:
            if action.dest in cfg:
                value = cfg[action.dest]
                converted[action.dest] = action.type(value) if action.type else value
        sp.set_defaults(**converted)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except (InvalidArgument, ReferenceMissing, StructureError, SingularSystem,
            FileNotFoundError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"hdq: error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalInstability, ConvergenceError) as exc:
        print(f"hdq: numerical instability: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE


if __name__ == "__main__":
    sys.exit(main())
