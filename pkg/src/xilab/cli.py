"""Command-line entry point: ``xilab <command>``.

Exit codes: 0 success, 1 a claim failed, 2 bad configuration, suite or
argument, 3 I/O error, 4 no initial crossing, 5 quadrature failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from pathlib import Path

from . import __version__, reports
from ._accel import backend_name
from .errors import ConfigError, DomainError, NoCrossing, NoSignChange, ToleranceUnreachable, XilabError
from .fourier_engine import WindowParams, gr
from .suites import SUITES, run_suite
from .theta_core import StripPoint
from .xi_oracle import find_critical_zero, xi_direct
from .zero_tracker import ROW_HEADER, StepControl, continue_crossing

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_NO_CROSSING, EXIT_QUAD = 0, 1, 2, 3, 4, 5


class UsageError(XilabError):
    pass


def _err(msg):
    print(f"xilab: {msg}", file=sys.stderr)


# ----------------------------------------------------------------- verify

def _suite_job(args):
    name, tol = args
    return run_suite(name, tol)


def cmd_verify(args, cfg):
    names = [args.suite] if args.suite else cfg["suites"]
    for name in names:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    jobs = [(name, cfg["tolerances"].get(name)) for name in names]
    par = args.jobs or cfg["parallelism"]
    started = reports.utc_now()
    if par > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(par, len(jobs))) as pool:
            results = list(pool.map(_suite_job, jobs))
    else:
        results = [_suite_job(j) for j in jobs]
    finished = reports.utc_now()
    claims = [c for batch in results for c in batch]
    for c in claims:
        line = f"{c.status.upper():<13} {c.claim_id}  measured={reports.fmt_real(c.measured)}"
        if c.status == "fail" and c.detail:
            line += f"  ({c.detail})"
        print(line)
    out_dir = Path(args.output_dir or cfg["output_dir"])
    run_cfg = dict(cfg, suites=names)
    if cfg["format"] == "csv":
        path = out_dir / reports.report_name(run_cfg, started, "csv")
        reports.write_new(path, reports.claims_csv(claims))
    else:
        doc = reports.build_report(__version__, run_cfg, claims, started, finished, backend_name())
        path = out_dir / reports.report_name(run_cfg, started)
        reports.write_new(path, reports.canonical_json(doc) + "\n")
    n_fail = sum(c.status == "fail" for c in claims)
    print(f"{len(claims)} claims, {n_fail} failed; report {path}")
    return EXIT_FAIL if n_fail else EXIT_OK


# ----------------------------------------------------------------- scans

def _grid_arg(text, name):
    """'a:b:n' for n evenly spaced points, or a comma-separated list."""
    try:
        if ":" in text:
            a, b, n = text.split(":")
            return reports.expand_grid({"start": float(a), "stop": float(b), "num": int(n)}, name)
        return reports.expand_grid([float(v) for v in text.split(",")], name)
    except ValueError as exc:
        raise UsageError(f"--{name}: cannot parse {text!r}") from exc


def _scan_point(p):
    sigma, t2, t0, omega, tol = p
    res = gr(omega, WindowParams(sigma, t2, t0), tol)
    return [sigma, t2, t0, omega, float(res.value), float(res.err_estimate)]


def cmd_scan_gr(args, cfg):
    g = cfg["grids"]
    axes = []
    for name in ("sigma", "t2", "t0", "omega"):
        text = getattr(args, name)
        axes.append(_grid_arg(text, name) if text else reports.expand_grid(g[f"scan_{name}"], f"scan_{name}"))
    for sigma in axes[0]:
        WindowParams(sigma, 1.0, 0.0)
    points = [(*p, args.tol) for p in product(*axes)]
    par = args.jobs or cfg["parallelism"]
    if par > 1:
        with ProcessPoolExecutor(max_workers=par) as pool:
            rows = list(pool.map(_scan_point, points, chunksize=16))
    else:
        rows = [_scan_point(p) for p in points]
    text = reports.csv_text(["sigma", "t2", "t0", "omega", "G_R", "err_estimate"], rows)
    _emit(text, args.out)
    return EXIT_OK


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, newline="")


def _parse_path(text):
    try:
        verts = [tuple(float(x) for x in v.split(",")) for v in text.split()]
    except ValueError as exc:
        raise UsageError(f"--path: cannot parse {text!r}") from exc
    if not verts or any(len(v) != 2 for v in verts):
        raise UsageError("--path needs space-separated 't0,t2' vertices")
    return verts


def cmd_track(args, cfg):
    path = _parse_path(args.path)
    w0 = WindowParams(args.sigma, path[0][1], path[0][0])
    ctl = StepControl(bracket_tol=args.tol)
    try:
        recs = continue_crossing(w0, path, ctl, omega_max=args.omega_max)
    except NoCrossing as exc:
        _err(f"{exc}; scanned omega in (0, {args.omega_max:g}] at sigma={args.sigma:g}, "
             f"t0={path[0][0]:g}, t2={path[0][1]:g}")
        return EXIT_NO_CROSSING
    _emit(reports.csv_text(ROW_HEADER, [r.as_row() for r in recs]), args.out)
    return EXIT_OK


# --------------------------------------------------------------- xi-eval

def cmd_xi_eval(args, cfg):
    if args.zeros:
        lo, hi = args.zeros
        try:
            z = find_critical_zero(lo, hi, tol=args.tol)
        except NoSignChange as exc:
            raise UsageError(str(exc)) from exc
        out = {"zero": z, "bracket_width": args.tol, "bracket": [lo, hi]}
    else:
        if args.omega is None:
            raise UsageError("give --omega (with optional --sigma) or --zeros LO HI")
        items = []
        for om in args.omega:
            p = StripPoint(args.sigma, om)
            res = xi_direct(p.s)
            v = complex(res.value)
            items.append({"sigma": args.sigma, "omega": om, "s_real": p.s.real, "s_imag": p.s.imag,
                          "real": v.real, "imag": v.imag, "err_estimate": res.err_estimate})
        out = {"values": items}
    if args.format == "json":
        print(json.dumps(out, indent=2))
    elif "zero" in out:
        print(f"zero at omega = {out['zero']:.15g} (bracket width {args.tol:g})")
    else:
        for it in out["values"]:
            print(f"xi({it['s_real']:.17g}{it['s_imag']:+.17g}i) = {it['real']:.17g}{it['imag']:+.17g}i"
                  f"  +- {it['err_estimate']:.3g}")
    return EXIT_OK


def cmd_print_config(args, cfg):
    print(reports.canonical_json(cfg))
    return EXIT_OK


# ----------------------------------------------------------------- parser

def build_parser():
    ap = argparse.ArgumentParser(prog="xilab", description="Numerical checks of xi-function window identities.")
    ap.add_argument("--version", action="version", version=f"xilab {__version__}")
    ap.add_argument("--config", help=f"JSON config file (fallback: ${reports.CONFIG_ENV})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run claim suites and write a report")
    p.add_argument("--suite", help="run only this suite")
    p.add_argument("--output-dir")
    p.add_argument("--jobs", type=int, help="worker processes (default: config parallelism)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan-gr", help="tabulate G_R over a parameter grid as CSV")
    for name in ("sigma", "t2", "t0", "omega"):
        p.add_argument(f"--{name}", help="'start:stop:num' or comma list")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(fn=cmd_scan_gr)

    p = sub.add_parser("track-omega-z", help="continue the first crossing along a (t0, t2) polyline")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--path", required=True, help="space-separated 't0,t2' vertices")
    p.add_argument("--omega-max", type=float, default=50.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_track)

    p = sub.add_parser("xi-eval", help="evaluate xi(1/2 + sigma + i omega) or locate a critical zero")
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--omega", type=float, nargs="+")
    p.add_argument("--zeros", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_xi_eval)

    p = sub.add_parser("print-config", help="print the effective configuration")
    p.set_defaults(fn=cmd_print_config)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = reports.load_config(args.config)
        if getattr(args, "jobs", None) is not None and args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.fn(args, cfg)
    except (ConfigError, DomainError, UsageError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except ToleranceUnreachable as exc:
        _err(f"quadrature failure: {exc}")
        return EXIT_QUAD
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
