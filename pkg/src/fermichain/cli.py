"""
Command-line front end.

Examples
--------
::

    fermichain entropy --xy 0.9,1 --method exact --X 100 --alpha 1
    fermichain xy --gamma 0.1:1:0.1 --h 1 --alpha 1,2
    fermichain figure flow-lines --x 0.92593 --zeta -1:1:0.05
    fermichain verify appendixB
    fermichain surface report --couplings model.toml

Exit status is 0 on success, 2 when a model or parameter is refused
(domain, constraint or criticality errors) and 3 when a numerical accuracy
check fails.  ``FERMICHAIN_THREADS`` caps the number of worker threads used
for sweeps.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from .chain import CouplingSet, is_critical, xy_couplings
from .checks import SUITES, run_suite
from .config import load_couplings
from .correlation import exact_entropy
from .errors import (AccuracyError, ConstraintError, CriticalModelError, DomainError,
                     GeometryError, NumericIntegrityError)
from .moebius import so11, transform_couplings
from .surface import surface, surface_report
from .theta import asymptotic_entropy
from .xy import classify, critical_mode_count, entropy_closed_form, ising_line_entropy

EXIT_OK, EXIT_REFUSED, EXIT_ACCURACY = 0, 2, 3
VALUE_FLAGS = ("--zeta", "--gamma", "--h", "--xy", "--alpha", "--x")
_NUMBER = re.compile(r"^-\.?\d")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def parse_range(text: str) -> list[float]:
    """
    ``"a:b:step"`` (inclusive of ``b`` up to rounding), ``"v1,v2,..."`` or a single value.
    """
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"range {text!r} must look like start:stop:step")
        a, b, step = map(float, parts)
        if step == 0 or (b - a) * step < 0:
            raise argparse.ArgumentTypeError(f"range {text!r} has an unusable step")
        n = int(math.floor((b - a) / step + 1e-9))
        return [a + k * step for k in range(n + 1)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as numbers") from exc


def parse_ints(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as integers") from exc
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("interval lengths must be positive integers")
    return vals


def parse_pair(text: str) -> tuple[float, float]:
    vals = parse_range(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected 'gamma,h', got {text!r}")
    return vals[0], vals[1]


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "-1:1:0.05" as an unknown flag
    out, it = [], iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and _NUMBER.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def thread_count() -> int:
    cap = os.environ.get("FERMICHAIN_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Evaluate ``fn`` over ``items`` concurrently; results keep input order."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def write_rows(rows: list[dict], columns: Sequence[str], args) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _emit(rows, columns, args.json, fh)
    else:
        _emit(rows, columns, args.json, sys.stdout)


def _emit(rows, columns, as_json: bool, fh) -> None:
    if as_json:
        clean = [{k: (float(r[k]) if isinstance(r[k], np.floating) else r[k]) for k in columns}
                 for r in rows]
        fh.write(json.dumps(clean, indent=1) + "\n")
        return
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[k]) for k in columns])


def _write_text(text: str, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def model_from_args(args) -> tuple[CouplingSet, tuple[float, float] | None]:
    if (args.xy is None) == (args.couplings is None):
        raise ConstraintError("give exactly one of --xy and --couplings")
    if args.xy is not None:
        g, h = args.xy
        return xy_couplings(g, h), (g, h)
    return load_couplings(args.couplings), None


def xy_parameters(c: CouplingSet) -> tuple[float, float]:
    """``(gamma, h)`` of a range-1 coupling set, up to overall scale and the sign of ``h``."""
    if c.L != 1 or c.hopping(1) == 0:
        raise ConstraintError("an XY reading needs L = 1 and a non-zero nearest-neighbour hopping")
    return abs(c.pairing(1) / c.hopping(1)), abs(c.hopping(0) / c.hopping(1))


# ---------------------------------------------------------------------------
# entropy evaluation shared by subcommands
# ---------------------------------------------------------------------------

def evaluate(c: CouplingSet, xy: tuple[float, float] | None, method: str, alpha: float,
             X: int | None, N: int | None = None):
    """One entropy value by the requested method; returns an ``EntropyResult``."""
    if method == "exact":
        if X is None:
            raise DomainError("the exact method needs --X")
        return exact_entropy(c, X, alpha, N)
    if xy is not None:
        p = classify(*xy)
        if p.region == "critical-Ising-line" and method == "closed-form" and X is not None:
            return ising_line_entropy(p.gamma, alpha, X)
        return entropy_closed_form(p, alpha, route="theta" if method == "theta" else "auto")
    if method == "closed-form":
        raise DomainError("closed forms exist for XY models only; use --xy or another method")
    if is_critical(c):
        raise CriticalModelError("critical model: the asymptotic method needs a spectral gap")
    return asymptotic_entropy(surface(c), alpha, X)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_entropy(args) -> int:
    c, xy = model_from_args(args)
    Xs = args.X or [None]
    jobs = [(a, X) for a in args.alpha for X in Xs]
    results = parallel_map(lambda j: evaluate(c, xy, args.method, j[0], j[1], args.N), jobs)
    rows = [{"method": r.method, "alpha": r.alpha, "X": X, "S": r.value}
            for (a, X), r in zip(jobs, results)]
    write_rows(rows, ["method", "alpha", "X", "S"], args)
    return EXIT_OK


def flow_rows(c: CouplingSet, zetas: Sequence[float], alpha: float, method: str,
              X: int | None, N: int | None) -> list[dict]:
    def one(z):
        cz = transform_couplings(c, so11(z))
        g, h = xy_parameters(cz)
        p = classify(g, h)
        r = evaluate(cz, (g, h), method, alpha, X, N)
        return {"zeta": z, "gamma": g, "h": h, "x": p.x, "S": r.value}
    return parallel_map(one, zetas)


def cmd_moebius_flow(args) -> int:
    c, _ = model_from_args(args)
    rows = flow_rows(c, args.zeta, args.alpha[0], args.method,
                     args.X[0] if args.X else None, args.N)
    write_rows(rows, ["zeta", "gamma", "h", "S"], args)
    return EXIT_OK


def flow_base_point(x: float) -> tuple[float, float]:
    """A representative ``(gamma, h)`` with cross ratio ``x``."""
    if x > 1:
        return 1 / math.sqrt(x), 0.0
    if x == 0 or not math.isfinite(x):
        raise DomainError(f"x = {x} lies on a critical line")
    return 1.0, 2 * math.sqrt(1 - x)


def cmd_figure(args) -> int:
    if args.name == "flow-lines":
        if args.x is None:
            raise DomainError("flow-lines needs --x")
        rows = []
        for x in args.x:
            g, h = flow_base_point(x)
            for r in flow_rows(xy_couplings(g, h), args.zeta, args.alpha[0], "closed-form",
                               None, None):
                rows.append({"x0": x, **r})
        write_rows(rows, ["x0", "zeta", "gamma", "h", "x", "S"], args)
    elif args.name == "ising-line":
        gammas = args.gamma or [0.3, 0.5, 0.8, 1.0]
        Xs = args.X or [20, 50, 100]
        jobs = [(g, a, X) for a in args.alpha for X in Xs for g in gammas]

        def one(job):
            g, a, X = job
            N = args.N or critical_mode_count(X)
            num = exact_entropy(xy_couplings(g, 2.0), X, a, N, allow_near_critical=True).value
            ref = ising_line_entropy(g, a, X).value
            return {"gamma": g, "alpha": a, "X": X, "numeric": num, "formula": ref,
                    "difference": num - ref}
        rows = parallel_map(one, jobs)
        write_rows(rows, ["gamma", "alpha", "X", "numeric", "formula", "difference"], args)
    else:
        n = args.samples
        rows = []
        for t in np.linspace(0, np.pi / 2, n):
            rows.append({"boundary": "x=1", "gamma": float(np.cos(t)), "h": float(2 * np.sin(t))})
        for g in np.linspace(0, args.gamma_max, n):
            rows.append({"boundary": "x=0", "gamma": float(g), "h": 2.0})
        write_rows(rows, ["boundary", "gamma", "h"], args)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    report = {"suite": args.suite, "passed": all(c.passed for c in checks),
              "checks": [c.as_dict() for c in checks]}
    _write_text(json.dumps(report, indent=1), args)
    return EXIT_OK


def cmd_surface(args) -> int:
    c, _ = model_from_args(args)
    if is_critical(c):
        raise CriticalModelError("critical model: branch points touch the unit circle")
    _write_text(surface_report(surface(c)), args)
    return EXIT_OK


def cmd_xy(args) -> int:
    if args.xy is not None:
        points = [args.xy]
    else:
        if args.gamma is None or args.h is None:
            raise ConstraintError("give --xy g,h or both --gamma and --h")
        points = [(g, h) for g in args.gamma for h in args.h]
    X = args.X[0] if args.X else None
    jobs = [(g, h, a) for g, h in points for a in args.alpha]

    def one(job):
        g, h, a = job
        p = classify(g, h)
        r = evaluate(xy_couplings(g, h), (g, h), args.method, a, X, args.N)
        return {"gamma": g, "h": h, "x": p.x, "region": p.region, "alpha": r.alpha,
                "S": r.value, "method": r.method}
    rows = parallel_map(one, jobs)
    write_rows(rows, ["gamma", "h", "x", "region", "alpha", "S", "method"], args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--json", action="store_true", help="JSON instead of CSV")


def _model(p: argparse.ArgumentParser) -> None:
    p.add_argument("--xy", type=parse_pair, metavar="G,H", help="XY chain with gamma=G, h=H")
    p.add_argument("--couplings", metavar="FILE", help="TOML coupling file")


def _numerics(p: argparse.ArgumentParser, method_default: str) -> None:
    p.add_argument("--method", choices=("exact", "theta", "closed-form"), default=method_default)
    p.add_argument("--alpha", type=parse_range, default=[1.0], help="Renyi index (list or range)")
    p.add_argument("--X", type=parse_ints, help="interval length(s) n[,n...]")
    p.add_argument("--N", type=int, help="number of Fourier modes for the exact method")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fermichain",
                                 description="Renyi entropies of free-fermion chains.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy of one model")
    _model(p)
    _numerics(p, "exact")
    _output(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("moebius-flow", help="(zeta, gamma', h', S) along an SO(1,1) flow")
    _model(p)
    _numerics(p, "closed-form")
    p.add_argument("--zeta", type=parse_range, default=parse_range("-1:1:0.1"))
    _output(p)
    p.set_defaults(func=cmd_moebius_flow)

    p = sub.add_parser("figure", help="plot-ready data")
    p.add_argument("name", choices=("flow-lines", "ising-line", "phase-regions"))
    p.add_argument("--x", type=parse_range, help="cross ratio(s) for flow-lines")
    p.add_argument("--zeta", type=parse_range, default=parse_range("-1:1:0.1"))
    p.add_argument("--alpha", type=parse_range, default=[1.0, 2.0])
    p.add_argument("--gamma", type=parse_range, help="gamma_a values for ising-line")
    p.add_argument("--X", type=parse_ints)
    p.add_argument("--N", type=int)
    p.add_argument("--samples", type=int, default=101, help="points per boundary curve")
    p.add_argument("--gamma-max", type=float, default=2.0, help="extent of the h=2 boundary")
    _output(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run a self-verification suite (JSON report)")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("surface", help="Riemann surface data (JSON)")
    p.add_argument("action", nargs="?", choices=("report",), default="report")
    _model(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("xy", help="XY sweep: gamma,h,x,region,alpha,S,method")
    p.add_argument("--gamma", type=parse_range)
    p.add_argument("--h", type=parse_range)
    p.add_argument("--xy", type=parse_pair, metavar="G,H")
    _numerics(p, "closed-form")
    _output(p)
    p.set_defaults(func=cmd_xy)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except (DomainError, ConstraintError, GeometryError) as exc:
        print(f"fermichain: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (AccuracyError, NumericIntegrityError) as exc:
        print(f"fermichain: accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
