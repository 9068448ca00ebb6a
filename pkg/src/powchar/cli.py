"""Command-line driver: ``powchar {verify,table,rss,gof,rerun}``.

Exit codes: 0 consistent / success, 1 usage or input error, 2 numerical
failure, 3 inconsistent.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import distributions as dists
from .characterization import (
    power_gof, verify_identity_mc, verify_identity_numeric, verify_maxima_chain,
)
from .errors import DomainError, InsufficientDataError, QuadratureError
from .fileio import (
    SCHEMA_VERSION, DataFileError, RunManifest, atomic_write, csv_text, dumps, manifest_path,
    read_sample_file, read_tabulated_cdf,
)
from .order_stats import OrderStatisticLaw, os_cdf, os_pdf
from .product import h_function, interior_grid, residual_profile
from .quadrature import QuadratureConfig
from .rng import McConfig
from .rss import RssScheme, generate_rss

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_INCONSISTENT = 0, 1, 2, 3
SEED_ENV = "POWCHAR_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_dist(spec: str) -> dists.ContinuousDistribution:
    """``pow:<a>``, ``par:<a>``, ``uniform``, a control name, or ``table:<csv path>``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "pow" and arg:
            return dists.power(float(arg))
        if name == "par" and arg:
            return dists.pareto(float(arg))
        if name == "table" and arg:
            xs, ps = read_tabulated_cdf(arg)
            return dists.tabulated(xs, ps, name=spec)
    except ValueError as exc:
        raise UsageError(f"bad distribution spec {spec!r}: {exc}") from None
    if spec == "uniform":
        return dists.uniform()
    if spec in dists.CONTROLS:
        return dists.CONTROLS[spec]()
    raise UsageError(f"unknown distribution spec {spec!r}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _emit(args, argv, text: str, seed):
    """Write data to ``--out`` (plus a manifest) or to stdout."""
    if args.out is None:
        sys.stdout.write(text)
        return
    atomic_write(args.out, text)
    params = {k: v for k, v in vars(args).items() if k != "func"}
    params["argv"] = list(argv)
    manifest = RunManifest(command=args.command, parameters=params, seed=seed, outputs=[str(args.out)])
    atomic_write(manifest_path(args.out), manifest.to_json())


def _report_text(report, args) -> str:
    return dumps({"schema": SCHEMA_VERSION, "command": args.command, "report": report.to_dict()})


def cmd_verify(args, argv) -> int:
    base = parse_dist(args.dist)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.mode == "numeric":
        q = QuadratureConfig(abs_tol=args.abs_tol)
        report = verify_identity_numeric(base, args.k, args.n, args.grid, q)
        seed = None
    else:
        cfg = McConfig(args.N, seed, args.stream)
        verify = verify_identity_mc if args.mode == "mc" else verify_maxima_chain
        report = verify(base, args.k, args.n, cfg, args.level)
    _emit(args, argv, _report_text(report, args), seed)
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_table(args, argv) -> int:
    base = parse_dist(args.dist)
    xs = interior_grid(args.grid)
    if args.what in ("cdf", "pdf"):
        law = OrderStatisticLaw(args.k, args.n, base)
        if not base.on_unit_interval:
            # map the interior grid onto the support through the quantile
            xs = np.asarray(base.quantile(xs))
        values = os_cdf(law, xs) if args.what == "cdf" else os_pdf(law, xs)
    elif args.what == "h":
        values = h_function(base, xs)
    else:
        q = QuadratureConfig(abs_tol=args.abs_tol)
        prof = residual_profile(base, args.k, args.n, xs, q)
        xs, values = prof.x_evaluated, prof.values
    rows = zip(np.asarray(xs, float), np.asarray(values, float))
    _emit(args, argv, csv_text(["x", "value"], rows), None)
    return EXIT_OK


def cmd_rss(args, argv) -> int:
    base = parse_dist(args.dist)
    seed = args.seed if args.seed is not None else _default_seed()
    make = RssScheme.standard if args.scheme == "standard" else RssScheme.maxima
    scheme = make(args.n, cycles=args.cycles, literal=args.literal)
    mat = generate_rss(scheme, base, McConfig(args.cycles, seed, args.stream))
    text = csv_text(scheme.column_names, (tuple(map(float, r)) for r in mat))
    _emit(args, argv, text, seed)
    return EXIT_OK


def cmd_gof(args, argv) -> int:
    sample = read_sample_file(args.input)
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = McConfig(n=2**62, seed=seed, stream=args.stream)
    report = power_gof(sample, args.k, args.n, cfg, args.level)
    _emit(args, argv, _report_text(report, args), seed)
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_rerun(args, argv) -> int:
    """Replay a manifest's recorded arguments, optionally to a new output path."""
    manifest = RunManifest.load(args.manifest)
    old = list(manifest.parameters["argv"])
    if args.out is not None:
        i = old.index("--out")
        old[i + 1] = str(args.out)
    return main(old)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="powchar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, k_default=1, n_default=2):
        sp.add_argument("--k", type=int, default=k_default)
        sp.add_argument("--n", type=int, default=n_default)
        sp.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")

    v = sub.add_parser("verify", help="check X_{k:n} =d Y_{k:n-1} Z_{n:n}")
    v.add_argument("--dist", required=True)
    common(v)
    v.add_argument("--mode", choices=("numeric", "mc", "chain"), default="numeric")
    v.add_argument("--grid", type=int, default=101)
    v.add_argument("--N", type=int, default=100_000)
    v.add_argument("--level", type=float, default=0.05)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--stream", type=int, default=0)
    v.add_argument("--abs-tol", type=float, default=1e-10)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="tabulate cdf, pdf, H or the residual on a grid")
    t.add_argument("--dist", required=True)
    common(t)
    t.add_argument("--what", choices=("cdf", "pdf", "h", "residual"), required=True)
    t.add_argument("--grid", type=int, default=101)
    t.add_argument("--abs-tol", type=float, default=1e-10)
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("rss", help="simulate a ranked set sampling scheme")
    r.add_argument("--dist", default="uniform")
    r.add_argument("--scheme", choices=("standard", "maxima"), required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--cycles", type=int, default=1)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--stream", type=int, default=0)
    r.add_argument("--literal", action="store_true", help="draw and sort every set")
    r.add_argument("--out", type=Path, default=None)
    r.set_defaults(func=cmd_rss)

    g = sub.add_parser("gof", help="test a sample file for a power function law")
    g.add_argument("input", type=Path)
    common(g, 1, 3)
    g.add_argument("--level", type=float, default=0.05)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--stream", type=int, default=0)
    g.set_defaults(func=cmd_gof)

    m = sub.add_parser("rerun", help="replay the run recorded in a manifest")
    m.add_argument("manifest", type=Path)
    m.add_argument("--out", type=Path, default=None)
    m.set_defaults(func=cmd_rerun)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except QuadratureError as exc:
        print(f"powchar: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, DomainError, InsufficientDataError, DataFileError, OSError) as exc:
        print(f"powchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
