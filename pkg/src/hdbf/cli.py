"""Command line front end: ``hdbf test``, ``hdbf simulate`` and ``hdbf oracle``.

Exit codes: 0 ran without rejection, 1 ran and at least one method rejected
at alpha, 2 usage or parse error, 3 numerical failure.
"""
import argparse
import sys
import time

import numpy as np

from . import __version__
from .dataio import DatasetFile, Layout, load_dataset, write_results_csv
from .errors import ConfigError, HDBFError, ParseError
from .grid import list_presets, load_grid, load_preset
from .mixture import (MixtureSpec, approximation_quality, cumulants_F_star, cumulants_S_star,
                      cumulants_T_star, population_params, sample_F_star, sample_S_star,
                      sample_T_star)
from .report import (GRID_CSV_FIELDS, TEST_CSV_FIELDS, format_table, grid_csv_rows,
                     method_from_label, render_grid, render_test_results, test_result_rows)
from .simulation import SimConfig, mixture_spec, run_cell
from .stat_tests import run_all

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _delimiter(text):
    return "\t" if text in ("\\t", "tab", "TAB") else text


def _methods(text):
    if not text:
        return None
    try:
        return [method_from_label(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def cmd_test(args, out):
    if args.label_col is not None:
        if len(args.files) != 1:
            raise ParseError("--label-col expects exactly one input file")
        spec = DatasetFile(args.files, Layout.LABELED, delimiter=_delimiter(args.delimiter),
                           has_header=not args.no_header, label_column=args.label_col,
                           group_labels=tuple(args.groups.split(",")) if args.groups else None)
    else:
        if len(args.files) != 2:
            raise ParseError("give two CSV files (one per group) or one file with --label-col")
        spec = DatasetFile(args.files, Layout.TWO_FILES, delimiter=_delimiter(args.delimiter),
                           has_header=not args.no_header, transpose=args.transpose,
                           skip_columns=tuple(range(args.skip_cols)))
    data = load_dataset(spec)
    results = run_all(data, args.alpha, methods=_methods(args.methods))
    print(render_test_results(results, args.alpha, data.n1, data.n2, data.p), file=out)
    if args.out:
        write_results_csv(args.out, test_result_rows(results), TEST_CSV_FIELDS)
    if any(r.report is None for r in results):
        return EXIT_NUMERIC
    return EXIT_REJECT if any(r.reject for r in results) else EXIT_OK


def cmd_simulate(args, out):
    if args.config:
        grid = load_grid(args.config, out=args.out)
    elif args.preset:
        grid = load_preset(args.preset, out=args.out)
    else:
        cfg = SimConfig(model=args.model, cov_family=args.family, p=args.p, n1=args.n1, n2=args.n2,
                        rho1=args.rho1, rho2=args.rho2, sigma1_sq=args.sigma1_sq,
                        sigma2_sq=args.sigma2_sq, delta=args.delta, alpha=args.alpha)
        from .grid import GridSpec
        grid = GridSpec("single-cell", args.table, (cfg,), out=args.out)
    if args.reps is not None:
        grid = grid.with_reps(args.reps)
    if args.seed is not None:
        grid = grid.with_seed(args.seed)

    results = []
    failures = 0
    for i, cfg in enumerate(grid.cells, start=1):
        t0 = time.perf_counter()
        try:
            res = run_cell(cfg, n_jobs=args.jobs)
        except HDBFError as exc:
            print(f"[{i}/{len(grid.cells)}] cell failed: {exc}", file=sys.stderr)
            failures += 1
            continue
        results.append(res)
        if not args.quiet:
            rates = " ".join(f"{m.label}={100 * v:.2f}%" for m, v in res.rejection_rate.items())
            print(f"[{i}/{len(grid.cells)}] model={cfg.model.number} p={cfg.p} n=({cfg.n1},{cfg.n2}) "
                  f"rho2={cfg.rho2:g} delta={cfg.delta:g}: {rates} "
                  f"d1={res.mean_d1_hat:.1f} d2={res.mean_d2_hat:.0f} "
                  f"({time.perf_counter() - t0:.1f}s)", file=sys.stderr)
    if results:
        print(render_grid(grid, results), file=out)
    if grid.out:
        write_results_csv(grid.out, grid_csv_rows(results), GRID_CSV_FIELDS)
    if failures or any(r.n_failed_reps for r in results):
        return EXIT_NUMERIC
    return EXIT_OK


def _oracle_spec(args):
    if args.spectra:
        rows = np.genfromtxt(args.spectra, delimiter=_delimiter(args.delimiter), names=True)
        names = rows.dtype.names or ()
        if "lambda1" not in names or "lambda2" not in names:
            raise ParseError(f"{args.spectra}: expected header columns lambda1,lambda2")
        return MixtureSpec.from_spectra(np.atleast_1d(rows["lambda1"]),
                                        np.atleast_1d(rows["lambda2"]), args.n1, args.n2)
    if args.family == "identity":
        ones = np.ones(args.p)
        return MixtureSpec.from_spectra(ones, ones, args.n1, args.n2)
    cfg = SimConfig(cov_family=args.family, p=args.p, n1=args.n1, n2=args.n2, rho1=args.rho1,
                    rho2=args.rho2, sigma1_sq=args.sigma1_sq, sigma2_sq=args.sigma2_sq)
    return mixture_spec(cfg)


def _moments(x):
    m = float(np.mean(x))
    c = x - m
    return m, float(np.mean(c * c)), float(np.mean(c * c * c))


def cmd_oracle(args, out):
    spec = _oracle_spec(args)
    pp = population_params(spec)
    kt, ks, kf = cumulants_T_star(spec), cumulants_S_star(spec), cumulants_F_star(spec)
    seed = 0 if args.seed is None else args.seed
    draws = args.draws
    mt = _moments(sample_T_star(spec, draws, seed, stream=0))
    ms = _moments(sample_S_star(spec, draws, seed, stream=1))
    mf = _moments(sample_F_star(spec, draws, seed, stream=2))
    ks_res = approximation_quality(spec, draws, seed, stream=2)
    print(f"Mixture oracle  p={spec.p}  n1={spec.n1}  n2={spec.n2}  draws={draws}  seed={seed}", file=out)
    print(format_table(["quantity", "value"], [
        ["d_star", f"{pp.d_star:.6g}"], ["d1", f"{pp.d1:.6g}"], ["d2", f"{pp.d2:.6g}"],
        ["beta1", f"{pp.beta1:.6g}"], ["beta2", f"{pp.beta2:.6g}"],
        ["skewness(F*) leading order", f"{kf.skewness:.6g}"],
    ]), file=out)
    rows = [
        ["T*", f"{kt[0]:.6g}", f"{kt[1]:.6g}", f"{kt[2]:.6g}", f"{mt[0]:.6g}", f"{mt[1]:.6g}", f"{mt[2]:.6g}"],
        ["S*", f"{ks[0]:.6g}", f"{ks[1]:.6g}", f"{ks[2]:.6g}", f"{ms[0]:.6g}", f"{ms[1]:.6g}", f"{ms[2]:.6g}"],
        ["F*", f"{kf.k1:.6g}", f"{kf.k2:.6g}", f"{kf.k3:.6g}", f"{mf[0]:.6g}", f"{mf[1]:.6g}", f"{mf[2]:.6g}"],
    ]
    print(format_table(["mixture", "K1", "K2", "K3", "MC mean", "MC var", "MC 3rd cm"], rows), file=out)
    print(f"KS distance of F* draws to F({pp.d1:.4g}, {pp.d2:.4g}): {ks_res.statistic:.5f}", file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hdbf", description="High-dimensional two-sample Behrens-Fisher tests.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="run T_CQ, T_np and F_np on CSV data")
    t.add_argument("files", nargs="+", help="two CSVs (one per group) or one labeled CSV")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--methods", default=None, help="comma list of TCQ,TNP,FNP (default all)")
    t.add_argument("--delimiter", default=",")
    t.add_argument("--label-col", default=None, help="name or index of the group label column")
    t.add_argument("--groups", default=None, help="label order 'g1,g2' for the labeled layout")
    t.add_argument("--no-header", action="store_true", help="files have no header row")
    t.add_argument("--transpose", action="store_true",
                   help="two-file layout stores variables in rows and samples in columns")
    t.add_argument("--skip-cols", type=int, default=0,
                   help="leading non-numeric columns to drop (e.g. a gene id column)")
    t.add_argument("--out", default=None, help="also write a CSV of the results here")
    t.set_defaults(func=cmd_test)

    s = sub.add_parser("simulate", help="run size/power/df simulation grids")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=list_presets())
    src.add_argument("--config", help="JSON grid file (see hdbf.grid for the schema)")
    s.add_argument("--reps", type=int, default=None, help="override replications per cell")
    s.add_argument("--seed", type=int, default=None, help="base seed; cell i uses seed + i")
    s.add_argument("--jobs", type=int, default=1, help="worker processes per cell")
    s.add_argument("--out", default=None, help="write machine-readable CSV (proportions)")
    s.add_argument("--table", choices=("size", "power", "df"), default="size",
                   help="table kind for a single cell given by flags")
    s.add_argument("--model", default=1)
    s.add_argument("--family", default="cs", choices=("cs", "drd"))
    s.add_argument("--p", type=int, default=50)
    s.add_argument("--n1", type=int, default=30)
    s.add_argument("--n2", type=int, default=50)
    s.add_argument("--rho1", type=float, default=0.1)
    s.add_argument("--rho2", type=float, default=0.1)
    s.add_argument("--sigma1-sq", type=float, default=1.0)
    s.add_argument("--sigma2-sq", type=float, default=2.0)
    s.add_argument("--delta", type=float, default=0.0)
    s.add_argument("--alpha", type=float, default=0.05)
    s.add_argument("--quiet", action="store_true", help="no per-cell progress on stderr")
    s.set_defaults(func=cmd_simulate)

    o = sub.add_parser("oracle", help="mixture-distribution diagnostics")
    o.add_argument("--spectra", default=None, help="CSV with header lambda1,lambda2 (shared eigenbasis)")
    o.add_argument("--family", default="cs", choices=("cs", "drd", "identity"))
    o.add_argument("--p", type=int, default=50)
    o.add_argument("--n1", type=int, default=30)
    o.add_argument("--n2", type=int, default=50)
    o.add_argument("--rho1", type=float, default=0.1)
    o.add_argument("--rho2", type=float, default=0.1)
    o.add_argument("--sigma1-sq", type=float, default=1.0)
    o.add_argument("--sigma2-sq", type=float, default=2.0)
    o.add_argument("--draws", type=int, default=100_000)
    o.add_argument("--seed", type=int, default=None)
    o.add_argument("--delimiter", default=",")
    o.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, ConfigError, ValueError) as exc:
        print(f"hdbf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HDBFError, ArithmeticError) as exc:
        print(f"hdbf: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
