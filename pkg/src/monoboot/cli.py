"""Command line front end: scenario runs, figure-ready CSV output, and
embedded self checks.

Exit codes: 0 success, 1 usage or input error, 2 self-check failure.
Floats are written with 17 significant digits so the CSV round-trips
exactly, and identical flags plus seed give byte-identical files whatever
the worker count.
"""

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .isotonic import SortedSample, isotonic_fit, sort_sample
from .posterior import PriorSpec, empirical_bayes_sigma2
from .binning import bin_index, summarize_bins
from .reference import (
    isotonic_by_partition_search,
    kernel_moment,
    marginal_variance_matrix_form,
)
from .simulate import (
    CENTERS,
    DEFAULT_T_GRID,
    METHODS,
    ScenarioConfig,
    generate_dataset,
    intervals_for_sample,
    run_conditional_histogram,
    run_coverage,
    _rng_for,
)
from .smoothing import TRIWEIGHT

__all__ = ["main", "read_xy_file"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass(frozen=True)
class RunManifest:
    """Provenance record written next to every output file."""

    tool: str
    version: str
    command: str
    config: dict
    workers: int
    wall_time_s: float
    outputs: tuple = ()
    data: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the tool reserves 2 for
    # failed self checks
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_scenario_args(p, with_reps=True):
    p.add_argument("--n", type=int, default=500, help="sample size")
    if with_reps:
        p.add_argument("--reps", type=int, default=500, help="Monte Carlo replications")
    p.add_argument("--B", type=int, default=500, help="draws per replication")
    p.add_argument("--alpha", type=float, default=0.05, help="interval level (default 0.05)")
    p.add_argument("--sigma", type=float, default=0.1, help="noise standard deviation")
    p.add_argument("--lambda", dest="lam", type=float, default=10.0, help="prior scale")
    p.add_argument("--zeta", type=float, default=0.0, help="prior center")
    p.add_argument("--c", type=float, default=0.5, help="bandwidth constant in h = c n^(-1/5)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--noise", choices=("normal", "uniform"), default="normal")
    p.add_argument("--workers", type=int, default=1, help="parallel workers over replications")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")


def _grid_from_args(args) -> tuple:
    if getattr(args, "t0", None) is not None:
        return (args.t0,)
    if getattr(args, "t_grid", None):
        return tuple(float(v) for v in args.t_grid.split(","))
    return DEFAULT_T_GRID


def _config_dict(cfg: ScenarioConfig) -> dict:
    return {
        "method": cfg.method,
        "n": cfg.n,
        "reps": cfg.reps,
        "B": cfg.B,
        "t_grid": list(cfg.t_grid),
        "alpha": cfg.alpha,
        "sigma": cfg.sigma,
        "lambda": cfg.lam,
        "zeta": cfg.zeta,
        "c": cfg.c,
        "seed": cfg.seed,
        "noise": cfg.noise,
        "center": cfg.center,
        "f0": "default (x^2 + x/5)" if cfg.f0.__name__ == "default_regression_fn" else cfg.f0.__name__,
    }


def _write_outputs(out_dir: Path, name: str, header: list, rows: list, manifest: RunManifest) -> list:
    """Write the CSV and its manifest; remove partial files on failure."""
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    manifest_path = out_dir / f"{name}_manifest.json"
    manifest = RunManifest(**{**asdict(manifest), "outputs": (csv_path.name, manifest_path.name)})
    written = []
    try:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        written.append(csv_path)
        with open(manifest_path, "w") as fh:
            fh.write(manifest.to_json())
        written.append(manifest_path)
    except BaseException:
        for path in written + [csv_path]:
            path.unlink(missing_ok=True)
        raise
    return [csv_path, manifest_path]


def read_xy_file(path) -> SortedSample:
    """Read a CSV of x,y rows (optional 'x,y' header) into a sorted sample."""
    pairs = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            if lineno == 1 and [c.strip().lower() for c in row] == ["x", "y"]:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: line {lineno}: expected two columns, got {len(row)}")
            try:
                pairs.append((float(row[0]), float(row[1])))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric value {row!r}") from None
    if not pairs:
        raise ValueError(f"{path}: no data rows")
    return sort_sample(pairs)


def cmd_coverage(args) -> int:
    cfg = ScenarioConfig(
        n=args.n, reps=args.reps, B=args.B, method=args.method, t_grid=_grid_from_args(args),
        alpha=args.alpha, sigma=args.sigma, lam=args.lam, zeta=args.zeta, c=args.c,
        seed=args.seed, noise=args.noise,
    )
    start = time.perf_counter()
    report = run_coverage(cfg, workers=args.workers)
    wall = time.perf_counter() - start
    rows = [
        [r.method, r.n, _fmt(r.t), r.reps, _fmt(r.coverage), _fmt(r.mean_length), _fmt(r.mc_se)]
        for r in report.rows
    ]
    manifest = RunManifest(
        tool="monoboot", version=__version__, command="coverage",
        config=_config_dict(cfg), workers=args.workers, wall_time_s=wall,
    )
    paths = _write_outputs(args.out, "coverage", ["method", "n", "t", "reps", "coverage", "mean_length", "mc_se"], rows, manifest)
    print(f"wrote {paths[0]}")
    return 0


def cmd_hist(args) -> int:
    cfg = ScenarioConfig(
        n=args.n, reps=args.reps, B=args.B, method=args.method, t_grid=(args.t0,),
        alpha=args.alpha, sigma=args.sigma, lam=args.lam, zeta=args.zeta, c=args.c,
        seed=args.seed, noise=args.noise, center=args.center,
    )
    start = time.perf_counter()
    probs = run_conditional_histogram(cfg, workers=args.workers)
    wall = time.perf_counter() - start
    rows = [[rep, _fmt(p)] for rep, p in enumerate(probs)]
    manifest = RunManifest(
        tool="monoboot", version=__version__, command="hist",
        config=_config_dict(cfg), workers=args.workers, wall_time_s=wall,
    )
    paths = _write_outputs(args.out, "hist", ["rep", "prob"], rows, manifest)
    print(f"wrote {paths[0]}")
    return 0


def cmd_intervals(args) -> int:
    if args.data is not None:
        sample = read_xy_file(args.data)
        n = sample.n
    else:
        n = args.n
        sample = None
    cfg = ScenarioConfig(
        n=n, reps=1, B=args.B, method=args.method, t_grid=_grid_from_args(args),
        alpha=args.alpha, sigma=args.sigma, lam=args.lam, zeta=args.zeta, c=args.c,
        seed=args.seed, noise=args.noise,
    )
    if sample is None:
        sample = generate_dataset(cfg, _rng_for(cfg.seed, 0, 0))
    start = time.perf_counter()
    table = intervals_for_sample(sample, cfg)
    wall = time.perf_counter() - start
    rows = [[_fmt(r["t"]), _fmt(r["lo"]), _fmt(r["hi"]), _fmt(r["lse"]), _fmt(r["slse"])] for r in table]
    manifest = RunManifest(
        tool="monoboot", version=__version__, command="intervals",
        config=_config_dict(cfg), workers=1, wall_time_s=wall,
        data=str(args.data) if args.data is not None else None,
    )
    paths = _write_outputs(args.out, "intervals", ["t", "lo", "hi", "lse", "slse"], rows, manifest)
    print(f"wrote {paths[0]}")
    return 0


def _selfcheck_rows() -> list:
    rng = np.random.default_rng(20240901)
    rows = []

    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 8))
        v = rng.uniform(0.0, 1.0, n)
        w = rng.integers(1, 4, n).astype(float)
        worst = max(worst, float(np.max(np.abs(isotonic_fit(v, w) - isotonic_by_partition_search(v, w)))))
    rows.append(("isotonic fit vs partition search (1000 runs, n<=7)", worst, 0.0, 1e-10))

    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 26))
        J = int(rng.integers(1, 6))
        xs = np.sort(rng.uniform(0.0, 1.0, n))
        ys = rng.normal(0.0, 1.0, n)
        zeta = rng.normal(0.0, 1.0, J)
        lam = rng.uniform(0.1, 20.0, J)
        sample = SortedSample(xs, ys)
        bins = summarize_bins(sample, J)
        closed = empirical_bayes_sigma2(sample, bins, PriorSpec(zeta, lam))
        dense = marginal_variance_matrix_form(ys, bin_index(xs, J), J, zeta, lam)
        worst = max(worst, abs(closed - dense))
    rows.append(("variance closed form vs dense matrix (200 runs)", worst, 0.0, 1e-9))

    rows.append(("kernel mass by quadrature", kernel_moment(TRIWEIGHT), 1.0, 1e-8))
    rows.append(("kernel second moment by quadrature", kernel_moment(TRIWEIGHT, power=2), 1.0 / 9.0, 1e-8))
    rows.append(("kernel roughness by quadrature", kernel_moment(TRIWEIGHT, squared=True), 350.0 / 429.0, 1e-8))
    return rows


def cmd_selfcheck(args) -> int:
    rows = _selfcheck_rows()
    width = max(len(r[0]) for r in rows)
    failed = 0
    for name, observed, expected, tol in rows:
        ok = abs(observed - expected) <= tol
        failed += not ok
        status = "pass" if ok else "FAIL"
        print(f"{name:<{width}}  observed={observed:.12g}  expected={expected:.12g}  tol={tol:g}  {status}")
    if failed:
        print(f"{failed} check(s) failed")
        return 2
    print("all checks passed")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="monoboot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coverage", help="Monte Carlo coverage study; writes coverage.csv")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--t0", type=float, default=None, help="single target point")
    p.add_argument("--t-grid", type=str, default=None, help="comma-separated target points")
    _add_scenario_args(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("hist", help="conditional-probability histogram data; writes hist.csv")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--t0", type=float, default=0.5, help="target point (default 0.5)")
    p.add_argument("--center", choices=CENTERS, default=None,
                   help="centering; defaults to theorem44 for smoothed, f0 otherwise")
    _add_scenario_args(p)
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("intervals", help="single-dataset intervals over a grid; writes intervals.csv")
    p.add_argument("--method", choices=METHODS, default="smoothed")
    p.add_argument("--data", type=Path, default=None, help="CSV file of x,y rows instead of simulation")
    p.add_argument("--t0", type=float, default=None)
    p.add_argument("--t-grid", type=str, default=None)
    _add_scenario_args(p, with_reps=False)
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("selfcheck", help="run the embedded oracle checks")
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"monoboot: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
