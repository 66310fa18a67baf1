"""Command-line front end: equalization experiments and gradient checks.

Exit codes are a stable contract for scripting: 0 on success, 1 when a
check or experiment fails, 2 on argument or I/O errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import channel
from .cklms import NoveltyCriterion, instantaneous_cost_check
from .kernels import RealKernel
from .wirtinger import property_suite

CSV_HEADER = "n,algorithm,mse,mse_db,dict_size"

_CONFIG_FIELDS = (
    "algorithm",
    "samples",
    "runs",
    "rho",
    "snr_db",
    "kernel",
    "sigma",
    "degree",
    "filter_length",
    "delay",
    "novelty_d1",
    "novelty_d2",
    "seed",
    "smooth",
    "output",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ckaf", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    eq = sub.add_parser("equalize", help="run the nonlinear channel equalization benchmark")
    eq.add_argument("--algorithm", choices=("cklms", "nclms", "wl-nclms", "all"), default="all")
    eq.add_argument("--samples", type=int, default=5000)
    eq.add_argument("--runs", type=int, default=20)
    eq.add_argument("--rho", type=float, default=channel.DEFAULT_RHO)
    eq.add_argument("--snr-db", type=float, default=15.0)
    eq.add_argument("--mu", type=float, default=None, help="step size for the selected algorithm")
    eq.add_argument("--kernel", choices=("gaussian", "polynomial"), default="gaussian")
    eq.add_argument("--sigma", type=float, default=channel.DEFAULT_SIGMA)
    eq.add_argument("--degree", type=int, default=2)
    eq.add_argument("--filter-length", type=int, default=5)
    eq.add_argument("--delay", type=int, default=2)
    eq.add_argument("--novelty-d1", type=float, default=0.15)
    eq.add_argument("--novelty-d2", type=float, default=0.2)
    eq.add_argument("--seed", type=int, default=0)
    eq.add_argument("--smooth", type=int, default=1)
    eq.add_argument("--output", default="curves.csv")

    gc = sub.add_parser("gradcheck", help="run the Wirtinger-calculus property and gradient checks")
    gc.add_argument("--seed", type=int, default=0)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "equalize":
        if args.algorithm == "all" and args.mu is not None:
            parser.error("--mu cannot be combined with --algorithm all; per-algorithm defaults apply")
        if not 0.0 <= args.rho <= 1.0:
            parser.error(f"--rho must lie in [0, 1], got {args.rho}")
        if args.samples < 1 or args.runs < 1 or args.smooth < 1:
            parser.error("--samples, --runs and --smooth must be positive")
        if args.filter_length < 0 or args.delay < 0:
            parser.error("--filter-length and --delay must be nonnegative")
        if args.novelty_d1 < 0 or args.novelty_d2 < 0:
            parser.error("--novelty-d1 and --novelty-d2 must be nonnegative")
        if args.seed < 0:
            parser.error("--seed must be nonnegative")
    return args


def _config_comment(args: argparse.Namespace, mu_map: dict) -> str:
    parts = [f"{name}={getattr(args, name)}" for name in _CONFIG_FIELDS]
    parts += [f"mu_{algo.replace('-', '_')}={mu_map[algo]!r}" for algo in channel.ALGORITHMS]
    return "# " + " ".join(parts)


def emit_csv(curves: dict, comment: str, path) -> None:
    """Write learning curves: header line, config comment, then one row
    per (iteration, algorithm) with the algorithms interleaved per n."""
    if not curves:
        raise ValueError("no curves to write")
    names = [a for a in channel.ALGORITHMS if a in curves] or sorted(curves)
    length = len(curves[names[0]].mse)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        fh.write(comment + "\n")
        for n in range(length):
            for name in names:
                c = curves[name]
                fh.write(
                    f"{n},{name},{c.mse[n]:.12e},{c.mse_db[n]:.12e},{c.dict_size[n]:.12g}\n"
                )


def run_equalize(args: argparse.Namespace) -> int:
    algos = list(channel.ALGORITHMS) if args.algorithm == "all" else [args.algorithm]
    mu_map = dict(channel.DEFAULT_MU)
    if args.mu is not None:
        mu_map[args.algorithm] = args.mu
    if args.kernel == "gaussian":
        kernel = RealKernel.gaussian(args.sigma)
    else:
        kernel = RealKernel.polynomial(args.degree)
    novelty = None
    if args.novelty_d1 > 0 or args.novelty_d2 > 0:
        novelty = NoveltyCriterion(args.novelty_d1, args.novelty_d2)
    cfg = channel.ChannelConfig(snr_db=args.snr_db, rho=args.rho)
    try:
        curves = channel.run_experiment(
            algos,
            cfg,
            L=args.filter_length,
            D=args.delay,
            n_samples=args.samples,
            runs=args.runs,
            mu=mu_map,
            kernel=kernel,
            novelty=novelty,
            seed=args.seed,
            smooth=args.smooth,
        )
    except (RuntimeError, ValueError) as exc:
        print(f"experiment failed: {exc}", file=sys.stderr)
        return 1
    try:
        emit_csv(curves, _config_comment(args, mu_map), args.output)
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return 2
    for name in algos:
        tail = curves[name].mse[-min(500, len(curves[name].mse)) :]
        mean_tail = float(tail.mean())
        db = 10.0 * math.log10(mean_tail) if mean_tail > 0 else float("-inf")
        extra = ""
        if name == "cklms":
            extra = f"  final dictionary {curves[name].dict_size[-1]:.1f}"
        print(f"{name:<9s} steady-state mse {mean_tail:.6e} ({db:+.2f} dB){extra}")
    print(f"wrote {args.output}")
    return 0


def run_gradcheck(seed: int) -> int:
    report = property_suite(rng_seed=seed)
    print(f"wirtinger property suite (seed {seed}, {report.trials} trials/property, tol {report.tol:g})")
    for result in report.results:
        print(f"  {result}")
        if not result.passed and result.witness is not None:
            print(f"       witness point: {result.witness}")
    cost_reports = instantaneous_cost_check(rng_seed=seed)
    worst = max(r.error for r in cost_reports)
    cost_ok = all(r.passed for r in cost_reports)
    status = "PASS" if cost_ok else "FAIL"
    print(
        f"kernel-cost gradient vs finite differences "
        f"({len(cost_reports)} trials, tol {cost_reports[0].tol:g})  max err {worst:.3e}  {status}"
    )
    if report.all_passed and cost_ok:
        print("all checks passed")
        return 0
    print("CHECK FAILURES detected", file=sys.stderr)
    return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    if args.subcommand == "gradcheck":
        return run_gradcheck(args.seed)
    return run_equalize(args)


if __name__ == "__main__":
    sys.exit(main())
