"""Command-line front end.

Subcommands
-----------
believe
    Monte Carlo belief and plausibility of an assertion given data.
curve
    Singleton-plausibility values over a parameter grid, as CSV.
interval
    Level 1-alpha plausibility region, as JSON.
audit
    Validity or coverage audit; exits 4 when a bound fails (CI-friendly).
compare
    Paired belief / reference-posterior quantiles across replications, CSV.
discrete-demo
    Belief and plausibility tables for a mass function on a finite frame.

Every command takes --seed (default 20160518) and echoes it in the output.
Output is deterministic for a fixed flag set: parallel work is merged by
stream index, so IM_INFER_THREADS changes speed only.  JSON objects are
emitted with sorted keys; CSV output starts with a single comment line
``# seed=S`` followed by the documented header row.

Exit codes: 0 success, 2 usage error, 3 model or data error, 4 audit
bound violated.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import NoReturn, Sequence

import numpy as np

from .audit import (
    AuditConfig,
    CvTruth,
    NormalMeanTruth,
    compare_im_bayes,
    coverage_audit,
    validity_audit,
)
from .engine import DEFAULT_DRAWS, DefaultRandomSet, belief_mc
from .errors import IminferError
from .finite_belief import FiniteFrame, MassFunction
from .intervals import ParamSet, format_region, parse_region
from .models import (
    CvAssociation,
    CvStatistic,
    NormalMeanAssociation,
    cv_plausibility_curve,
    cv_plausibility_interval,
    cv_statistic,
    load_dataset,
    normal_mean_interval,
)
from .streams import DEFAULT_SEED

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MODEL = 3
EXIT_AUDIT = 4

NORMAL_MEAN = "normal-mean"
NORMAL_CV = "normal-cv"

DEMO_FRAME = ("a", "b", "c")
DEMO_MASS = "a:0.3,b+c:0.5,a+b+c:0.2"


class UsageFault(Exception):
    """Bad flag value; maps to exit code 2 with a message naming the flag."""


def _fail_usage(flag: str, detail: str) -> NoReturn:
    raise UsageFault(f"invalid value for {flag}: {detail}")


def _parse_assertion(text: str) -> ParamSet:
    try:
        return parse_region(text)
    except ValueError as exc:
        _fail_usage("--assertion", str(exc))


def _parse_grid_spec(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        _fail_usage("--theta-grid", f"expected lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        _fail_usage("--theta-grid", str(exc))
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        _fail_usage("--theta-grid", "need finite lo < hi")
    if steps < 2:
        _fail_usage("--theta-grid", "need at least 2 steps")
    return lo, hi, steps


def _parse_alphas(text: str) -> tuple[float, ...]:
    try:
        alphas = tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        _fail_usage("--alphas", str(exc))
    if not alphas or not all(0.0 < a < 1.0 for a in alphas):
        _fail_usage("--alphas", "each value must lie strictly inside (0, 1)")
    return alphas


def _check_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        _fail_usage("--alpha", f"must lie strictly inside (0, 1), got {alpha}")
    return alpha


def _emit(text: str, output: str | None) -> None:
    sys.stdout.write(text)
    if output is not None:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(payload: dict, output: str | None) -> None:
    _emit(
        json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n",
        output,
    )


def _emit_csv(header: str, rows: list[str], seed: int, output: str | None) -> None:
    _emit(f"# seed={seed}\n{header}\n" + "".join(r + "\n" for r in rows), output)


def _fmt(value: float) -> str:
    return repr(float(value))


def _load_model_input(
    args: argparse.Namespace,
) -> tuple[NormalMeanAssociation | CvAssociation, float, dict]:
    """Association, observed statistic, and an input echo for the output.

    normal-mean accepts either --x (one observation, unit scale) or --data
    (the sample mean carries scale 1/sqrt(n)); normal-cv requires --data.
    """
    if args.model == NORMAL_MEAN:
        if (args.x is None) == (args.data is None):
            _fail_usage("--x", "normal-mean needs exactly one of --x or --data")
        if args.x is not None:
            if not math.isfinite(args.x):
                _fail_usage("--x", "must be finite")
            return NormalMeanAssociation(), args.x, {"x": args.x}
        values = load_dataset(args.data)
        mean = float(sum(values) / len(values))
        scale = 1.0 / math.sqrt(len(values))
        assoc = NormalMeanAssociation(scale=scale)
        return assoc, mean, {"data": args.data, "n": len(values), "mean": mean}
    if args.data is None:
        _fail_usage("--data", "normal-cv needs --data")
    stat = cv_statistic(load_dataset(args.data))
    echo = {
        "data": args.data,
        "n": stat.n,
        "mean": stat.mean,
        "sd": stat.sd,
        "t": stat.t,
    }
    return CvAssociation(stat.n), stat.t, echo


def _cv_stat_from_args(args: argparse.Namespace) -> tuple[CvStatistic, dict]:
    stat = cv_statistic(load_dataset(args.data))
    echo = {
        "data": args.data,
        "n": stat.n,
        "mean": stat.mean,
        "sd": stat.sd,
        "t": stat.t,
    }
    return stat, echo


def cmd_believe(args: argparse.Namespace) -> int:
    assertion = _parse_assertion(args.assertion)
    if args.draws < 1:
        _fail_usage("--draws", "must be positive")
    assoc, x, echo = _load_model_input(args)
    est = belief_mc(
        assoc, DefaultRandomSet(), x, assertion, draws=args.draws, seed=args.seed
    )
    payload = {
        "model": args.model,
        "input": echo,
        "assertion": format_region(assertion),
        "belief": est.belief,
        "plausibility": est.plausibility,
        "belief_mc_se": est.belief_mc_se,
        "plausibility_mc_se": est.plausibility_mc_se,
        "draws": est.draws,
        "seed": args.seed,
    }
    _emit_json(payload, args.output)
    return EXIT_OK


def cmd_curve(args: argparse.Namespace) -> int:
    lo, hi, steps = _parse_grid_spec(args.theta_grid)
    thetas = np.linspace(lo, hi, steps)
    if args.model == NORMAL_CV:
        stat, _ = _cv_stat_from_args(args)
        values = cv_plausibility_curve(stat, thetas)
    else:
        assoc, x, _ = _load_model_input(args)
        prs = DefaultRandomSet()
        values = [
            prs.containment_probability(assoc.aux_at(x, float(t))) for t in thetas
        ]
    rows = [f"{_fmt(t)},{_fmt(p)}" for t, p in zip(thetas, values)]
    _emit_csv("theta,plausibility", rows, args.seed, args.output)
    return EXIT_OK


def cmd_interval(args: argparse.Namespace) -> int:
    alpha = _check_alpha(args.alpha)
    if args.model == NORMAL_CV:
        if args.data is None:
            _fail_usage("--data", "normal-cv needs --data")
        stat, echo = _cv_stat_from_args(args)
        region = cv_plausibility_interval(stat, alpha)
    else:
        assoc, x, echo = _load_model_input(args)
        region = normal_mean_interval(x, alpha, scale=assoc.scale)
    payload = {
        "model": args.model,
        "input": echo,
        "alpha": alpha,
        "region": region.to_json(),
        "region_text": format_region(region),
        "bounded": region.is_bounded,
        "seed": args.seed,
    }
    _emit_json(payload, args.output)
    return EXIT_OK


def _truth_from_args(args: argparse.Namespace) -> NormalMeanTruth | CvTruth:
    if args.model == NORMAL_MEAN:
        if args.theta is None:
            _fail_usage("--theta", "normal-mean audits need --theta")
        return NormalMeanTruth(args.theta)
    if args.mu is None or args.sigma is None or args.n is None:
        _fail_usage("--mu", "normal-cv audits need --mu, --sigma and --n")
    try:
        return CvTruth(args.mu, args.sigma, args.n)
    except ValueError as exc:
        _fail_usage("--mu/--sigma/--n", str(exc))


def cmd_audit(args: argparse.Namespace) -> int:
    if args.reps < 1:
        _fail_usage("--reps", "must be positive")
    truth = _truth_from_args(args)
    if args.mode == "validity":
        if args.assertion is None:
            _fail_usage("--assertion", "validity audits need --assertion")
        cfg = AuditConfig(
            model=args.model,
            truth=truth,
            assertion=_parse_assertion(args.assertion),
            replications=args.reps,
            alphas=_parse_alphas(args.alphas),
            seed=args.seed,
        )
        report = validity_audit(cfg)
        _emit_json(report.to_json(), args.output)
        return EXIT_OK if report.all_bounds_satisfied else EXIT_AUDIT
    cfg = AuditConfig(
        model=args.model, truth=truth, replications=args.reps, seed=args.seed
    )
    report = coverage_audit(cfg, _check_alpha(args.alpha))
    _emit_json(report.to_json(), args.output)
    return EXIT_OK if report.bound_satisfied else EXIT_AUDIT


def cmd_compare(args: argparse.Namespace) -> int:
    if args.reps < 1:
        _fail_usage("--reps", "must be positive")
    if args.posterior_draws < 10_000:
        _fail_usage("--posterior-draws", "must be at least 10000")
    try:
        truth = CvTruth(args.mu, args.sigma, args.n)
    except ValueError as exc:
        _fail_usage("--mu/--sigma/--n", str(exc))
    cfg = AuditConfig(
        model=NORMAL_CV,
        truth=truth,
        assertion=_parse_assertion(args.assertion),
        replications=args.reps,
        seed=args.seed,
        posterior_draws=args.posterior_draws,
    )
    report = compare_im_bayes(cfg)
    rows = [
        f"{_fmt(q)},{_fmt(b)},{_fmt(p)}" for q, b, p in report.quantile_rows()
    ]
    _emit_csv(
        "quantile_uniform,im_belief,bayes_posterior", rows, args.seed, args.output
    )
    return EXIT_OK


def _parse_frame(text: str) -> FiniteFrame:
    atoms = tuple(a.strip() for a in text.split(","))
    if any(not a for a in atoms):
        _fail_usage("--frame", "empty atom name")
    if len(set(atoms)) != len(atoms):
        _fail_usage("--frame", "duplicate atom names")
    return FiniteFrame(atoms)


def _parse_mass(text: str, frame: FiniteFrame) -> list[tuple[frozenset, float]]:
    pairs = []
    for entry in text.split(","):
        head, sep, tail = entry.partition(":")
        if not sep:
            _fail_usage("--mass", f"entry {entry!r} is not atoms:weight")
        atoms = frozenset(a.strip() for a in head.split("+") if a.strip())
        if not atoms:
            _fail_usage("--mass", f"entry {entry!r} names no atoms")
        unknown = atoms - set(frame.atoms)
        if unknown:
            _fail_usage("--mass", f"unknown atoms {sorted(unknown)}")
        try:
            weight = float(tail)
        except ValueError:
            _fail_usage("--mass", f"bad weight in {entry!r}")
        pairs.append((atoms, weight))
    return pairs


def cmd_discrete_demo(args: argparse.Namespace) -> int:
    frame = _parse_frame(args.frame)
    mass = MassFunction.from_focal_list(frame, _parse_mass(args.mass, frame))
    atoms = frame.atoms
    table = []
    for code in range(1 << len(atoms)):
        subset = frozenset(a for i, a in enumerate(atoms) if code >> i & 1)
        label = "+".join(a for a in atoms if a in subset) or "(empty)"
        table.append(
            {
                "subset": label,
                "belief": mass.belief(subset),
                "plausibility": mass.plausibility(subset),
            }
        )
    table.sort(key=lambda row: (row["subset"].count("+"), row["subset"]))
    payload = {
        "frame": list(atoms),
        "mass": args.mass,
        "table": table,
        "seed": args.seed,
    }
    _emit_json(payload, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iminfer",
        description="Valid prior-free inference with belief functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--output", default=None, help="also write output here")

    def model_input(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--model", choices=[NORMAL_MEAN, NORMAL_CV], default=NORMAL_MEAN
        )
        p.add_argument("--x", type=float, default=None)
        p.add_argument("--data", default=None)

    p = sub.add_parser("believe", help="belief/plausibility of an assertion")
    model_input(p)
    p.add_argument("--assertion", required=True)
    p.add_argument("--draws", type=int, default=DEFAULT_DRAWS)
    common(p)
    p.set_defaults(func=cmd_believe)

    p = sub.add_parser("curve", help="plausibility over a parameter grid")
    model_input(p)
    p.add_argument(
        "--theta-grid",
        required=True,
        help="lo:hi:steps; write --theta-grid=-10:10:401 when lo is negative",
    )
    common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("interval", help="level 1-alpha plausibility region")
    model_input(p)
    p.add_argument("--alpha", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("audit", help="validity or coverage audit")
    p.add_argument("--mode", choices=["validity", "coverage"], required=True)
    p.add_argument(
        "--model", choices=[NORMAL_MEAN, NORMAL_CV], default=NORMAL_MEAN
    )
    p.add_argument("--theta", type=float, default=None, help="normal-mean truth")
    p.add_argument("--mu", type=float, default=None, help="normal-cv truth mean")
    p.add_argument("--sigma", type=float, default=None, help="normal-cv truth sd")
    p.add_argument("--n", type=int, default=None, help="normal-cv sample size")
    p.add_argument("--assertion", default=None)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--alphas", default="0.01,0.05,0.1,0.25,0.5")
    p.add_argument("--alpha", type=float, default=0.05, help="coverage level")
    common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("compare", help="belief vs reference-posterior quantiles")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--assertion", required=True)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--posterior-draws", type=int, default=100_000)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("discrete-demo", help="finite-frame belief table")
    p.add_argument("--frame", default=",".join(DEMO_FRAME))
    p.add_argument("--mass", default=DEMO_MASS)
    common(p)
    p.set_defaults(func=cmd_discrete_demo)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize oddball codes
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageFault as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IminferError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
