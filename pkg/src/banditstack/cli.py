"""Experiment runner CLI.

Subcommands:
  run       full experiment: search run + random-search baseline
            (writes stb.csv, baseline.csv, world.txt)
  plan      search run only (stb.csv, world.txt)
  baseline  random search only (baseline.csv, world.txt)
  estimate  ground-truth estimate of one explicit plan (estimate.csv)
  sweep     repeated searches on one world, final mode-plan estimates
            per replicate (sweep.csv, world.txt)

All outputs are deterministic functions of the configuration; running a
command twice with the same flags produces byte-identical files.

stb.csv has two row kinds sharing one header:
  kind=sample    one row per recorded iteration: the sampled plan, its raw
                 boolean outcome, the current mode plan, and the four
                 posterior diagnostics (estimate columns empty).
  kind=estimate  every --estimate-every iterations and on the last one:
                 ground-truth estimates of the current sampled and mode
                 plans over --estimate-runs simulations (sat column empty).
With --record-every 1 that is budget sample rows plus
ceil(budget / estimate_every) estimate rows.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

from . import evaluation, planner, seeding, simworld
from .requirements import ParseError, Requirement, horizon, parse

STB_CSV_HEADER = [
    "iteration", "kind", "sampled_plan", "sat", "mode_plan",
    "avg_mode_sampled", "avg_cv_sampled", "avg_mode_best", "avg_cv_best",
    "sampled_p_hat", "sampled_stderr", "mode_p_hat", "mode_stderr",
    "estimate_runs",
]
BASELINE_CSV_HEADER = ["best_plan", "p_hat", "stderr", "n_plans", "n_evals"]
ESTIMATE_CSV_HEADER = ["plan", "p_hat", "stderr", "runs"]
SWEEP_CSV_HEADER = ["replicate", "search_seed", "mode_plan", "p_hat", "stderr"]


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    seed: int = 0
    width: int = 10
    height: int = 10
    obstacle_ratio: float = 0.2
    ratio_mode: str = simworld.RATIO_OF_ALL_CELLS
    p_fail: float | str = "random"
    formula: str = "G<=10 (collisions <= 2)"
    budget: int = 100_000
    estimate_every: int = 100
    estimate_runs: int = 1000
    record_every: int = 1
    baseline_plans: int = 1000
    baseline_evals: int = 1000
    out_dir: str = "out"

    def validate(self) -> Requirement:
        """Check ranges and parse the formula; returns the parsed requirement."""
        if self.seed < 0:
            raise ConfigError("--seed must be non-negative")
        if self.width < 1 or self.height < 1:
            raise ConfigError("--width and --height must be at least 1")
        if not 0.0 <= self.obstacle_ratio < 1.0:
            raise ConfigError("--obstacle-ratio must be in [0, 1)")
        if self.ratio_mode not in (simworld.RATIO_OF_ALL_CELLS,
                                   simworld.RATIO_OBSTACLES_TO_FREE):
            raise ConfigError(f"unknown --ratio-mode {self.ratio_mode!r}")
        if self.p_fail != "random" and not 0.0 <= float(self.p_fail) <= 1.0:
            raise ConfigError("--pfail must be 'random' or a float in [0, 1]")
        if self.budget < 1:
            raise ConfigError("--budget must be at least 1")
        if self.estimate_every < 1 or self.estimate_runs < 1:
            raise ConfigError("--estimate-every and --estimate-runs must be at least 1")
        if self.record_every < 1:
            raise ConfigError("--record-every must be at least 1")
        if self.estimate_every % self.record_every != 0:
            raise ConfigError("--estimate-every must be a multiple of --record-every")
        if self.baseline_plans < 1 or self.baseline_evals < 1:
            raise ConfigError("--baseline-plans and --baseline-evals must be at least 1")
        try:
            phi = parse(self.formula)
            horizon(phi)
        except (ParseError, ValueError) as exc:
            raise ConfigError(f"invalid --formula: {exc}") from exc
        return phi


def _open_csv(path: Path):
    return open(path, "w", newline="", encoding="utf-8")


def _plan_str(plan) -> str:
    return "-".join(str(a) for a in plan)


def _make_world(config: ExperimentConfig) -> simworld.GridWorld:
    return simworld.generate_world(
        config.seed, config.width, config.height, config.obstacle_ratio,
        config.p_fail, config.ratio_mode)


def _write_world(world: simworld.GridWorld, out_dir: Path) -> None:
    (out_dir / "world.txt").write_text(simworld.world_to_text(world),
                                       encoding="utf-8")


def run_search(config: ExperimentConfig, out_dir: Path) -> None:
    """Search run: writes stb.csv and world.txt."""
    phi = config.validate()
    world = _make_world(config)
    _write_world(world, out_dir)
    model = simworld.GridWorldModel(world)

    with _open_csv(out_dir / "stb.csv") as fh:
        writer = csv.writer(fh)
        writer.writerow(STB_CSV_HEADER)

        def record(rec: planner.IterationRecord) -> None:
            writer.writerow([
                rec.iteration, "sample", _plan_str(rec.sampled_plan),
                int(rec.sat), _plan_str(rec.mode_plan),
                rec.avg_mode_sampled, rec.avg_cv_sampled,
                rec.avg_mode_best, rec.avg_cv_best,
                "", "", "", "", "",
            ])
            if rec.iteration % config.estimate_every == 0 or rec.iteration == config.budget:
                snapshot = evaluation.ExperimentRecord(
                    iteration=rec.iteration,
                    sampled_plan_sat_estimate=evaluation.estimate_sat_prob(
                        model, rec.sampled_plan, phi, config.estimate_runs,
                        seeding.stream(config.seed, seeding.ESTIMATE_SAMPLED,
                                       rec.iteration)),
                    mode_plan_sat_estimate=evaluation.estimate_sat_prob(
                        model, rec.mode_plan, phi, config.estimate_runs,
                        seeding.stream(config.seed, seeding.ESTIMATE_MODE,
                                       rec.iteration)),
                    avg_mode_sampled=rec.avg_mode_sampled,
                    avg_cv_sampled=rec.avg_cv_sampled,
                    avg_mode_best=rec.avg_mode_best,
                    avg_cv_best=rec.avg_cv_best)
                writer.writerow([
                    snapshot.iteration, "estimate", _plan_str(rec.sampled_plan),
                    "", _plan_str(rec.mode_plan),
                    snapshot.avg_mode_sampled, snapshot.avg_cv_sampled,
                    snapshot.avg_mode_best, snapshot.avg_cv_best,
                    snapshot.sampled_plan_sat_estimate.p_hat,
                    snapshot.sampled_plan_sat_estimate.stderr,
                    snapshot.mode_plan_sat_estimate.p_hat,
                    snapshot.mode_plan_sat_estimate.stderr,
                    config.estimate_runs,
                ])

        planner.search(model, phi, config.budget, config.seed,
                       recorder=record, record_every=config.record_every)


def run_baseline(config: ExperimentConfig, out_dir: Path) -> None:
    """Random-search baseline: writes baseline.csv and world.txt."""
    phi = config.validate()
    world = _make_world(config)
    _write_world(world, out_dir)
    model = simworld.GridWorldModel(world)
    best_plan, best_estimate = evaluation.random_search(
        model, phi, config.baseline_plans, config.baseline_evals,
        seeding.stream(config.seed, seeding.BASELINE))
    with _open_csv(out_dir / "baseline.csv") as fh:
        writer = csv.writer(fh)
        writer.writerow(BASELINE_CSV_HEADER)
        writer.writerow([_plan_str(best_plan), best_estimate.p_hat,
                         best_estimate.stderr, config.baseline_plans,
                         config.baseline_evals])


def run_experiment(config: ExperimentConfig) -> None:
    """Full experiment: stb.csv + baseline.csv + world.txt in out_dir."""
    config.validate()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    run_search(config, out_dir)
    run_baseline(config, out_dir)


def run_estimate(config: ExperimentConfig, plan_text: str, out_dir: Path) -> None:
    """Ground-truth estimate of one plan: writes estimate.csv."""
    phi = config.validate()
    world = _make_world(config)
    _write_world(world, out_dir)
    model = simworld.GridWorldModel(world)
    try:
        plan = tuple(int(part) for part in plan_text.split("-"))
    except ValueError as exc:
        raise ConfigError(f"invalid --plan {plan_text!r}: {exc}") from exc
    if any(a < 0 or a >= model.n_actions for a in plan):
        raise ConfigError(f"--plan actions must be in [0, {model.n_actions})")
    if len(plan) != horizon(phi):
        raise ConfigError(
            f"--plan has {len(plan)} actions but the formula requires {horizon(phi)}")
    estimate = evaluation.estimate_sat_prob(
        model, plan, phi, config.estimate_runs,
        seeding.stream(config.seed, seeding.ESTIMATE_SAMPLED, 0))
    with _open_csv(out_dir / "estimate.csv") as fh:
        writer = csv.writer(fh)
        writer.writerow(ESTIMATE_CSV_HEADER)
        writer.writerow([_plan_str(plan), estimate.p_hat, estimate.stderr,
                         config.estimate_runs])


def run_sweep(config: ExperimentConfig, replicates: int, out_dir: Path) -> None:
    """Repeat the search on one fixed world; writes sweep.csv.

    Replicate i searches with an independent seed derived from the master
    seed, then its final mode plan is estimated with --estimate-runs runs.
    The spread of those estimates shows how often the search settles on a
    suboptimal self-reinforcing plan.
    """
    phi = config.validate()
    if replicates < 1:
        raise ConfigError("--replicates must be at least 1")
    world = _make_world(config)
    _write_world(world, out_dir)
    model = simworld.GridWorldModel(world)
    with _open_csv(out_dir / "sweep.csv") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_HEADER)
        for i in range(replicates):
            search_seed = seeding.derive_seed(config.seed, seeding.SWEEP, i)
            stack = planner.search(model, phi, config.budget, search_seed)
            mode = stack.mode_plan()
            estimate = evaluation.estimate_sat_prob(
                model, mode, phi, config.estimate_runs,
                seeding.stream(config.seed, seeding.SWEEP, i, 1))
            writer.writerow([i, search_seed, _plan_str(mode),
                             estimate.p_hat, estimate.stderr])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banditstack",
        description="Plan synthesis experiments on stochastic grid worlds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--width", type=int, default=10)
        p.add_argument("--height", type=int, default=10)
        p.add_argument("--obstacle-ratio", type=float, default=0.2)
        p.add_argument("--ratio-mode", default=simworld.RATIO_OF_ALL_CELLS,
                       choices=[simworld.RATIO_OF_ALL_CELLS,
                                simworld.RATIO_OBSTACLES_TO_FREE])
        p.add_argument("--pfail", default="random",
                       help="action failure probability, or 'random' for one "
                            "uniform draw per world")
        p.add_argument("--formula", default="G<=10 (collisions <= 2)")
        p.add_argument("--estimate-runs", type=int, default=1000)
        p.add_argument("--out-dir", default="out")

    def add_search(p: argparse.ArgumentParser) -> None:
        p.add_argument("--budget", type=int, default=100_000)
        p.add_argument("--estimate-every", type=int, default=100)
        p.add_argument("--record-every", type=int, default=1)

    def add_baseline(p: argparse.ArgumentParser) -> None:
        p.add_argument("--baseline-plans", type=int, default=1000)
        p.add_argument("--baseline-evals", type=int, default=1000)

    p_run = sub.add_parser("run", help="search plus baseline (all artifacts)")
    add_common(p_run)
    add_search(p_run)
    add_baseline(p_run)

    p_plan = sub.add_parser("plan", help="search run only")
    add_common(p_plan)
    add_search(p_plan)

    p_base = sub.add_parser("baseline", help="random-search baseline only")
    add_common(p_base)
    add_baseline(p_base)

    p_est = sub.add_parser("estimate", help="estimate one plan's satisfaction")
    add_common(p_est)
    p_est.add_argument("--plan", required=True,
                       help="dash-separated action indices, e.g. 3-3-0-1")

    p_sweep = sub.add_parser("sweep", help="repeated searches on one world")
    add_common(p_sweep)
    add_search(p_sweep)
    p_sweep.add_argument("--replicates", type=int, default=10)

    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    pfail: float | str = args.pfail
    if pfail != "random":
        try:
            pfail = float(pfail)
        except ValueError as exc:
            raise ConfigError(f"invalid --pfail {args.pfail!r}") from exc
    config = ExperimentConfig(
        seed=args.seed, width=args.width, height=args.height,
        obstacle_ratio=args.obstacle_ratio, ratio_mode=args.ratio_mode,
        p_fail=pfail, formula=args.formula,
        estimate_runs=args.estimate_runs, out_dir=args.out_dir)
    if hasattr(args, "budget"):
        config.budget = args.budget
        config.estimate_every = args.estimate_every
        config.record_every = args.record_every
    if hasattr(args, "baseline_plans"):
        config.baseline_plans = args.baseline_plans
        config.baseline_evals = args.baseline_evals
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; that is a configuration error here.
        return 0 if exc.code in (0, None) else 1
    try:
        config = _config_from_args(args)
        config.validate()
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "run":
            run_experiment(config)
        elif args.command == "plan":
            run_search(config, out_dir)
        elif args.command == "baseline":
            run_baseline(config, out_dir)
        elif args.command == "estimate":
            run_estimate(config, args.plan, out_dir)
        elif args.command == "sweep":
            run_sweep(config, args.replicates, out_dir)
    except (ConfigError, simworld.DegenerateWorldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
