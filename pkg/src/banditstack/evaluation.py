"""Ground-truth satisfaction estimates and the random-search baseline.

The planner itself only ever sees boolean simulation outcomes; the
functions here provide the instrumentation around it: Monte-Carlo maximum
likelihood estimates of a plan's satisfaction probability, a uniform
random-search reference, and posterior summary statistics of a plan's arms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .requirements import Requirement, horizon

if TYPE_CHECKING:
    from .planner import BanditStack, Plan
    from .simworld import SimulationModel


@dataclass(frozen=True)
class SatEstimate:
    """MLE of satisfaction probability from `n` independent runs."""

    p_hat: float
    n: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_hat <= 1.0:
            raise ValueError("p_hat must be in [0, 1]")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def stderr(self) -> float:
        return math.sqrt(self.p_hat * (1.0 - self.p_hat) / self.n)


@dataclass(frozen=True)
class ExperimentRecord:
    """Periodic ground-truth snapshot taken during a search run."""

    iteration: int
    sampled_plan_sat_estimate: SatEstimate
    mode_plan_sat_estimate: SatEstimate
    avg_mode_sampled: float
    avg_cv_sampled: float
    avg_mode_best: float
    avg_cv_best: float

    def __post_init__(self) -> None:
        for mean in (self.avg_mode_sampled, self.avg_mode_best):
            if not 0.0 < mean < 1.0:
                raise ValueError("average posterior means must lie in (0, 1)")
        for cv in (self.avg_cv_sampled, self.avg_cv_best):
            if cv < 0.0:
                raise ValueError("coefficients of variation must be non-negative")


def estimate_sat_prob(model: "SimulationModel", plan: Sequence[int],
                      phi: Requirement, n: int,
                      rng: np.random.Generator) -> SatEstimate:
    """Estimate P(plan satisfies phi) from `n` independent simulations.

    Each run gets its own child stream spawned from `rng`, so the runs
    could be executed in any order (or in parallel) without changing the
    result.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    successes = 0
    for child in rng.spawn(n):
        sat, _ = model.simulate(plan, phi, child)
        successes += sat
    return SatEstimate(successes / n, n)


def random_search(model: "SimulationModel", phi: Requirement, n_plans: int,
                  n_evals: int, rng: np.random.Generator) -> tuple["Plan", SatEstimate]:
    """Estimate `n_plans` uniform plans, return the best (first on ties).

    Candidates are drawn and evaluated one at a time, so for a fixed
    starting `rng` state the first k candidates are identical regardless of
    `n_plans`: the best estimate is non-decreasing in the budget.
    """
    if n_plans < 1 or n_evals < 1:
        raise ValueError("n_plans and n_evals must be at least 1")
    h = horizon(phi)
    best_plan: "Plan | None" = None
    best_estimate: SatEstimate | None = None
    for _ in range(n_plans):
        plan = tuple(int(a) for a in rng.integers(0, model.n_actions, size=h))
        estimate = estimate_sat_prob(model, plan, phi, n_evals, rng.spawn(1)[0])
        if best_estimate is None or estimate.p_hat > best_estimate.p_hat:
            best_plan, best_estimate = plan, estimate
    assert best_plan is not None and best_estimate is not None
    return best_plan, best_estimate


def plan_diagnostics(stack: "BanditStack", plan: Sequence[int]) -> tuple[float, float]:
    """Average posterior mean and CV of the arms `plan` selects."""
    return stack.plan_diagnostics(plan)
