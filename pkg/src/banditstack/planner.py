"""Open-loop plan search with one Bayesian bandit per plan step.

The policy state is a horizon x actions grid of Beta-Bernoulli arms.  Each
search iteration Thompson-samples one action per step to form a plan, runs
one simulation of that plan against the requirement, and credits the
boolean outcome to every (step, chosen action) arm.  Selection never looks
at intermediate simulation states; only the per-step posteriors evolve.

The deterministic read-out is the mode plan: per step, the action with the
highest posterior mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import seeding
from .bandit import BetaArm
from .requirements import Requirement, horizon
from .simworld import SimulationModel

Plan = tuple[int, ...]


class BanditStack:
    """Grid of Beta-Bernoulli arms: one bandit of `n_actions` arms per step."""

    def __init__(self, horizon: int, n_actions: int):
        if horizon < 1:
            raise ValueError("horizon must be at least 1")
        if n_actions < 1:
            raise ValueError("need at least one action")
        # Posterior parameters alpha = successes + 1, beta = failures + 1,
        # kept in that form so the sampling hot path avoids the offset.
        self._alpha = np.ones((horizon, n_actions), dtype=np.int64)
        self._beta = np.ones((horizon, n_actions), dtype=np.int64)
        self._steps = np.arange(horizon)
        self._iterations = 0

    @property
    def horizon(self) -> int:
        return self._alpha.shape[0]

    @property
    def n_actions(self) -> int:
        return self._alpha.shape[1]

    @property
    def iterations(self) -> int:
        """Number of outcomes recorded so far."""
        return self._iterations

    def arm(self, step: int, action: int) -> BetaArm:
        return BetaArm(int(self._alpha[step, action]) - 1,
                       int(self._beta[step, action]) - 1)

    def arms_at(self, step: int) -> list[BetaArm]:
        return [self.arm(step, a) for a in range(self.n_actions)]

    def sample_plan(self, rng: np.random.Generator) -> Plan:
        """Thompson-sample one action per step (argmax of posterior draws)."""
        draws = rng.beta(self._alpha, self._beta)
        return tuple(int(a) for a in np.argmax(draws, axis=1))

    def record_outcome(self, plan: Sequence[int], sat: bool) -> None:
        """Credit one simulation outcome to every arm the plan selected."""
        if len(plan) != self.horizon:
            raise ValueError(
                f"plan length {len(plan)} does not match horizon {self.horizon}")
        if sat:
            self._alpha[self._steps, plan] += 1
        else:
            self._beta[self._steps, plan] += 1
        self._iterations += 1

    def mode_plan(self) -> Plan:
        """Per step, the action maximizing the posterior mean (s+1)/(s+f+2).

        Deterministic; ties break toward the lowest action index.
        """
        means = self._alpha / (self._alpha + self._beta)
        return tuple(int(a) for a in np.argmax(means, axis=1))

    def plan_diagnostics(self, plan: Sequence[int]) -> tuple[float, float]:
        """Average posterior mean and CV over the arms a plan selects."""
        if len(plan) != self.horizon:
            raise ValueError(
                f"plan length {len(plan)} does not match horizon {self.horizon}")
        # float64 up front: the (a+b)^2 (a+b+1) term overflows int64 for
        # arms with more than ~2e6 pulls.
        a = self._alpha[self._steps, plan].astype(np.float64)
        b = self._beta[self._steps, plan].astype(np.float64)
        mean = a / (a + b)
        sigma = np.sqrt(a * b / ((a + b) ** 2 * (a + b + 1)))
        return float(np.mean(mean)), float(np.mean(sigma / mean))


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    sampled_plan: Plan
    sat: bool
    mode_plan: Plan
    avg_mode_sampled: float
    avg_cv_sampled: float
    avg_mode_best: float
    avg_cv_best: float


Recorder = Callable[[IterationRecord], None]


def search(model: SimulationModel, phi: Requirement, budget: int, seed: int,
           recorder: Recorder | None = None, record_every: int = 1) -> BanditStack:
    """Run `budget` iterations of sample / simulate / update.

    Plan sampling and simulation draw from per-iteration child streams of
    `seed`, so recording (and any analysis done in `recorder`) cannot
    perturb the search trajectory.  The recorder fires on every
    `record_every`-th iteration and on the last one.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if record_every < 1:
        raise ValueError("record_every must be at least 1")
    stack = BanditStack(horizon(phi), model.n_actions)
    for t in range(1, budget + 1):
        plan = stack.sample_plan(seeding.stream(seed, seeding.PLAN_SAMPLING, t))
        sat, _ = model.simulate(plan, phi, seeding.stream(seed, seeding.SIMULATION, t))
        stack.record_outcome(plan, sat)
        if recorder is not None and (t % record_every == 0 or t == budget):
            mode = stack.mode_plan()
            avg_mode_sampled, avg_cv_sampled = stack.plan_diagnostics(plan)
            avg_mode_best, avg_cv_best = stack.plan_diagnostics(mode)
            recorder(IterationRecord(t, plan, sat, mode, avg_mode_sampled,
                                     avg_cv_sampled, avg_mode_best, avg_cv_best))
    return stack
