"""Beta-Bernoulli bandit arms and Thompson sampling over a set of arms.

An arm counts Bernoulli successes and failures; its belief about the
underlying success probability is the posterior Beta(s+1, f+1), i.e. a
uniform Beta(1, 1) prior updated by conjugacy.  Thompson sampling draws one
value from each arm's posterior and plays the argmax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class BetaArm:
    """Success/failure counts backing a Beta(successes+1, failures+1) posterior."""

    successes: int = 0
    failures: int = 0

    def __post_init__(self) -> None:
        if self.successes < 0 or self.failures < 0:
            raise ValueError("counts must be non-negative")

    @property
    def alpha(self) -> int:
        return self.successes + 1

    @property
    def beta(self) -> int:
        return self.failures + 1

    def sample(self, rng: np.random.Generator) -> float:
        """Draw once from the posterior.

        Delegates to numpy's exact Beta sampler (gamma-variate ratio under
        the hood), so identical generator state yields an identical draw.
        """
        return float(rng.beta(self.alpha, self.beta))

    def update(self, success: bool) -> "BetaArm":
        """Return the arm after observing one Bernoulli outcome."""
        if success:
            return BetaArm(self.successes + 1, self.failures)
        return BetaArm(self.successes, self.failures + 1)

    @property
    def posterior_mean(self) -> float:
        """Posterior mean (s+1)/(s+f+2); the plan-selection statistic."""
        return (self.successes + 1) / (self.successes + self.failures + 2)

    @property
    def posterior_mode(self) -> float:
        """True density mode s/(s+f); 0.5 for the fresh uniform posterior.

        Diagnostic only: plan selection uses `posterior_mean`.
        """
        n = self.successes + self.failures
        if n == 0:
            return 0.5
        return self.successes / n

    @property
    def coefficient_of_variation(self) -> float:
        """Posterior sigma/mu; shrinks as evidence accumulates."""
        a, b = self.alpha, self.beta
        var = a * b / ((a + b) ** 2 * (a + b + 1))
        return math.sqrt(var) / (a / (a + b))


def select_by_sampling(arms: Sequence[BetaArm], rng: np.random.Generator) -> int:
    """Thompson step: sample every arm's posterior, return the argmax index.

    Ties (possible in finite float precision) break toward the lowest index.
    """
    if not arms:
        raise ValueError("no arms")
    samples = [arm.sample(rng) for arm in arms]
    return int(np.argmax(samples))
