"""Derivation of independent random streams from one master seed.

Every randomized activity in an experiment (world generation, per-iteration
plan sampling, per-iteration simulation, ground-truth estimation, the
random-search baseline) draws from its own labeled child stream.  Adding or
removing instrumentation therefore never perturbs the search trajectory.
"""

from __future__ import annotations

import numpy as np

# Stream labels.  Fixed constants: changing them changes every derived stream.
WORLD = 0
PLAN_SAMPLING = 1
SIMULATION = 2
ESTIMATE_SAMPLED = 3
ESTIMATE_MODE = 4
BASELINE = 5
SWEEP = 6


def stream(seed: int, *path: int) -> np.random.Generator:
    """Return a generator for the child stream identified by `path`.

    `seed` must be a non-negative integer.  The same (seed, path) always
    yields an identical stream; distinct paths yield independent streams.
    """
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([seed, *path]))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse a labeled child stream to a plain integer seed."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return int(np.random.SeedSequence([seed, *path]).generate_state(1)[0])
