"""Open-loop plan synthesis for bounded temporal requirements.

A fixed-length action sequence is searched by stacking one Beta-Bernoulli
bandit per plan step and driving per-step action selection with Thompson
sampling against boolean simulation outcomes.
"""

from .bandit import BetaArm, select_by_sampling
from .evaluation import (ExperimentRecord, SatEstimate, estimate_sat_prob,
                         plan_diagnostics, random_search)
from .planner import BanditStack, IterationRecord, Plan, search
from .requirements import (Always, And, Atom, Eventually, Not, Or, ParseError,
                           Requirement, Trace, evaluate, horizon, parse, to_text)
from .simworld import (ACTIONS, AgentState, DegenerateWorldError, GridWorld,
                       GridWorldModel, SimulationModel, generate_world,
                       obstacle_count, simulate, step, world_from_text,
                       world_to_text)

__all__ = [
    "ACTIONS", "AgentState", "Always", "And", "Atom", "BanditStack",
    "BetaArm", "DegenerateWorldError", "Eventually", "ExperimentRecord",
    "GridWorld", "GridWorldModel", "IterationRecord", "Not", "Or",
    "ParseError", "Plan", "Requirement", "SatEstimate", "SimulationModel",
    "Trace", "estimate_sat_prob", "evaluate", "generate_world", "horizon",
    "obstacle_count", "parse", "plan_diagnostics", "random_search", "search",
    "select_by_sampling", "simulate", "step", "to_text", "world_from_text",
    "world_to_text",
]

__version__ = "0.1.0"
