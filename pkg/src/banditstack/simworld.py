"""Stochastic grid-world benchmark and the simulation-model contract.

The world is a bounded grid with static obstacles and a noisy actuator:
each action independently fails with probability `p_fail`, in which case
the inverse movement is executed instead (a failed "up" moves down).  A
move into an obstacle is blocked and counts as one collision; a move off
the grid is blocked silently (walls are not obstacles).

A simulation runs a fixed action sequence from the start cell and reports
whether the resulting trace satisfies a bounded temporal requirement --
one Bernoulli experiment per run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from . import seeding
from .requirements import Requirement, evaluate, horizon

ACTIONS = ("up", "down", "left", "right")
# Indexed by action: movement delta and the index of the inverse action.
DELTAS = ((0, 1), (0, -1), (-1, 0), (1, 0))
INVERSE = (1, 0, 3, 2)

RATIO_OF_ALL_CELLS = "all-cells"
RATIO_OBSTACLES_TO_FREE = "obstacles-to-free"


class DegenerateWorldError(ValueError):
    """World generation left the agent with no free adjacent cell."""


@dataclass(frozen=True)
class GridWorld:
    width: int
    height: int
    obstacles: frozenset[tuple[int, int]]
    start: tuple[int, int] = (0, 0)
    p_fail: float = 0.0

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be at least 1")
        if not self.in_bounds(self.start):
            raise ValueError("start cell out of bounds")
        if self.start in self.obstacles:
            raise ValueError("start cell is an obstacle")
        if not 0.0 <= self.p_fail <= 1.0:
            raise ValueError("p_fail must be in [0, 1]")
        for cell in self.obstacles:
            if not self.in_bounds(cell):
                raise ValueError(f"obstacle {cell} out of bounds")

    def in_bounds(self, cell: tuple[int, int]) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height


@dataclass(frozen=True)
class AgentState:
    position: tuple[int, int]
    collisions: int = 0


def obstacle_count(width: int, height: int, ratio: float,
                   ratio_mode: str = RATIO_OF_ALL_CELLS) -> int:
    """Obstacle count for a ratio, under either reading of the ratio.

    `all-cells`: obstacles are `ratio` of all cells (0.2 on 10x10 -> 20).
    `obstacles-to-free`: obstacles:free odds are `ratio` (0.2 -> 17).
    """
    total = width * height
    if ratio_mode == RATIO_OF_ALL_CELLS:
        return round(ratio * total)
    if ratio_mode == RATIO_OBSTACLES_TO_FREE:
        return round(total * ratio / (1.0 + ratio))
    raise ValueError(f"unknown ratio mode {ratio_mode!r}")


def generate_world(seed: int, width: int = 10, height: int = 10,
                   obstacle_ratio: float = 0.2,
                   p_fail: float | str = "random",
                   ratio_mode: str = RATIO_OF_ALL_CELLS,
                   start: tuple[int, int] = (0, 0)) -> GridWorld:
    """Generate a world deterministically from `seed`.

    Obstacle cells are drawn without replacement from all cells except the
    start.  With `p_fail="random"` the failure probability is drawn once,
    uniformly from [0, 1], after the obstacles.
    """
    if not 0.0 <= obstacle_ratio < 1.0:
        raise ValueError("obstacle_ratio must be in [0, 1)")
    rng = seeding.stream(seed, seeding.WORLD)
    count = obstacle_count(width, height, obstacle_ratio, ratio_mode)
    candidates = [(x, y) for y in range(height) for x in range(width)
                  if (x, y) != start]
    if count > len(candidates):
        raise DegenerateWorldError(
            f"cannot place {count} obstacles on {width}x{height} grid")
    chosen = rng.choice(len(candidates), size=count, replace=False)
    obstacles = frozenset(candidates[i] for i in chosen)
    if p_fail == "random":
        p = float(rng.uniform())
    else:
        p = float(p_fail)
    world = GridWorld(width, height, obstacles, start, p)
    if not _has_free_neighbor(world, start):
        raise DegenerateWorldError("no free cell adjacent to start")
    return world


def _has_free_neighbor(world: GridWorld, cell: tuple[int, int]) -> bool:
    for dx, dy in DELTAS:
        nb = (cell[0] + dx, cell[1] + dy)
        if world.in_bounds(nb) and nb not in world.obstacles:
            return True
    return False


def step(world: GridWorld, state: AgentState, action: int,
         rng: np.random.Generator) -> AgentState:
    """Execute one action; consumes exactly one draw from `rng`.

    With probability p_fail the inverse action is executed instead.  The
    (possibly inverted) move is then resolved: obstacle target blocks the
    move and adds a collision, out-of-bounds target blocks it silently.
    """
    if rng.random() < world.p_fail:
        action = INVERSE[action]
    x, y = state.position
    dx, dy = DELTAS[action]
    nx, ny = x + dx, y + dy
    if not world.in_bounds((nx, ny)):
        return state
    if (nx, ny) in world.obstacles:
        return AgentState(state.position, state.collisions + 1)
    return AgentState((nx, ny), state.collisions)


def simulate(world: GridWorld, plan: Sequence[int], phi: Requirement,
             rng: np.random.Generator) -> tuple[bool, list[dict[str, int]]]:
    """Run one episode of `plan` from the start cell.

    Returns the satisfaction verdict together with the trace of h+1
    observations (`x`, `y`, `collisions`).  Consumes exactly len(plan)
    draws from `rng` (one failure check per action).
    """
    h = horizon(phi)
    if len(plan) != h:
        raise ValueError(
            f"plan/horizon mismatch: plan has {len(plan)} actions, "
            f"formula requires {h}")
    u = rng.random(h)
    x, y = world.start
    collisions = 0
    trace = [{"x": x, "y": y, "collisions": 0}]
    obstacles = world.obstacles
    width, height = world.width, world.height
    p_fail = world.p_fail
    for j, action in enumerate(plan):
        if u[j] < p_fail:
            action = INVERSE[action]
        dx, dy = DELTAS[action]
        nx, ny = x + dx, y + dy
        if 0 <= nx < width and 0 <= ny < height:
            if (nx, ny) in obstacles:
                collisions += 1
            else:
                x, y = nx, ny
        trace.append({"x": x, "y": y, "collisions": collisions})
    return evaluate(phi, trace), trace


class SimulationModel(Protocol):
    """One Bernoulli satisfaction experiment per call, plus the trace."""

    @property
    def n_actions(self) -> int: ...

    def simulate(self, plan: Sequence[int], phi: Requirement,
                 rng: np.random.Generator) -> tuple[bool, list[dict[str, int]]]: ...


@dataclass(frozen=True)
class GridWorldModel:
    """Binds a grid world (including its start state) to the model contract."""

    world: GridWorld

    @property
    def n_actions(self) -> int:
        return len(ACTIONS)

    def simulate(self, plan, phi, rng):
        return simulate(self.world, plan, phi, rng)


def world_to_text(world: GridWorld) -> str:
    """Serialize: `pfail=` header, then rows top-down ('.', '#', 'S')."""
    lines = [f"pfail={world.p_fail!r}"]
    for y in range(world.height - 1, -1, -1):
        row = []
        for x in range(world.width):
            if (x, y) == world.start:
                row.append("S")
            elif (x, y) in world.obstacles:
                row.append("#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def world_from_text(text: str) -> GridWorld:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("pfail="):
        raise ValueError("missing pfail= header")
    p_fail = float(lines[0].removeprefix("pfail="))
    rows = lines[1:]
    if not rows:
        raise ValueError("empty grid")
    height = len(rows)
    width = len(rows[0])
    obstacles = set()
    start = None
    for row_index, row in enumerate(rows):
        if len(row) != width:
            raise ValueError("ragged grid rows")
        y = height - 1 - row_index
        for x, ch in enumerate(row):
            if ch == "#":
                obstacles.add((x, y))
            elif ch == "S":
                start = (x, y)
            elif ch != ".":
                raise ValueError(f"unknown cell character {ch!r}")
    if start is None:
        raise ValueError("grid has no start cell")
    return GridWorld(width, height, frozenset(obstacles), start, p_fail)
