import numpy as np
import pytest

from banditstack.planner import BanditStack, IterationRecord, search
from banditstack.requirements import parse
from banditstack.simworld import GridWorld, GridWorldModel
from oracles import enumerate_deterministic_plans


def fresh_stack(horizon=10, n_actions=4):
    return BanditStack(horizon, n_actions)


class CountingModel:
    """Wraps a model and counts simulate calls."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    @property
    def n_actions(self):
        return self.inner.n_actions

    def simulate(self, plan, phi, rng):
        self.calls += 1
        return self.inner.simulate(plan, phi, rng)


class TestBanditStack:
    def test_starts_uninformed(self):
        stack = fresh_stack()
        for step in range(stack.horizon):
            for action in range(stack.n_actions):
                arm = stack.arm(step, action)
                assert (arm.successes, arm.failures) == (0, 0)

    def test_sample_plan_shape(self):
        stack = fresh_stack()
        plan = stack.sample_plan(np.random.default_rng(0))
        assert len(plan) == 10
        assert all(0 <= a < 4 for a in plan)

    def test_sample_plan_uniform_when_fresh(self):
        stack = fresh_stack(horizon=10, n_actions=4)
        counts = np.zeros((10, 4))
        n = 10_000
        rng_seeds = range(n)
        for s in rng_seeds:
            plan = stack.sample_plan(np.random.default_rng(s))
            for i, a in enumerate(plan):
                counts[i, a] += 1
        freq = counts / n
        assert np.all(np.abs(freq - 0.25) <= 0.02)

    def test_sample_plan_prefers_dominant_arms(self):
        stack = fresh_stack(horizon=10, n_actions=4)
        # Make action 2 overwhelmingly successful at every step.
        for _ in range(1000):
            stack.record_outcome((2,) * 10, True)
        for _ in range(1000):
            for other in (0, 1, 3):
                stack.record_outcome((other,) * 10, False)
        hits = sum(stack.sample_plan(np.random.default_rng(s)) == (2,) * 10
                   for s in range(2000))
        assert hits / 2000 >= 0.99

    def test_trivial_single_choice(self):
        stack = BanditStack(1, 1)
        assert stack.sample_plan(np.random.default_rng(0)) == (0,)

    def test_record_outcome_success(self):
        stack = BanditStack(2, 4)
        stack.record_outcome((0, 1), True)
        assert stack.arm(0, 0) == stack.arm(1, 1)
        assert stack.arm(0, 0).successes == 1
        untouched = [(s, a) for s in range(2) for a in range(4)
                     if (s, a) not in ((0, 0), (1, 1))]
        for s, a in untouched:
            assert stack.arm(s, a).successes + stack.arm(s, a).failures == 0

    def test_record_outcome_failure(self):
        stack = BanditStack(2, 4)
        stack.record_outcome((0, 1), False)
        assert stack.arm(0, 0).failures == 1
        assert stack.arm(1, 1).failures == 1
        assert stack.arm(0, 0).successes == 0

    def test_record_outcome_length_checked(self):
        stack = BanditStack(3, 4)
        with pytest.raises(ValueError, match="plan length"):
            stack.record_outcome((0, 1), True)

    def test_per_step_count_conservation(self):
        stack = fresh_stack(horizon=5)
        rng = np.random.default_rng(3)
        for n in range(1, 200):
            plan = stack.sample_plan(rng)
            stack.record_outcome(plan, bool(rng.random() < 0.5))
            for step in range(stack.horizon):
                total = sum(arm.successes + arm.failures
                            for arm in stack.arms_at(step))
                assert total == n
        assert stack.iterations == 199

    def test_mode_plan_tie_breaks_low(self):
        assert fresh_stack().mode_plan() == (0,) * 10

    def test_mode_plan_picks_highest_mean(self):
        stack = BanditStack(1, 4)
        for _ in range(5):
            stack.record_outcome((0,), True)
        for _ in range(5):
            stack.record_outcome((1,), False)
        # Arms: (5,0), (0,5), (0,0), (0,0) -> means 6/7, 1/7, 1/2, 1/2.
        assert stack.mode_plan() == (0,)

    def test_mode_plan_stable(self):
        stack = fresh_stack()
        rng = np.random.default_rng(8)
        for _ in range(50):
            stack.record_outcome(stack.sample_plan(rng), bool(rng.random() < 0.3))
        assert stack.mode_plan() == stack.mode_plan()

    def test_mode_plan_invariant_under_non_argmax_updates(self):
        stack = BanditStack(1, 3)
        for _ in range(10):
            stack.record_outcome((0,), True)
        before = stack.mode_plan()
        stack.record_outcome((2,), False)  # cannot overtake arm 0
        assert stack.mode_plan() == before


class TestSearch:
    def setup_method(self):
        self.world = GridWorld(10, 10, frozenset(), (0, 0), 0.0)
        self.phi = parse("G<=10 (collisions <= 2)")

    def test_budget_one_runs_one_simulation(self):
        model = CountingModel(GridWorldModel(self.world))
        stack = search(model, self.phi, budget=1, seed=0)
        assert model.calls == 1
        assert stack.iterations == 1
        for step in range(stack.horizon):
            assert sum(a.successes + a.failures for a in stack.arms_at(step)) == 1

    def test_budget_validated(self):
        model = GridWorldModel(self.world)
        with pytest.raises(ValueError, match="budget"):
            search(model, self.phi, budget=0, seed=0)

    def test_all_satisfying_world_never_records_failures(self):
        model = GridWorldModel(self.world)
        stack = search(model, self.phi, budget=300, seed=1)
        for step in range(stack.horizon):
            assert all(arm.failures == 0 for arm in stack.arms_at(step))

    def test_search_is_deterministic(self):
        world = GridWorld(10, 10, frozenset({(1, 0), (3, 3), (0, 2)}), (0, 0), 0.3)
        model = GridWorldModel(world)
        records_a: list[IterationRecord] = []
        records_b: list[IterationRecord] = []
        search(model, self.phi, budget=150, seed=5, recorder=records_a.append)
        search(model, self.phi, budget=150, seed=5, recorder=records_b.append)
        assert records_a == records_b

    def test_recorder_thinning(self):
        model = GridWorldModel(self.world)
        records = []
        search(model, self.phi, budget=105, seed=0,
               recorder=records.append, record_every=10)
        assert [r.iteration for r in records] == [10, 20, 30, 40, 50, 60, 70,
                                                  80, 90, 100, 105]

    def test_recorder_does_not_perturb_search(self):
        world = GridWorld(10, 10, frozenset({(2, 0), (0, 3)}), (0, 0), 0.4)
        model = GridWorldModel(world)
        silent = search(model, self.phi, budget=120, seed=9)
        noisy = search(model, self.phi, budget=120, seed=9,
                       recorder=lambda rec: rec.mode_plan, record_every=7)
        assert silent.mode_plan() == noisy.mode_plan()
        for step in range(silent.horizon):
            assert silent.arms_at(step) == noisy.arms_at(step)

    def test_finds_unique_satisfying_plan(self):
        # 5x1 corridor, deterministic: only right-right-right-right reaches
        # x=4 within 4 steps.  Brute force over all 256 plans confirms the
        # plan is unique, then the search must converge on it.
        world = GridWorld(5, 1, frozenset(), (0, 0), 0.0)
        phi = parse("F<=4 (x >= 4)")
        verdicts = enumerate_deterministic_plans(world, phi, length=4)
        satisfying = [p for p, sat in verdicts.items() if sat]
        assert satisfying == [(3, 3, 3, 3)]

        model = GridWorldModel(world)
        wins = 0
        for seed in range(20):
            stack = search(model, phi, budget=2000, seed=seed)
            wins += stack.mode_plan() == (3, 3, 3, 3)
        assert wins >= 18

    def test_diagnostics_ranges(self):
        world = GridWorld(10, 10, frozenset({(1, 0)}), (0, 0), 0.5)
        model = GridWorldModel(world)
        records = []
        search(model, self.phi, budget=200, seed=2, recorder=records.append)
        for rec in records:
            for value in (rec.avg_mode_sampled, rec.avg_mode_best):
                assert 0.0 < value < 1.0
            for value in (rec.avg_cv_sampled, rec.avg_cv_best):
                assert value >= 0.0


class TestPlanDiagnostics:
    def test_fresh_stack_diagnostics(self):
        stack = fresh_stack()
        avg_mode, avg_cv = stack.plan_diagnostics((0,) * 10)
        assert avg_mode == pytest.approx(0.5)
        assert avg_cv == pytest.approx(0.5773502691896257)

    def test_confident_arms(self):
        stack = BanditStack(3, 2)
        for _ in range(99):
            stack.record_outcome((1, 1, 1), True)
        avg_mode, avg_cv = stack.plan_diagnostics((1, 1, 1))
        assert avg_mode == pytest.approx(100 / 101)
        assert avg_cv < 0.05

    def test_single_step_equals_arm_stats(self):
        stack = BanditStack(1, 4)
        for _ in range(4):
            stack.record_outcome((2,), True)
        stack.record_outcome((2,), False)
        arm = stack.arm(0, 2)
        avg_mode, avg_cv = stack.plan_diagnostics((2,))
        assert avg_mode == pytest.approx(arm.posterior_mean)
        assert avg_cv == pytest.approx(arm.coefficient_of_variation)

    def test_length_checked(self):
        with pytest.raises(ValueError, match="plan length"):
            fresh_stack().plan_diagnostics((0,))
