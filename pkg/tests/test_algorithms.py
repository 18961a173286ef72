"""Engine behavior: counters, stop conditions, determinism, strategy agnosticism."""

import numpy as np
import pytest

from momo.algorithms import AlgorithmState, OperatorConfig, StopCondition, check_stop, run_ea, run_pso
from momo.core import pareto_filter
from momo.errors import ConfigurationError
from momo.problems import Evaluator, make_problem
from momo.strategies import ENGINES, make_strategy, strategy_ids

from test_dominance import oracle_dominates


def _rng(seed=42):
    return np.random.Generator(np.random.PCG64(seed))


def _run(sid, problem_id, generations, pop=16, seed=42, **kwargs):
    problem = make_problem(problem_id)
    strategy = make_strategy(sid)
    stop = StopCondition(max_generations=generations)
    if ENGINES[sid] == "pso":
        return run_pso(problem, strategy, pop, stop, _rng(seed), **kwargs)
    return run_ea(problem, strategy, None, pop, stop, _rng(seed), **kwargs)


class TestStopCondition:
    def test_at_least_one_required(self):
        with pytest.raises(ConfigurationError):
            StopCondition()

    def test_generation_limit(self):
        state = AlgorithmState(population=[], archive=[], generation=10)
        assert check_stop(state, StopCondition(max_generations=10))
        assert not check_stop(state, StopCondition(max_generations=11))

    def test_disjunction(self):
        state = AlgorithmState(population=[], archive=[], generation=3)
        cond = StopCondition(max_generations=100, predicate=lambda s: s.generation == 3)
        assert check_stop(state, cond)

    def test_no_condition_met(self):
        state = AlgorithmState(population=[], archive=[], generation=1)
        assert not check_stop(state, StopCondition(max_generations=5))


class TestRunEA:
    def test_zero_generations_returns_evaluated_initials(self):
        state = _run("nsga2", "zdt1", 0)
        assert state.generation == 0
        assert state.evaluations == 16
        assert all(s.evaluated for s in state.population)
        assert state.front()

    def test_evaluation_count_is_exact(self):
        for gens in (1, 3, 7):
            state = _run("nsga2", "zdt1", gens, pop=10)
            assert state.evaluations == 10 * (gens + 1)

    def test_budget_stops_at_generation_boundary(self):
        problem = make_problem("zdt1")
        stop = StopCondition(max_evaluations=45)  # mid-generation for pop 10
        state = run_ea(problem, make_strategy("nsga2"), None, 10, stop, _rng())
        # init 10 + full generations of 10 until the boundary check trips
        assert state.evaluations == 50

    def test_same_seed_identical_fronts(self):
        a = _run("nsga2", "zdt1", 5, seed=7)
        b = _run("nsga2", "zdt1", 5, seed=7)
        Fa = np.vstack([s.objectives for s in a.front()])
        Fb = np.vstack([s.objectives for s in b.front()])
        np.testing.assert_array_equal(Fa, Fb)

    def test_front_is_mutually_nondominated_and_stable(self):
        state = _run("nsga2", "zdt1", 5)
        front = state.front()
        F = [s.objectives for s in front]
        for i, a in enumerate(F):
            for j, b in enumerate(F):
                assert i == j or not oracle_dominates(a, b)
        assert len(pareto_filter(front)) == len(front)

    def test_callbacks_fire_at_frequency_and_final(self):
        seen = []
        _run("nsga2", "zdt1", 6, callbacks=[(2, lambda s, final: seen.append((s.generation, final)))])
        gens = [g for g, _ in seen]
        assert gens == [0, 2, 4, 6, 6]  # multiples of 2 plus the final call
        assert seen[-1] == (6, True)

    def test_population_size_constant(self):
        state = _run("spea2", "zdt1", 4, pop=12)
        assert len(state.population) == 12


class TestRunPSO:
    def test_zero_iterations(self):
        state = _run("smpso", "zdt1", 0)
        assert state.generation == 0 and state.evaluations == 16

    def test_requires_real_encoding(self):
        problem = make_problem("knapsack")
        with pytest.raises(ConfigurationError):
            run_pso(problem, make_strategy("smpso"), 8,
                    StopCondition(max_generations=2), _rng())

    def test_velocity_clamp_holds_every_iteration(self):
        problem = make_problem("zdt1")
        delta = (problem.encoding.ub - problem.encoding.lb) / 2

        def check(state, final):
            for p in state.population:
                assert (np.abs(p.velocity) <= delta + 1e-12).all()

        run_pso(problem, make_strategy("smpso"), 10,
                StopCondition(max_generations=8), _rng(), callbacks=[(1, check)])

    def test_evaluation_count(self):
        state = _run("smpso", "zdt1", 5, pop=10)
        assert state.evaluations == 10 * 6


@pytest.mark.parametrize("sid", strategy_ids())
@pytest.mark.parametrize("problem_id", ["zdt1", "dtlz2-m5"])
def test_engine_is_strategy_agnostic(sid, problem_id):
    # every registry id must drive a 2- and a 5-objective run unchanged
    state = _run(sid, problem_id, 5, pop=12, seed=3)
    assert state.generation == 5
    assert len(state.population) == 12
    assert state.evaluations == 12 * 6
    assert state.front()


def test_operator_encoding_mismatch_rejected():
    problem = make_problem("knapsack")
    ops = OperatorConfig(crossover="sbx", mutation="bit_flip")
    with pytest.raises(ConfigurationError):
        run_ea(problem, make_strategy("nsga2"), ops, 8,
               StopCondition(max_generations=1), _rng())


def test_configuration_errors_surface_before_evaluation():
    problem = make_problem("zdt1")
    evaluator = Evaluator(problem)
    ops = OperatorConfig(crossover_prob=1.5)
    with pytest.raises(ConfigurationError):
        run_ea(problem, make_strategy("nsga2"), ops, 8,
               StopCondition(max_generations=1), _rng(), evaluator=evaluator)
    assert evaluator.budget.evaluations_used == 0
