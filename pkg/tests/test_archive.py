"""Archive invariants under arbitrary insertion sequences."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_solutions
from momo.core import Archive

from test_dominance import oracle_dominates


def _mutually_nondominated(members):
    F = [s.objectives for s in members]
    for i, a in enumerate(F):
        for j, b in enumerate(F):
            if i != j and oracle_dominates(a, b):
                return False
    return True


@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=60))
@settings(max_examples=100, deadline=None)
def test_insertion_keeps_mutual_nondomination(points):
    archive = Archive()
    for i, p in enumerate(points):
        sol = make_solutions([list(map(float, p))], genotypes=[np.array([float(i)])])[0]
        archive.insert(sol)
        assert _mutually_nondominated(archive.members)


def test_capacity_respected(rng):
    archive = Archive(capacity=5)
    F = np.column_stack([np.linspace(0, 1, 30), np.linspace(1, 0, 30)])
    for sol in make_solutions(F, genotypes=rng.random((30, 2))):
        archive.insert(sol)
        assert len(archive) <= 5
    assert len(archive) == 5


def test_infeasible_rejected_when_feasible_member_exists():
    archive = Archive()
    feasible, infeasible = make_solutions([[5.0, 5.0], [0.0, 0.0]], degrees=[0.0, 2.0])
    assert archive.insert(feasible)
    assert not archive.insert(infeasible)
    assert archive.members == [feasible]


def test_feasible_insert_evicts_infeasible_members():
    archive = Archive()
    infeasible, feasible = make_solutions([[0.0, 0.0], [9.0, 9.0]], degrees=[2.0, 0.0])
    assert archive.insert(infeasible)
    assert archive.insert(feasible)
    assert archive.members == [feasible]


def test_all_infeasible_keeps_least_violating():
    archive = Archive()
    worse, better = make_solutions([[0.0, 0.0], [1.0, 1.0]], degrees=[3.0, 1.0])
    archive.insert(worse)
    archive.insert(better)
    assert archive.members == [better]


def test_dominated_candidate_rejected():
    archive = Archive()
    good, bad = make_solutions([[0.0, 0.0], [1.0, 1.0]])
    assert archive.insert(good)
    assert not archive.insert(bad)


def test_batch_update_matches_sequential_semantics(rng):
    F = rng.integers(0, 6, size=(40, 3)).astype(float)
    sols = make_solutions(F, genotypes=rng.random((40, 2)))
    a1 = Archive()
    for s in sols:
        a1.insert(s)
    a2 = Archive()
    a2.update_batch(sols)
    assert {tuple(s.objectives) for s in a1.members} == {tuple(s.objectives) for s in a2.members}
    assert _mutually_nondominated(a2.members)
