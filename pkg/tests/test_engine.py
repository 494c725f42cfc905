import pytest

from hypothesis import given
from hypothesis import strategies as st

from relaxlab.adversary import hamiltonian_path_instance
from relaxlab.distance import INT64_MAX, UNREACHABLE
from relaxlab.engine import (
    NEVER,
    alternation_count,
    execute_schedule,
    initial_distances,
    iter_distances,
    relax_step,
    tree_alternation_count,
    yen_rounds_needed,
)
from relaxlab.errors import DistanceOverflowError, ScheduleMismatchError
from relaxlab.graph import Digraph, Instance, WeightAssignment, complete_digraph
from relaxlab.oracle import oracle_distances
from relaxlab.schedule import RelaxationSchedule, RoundRobin, Yen

from .strategies import instances


@pytest.fixture
def chain():
    g = Digraph(3, [(0, 1), (1, 2)])
    return Instance(g, 0, WeightAssignment([0, 0]))


def test_reduced_cost_counts_until_last_correction(chain):
    result = execute_schedule(chain, RelaxationSchedule([1, 0, 1], chain.digraph))
    assert result.correct_at_step == (0, 2, 3)
    assert result.reduced_cost == 3
    assert result.is_correct


def test_trailing_steps_are_ignored(chain):
    result = execute_schedule(
        chain, RelaxationSchedule([0, 1, 0, 1, 0], chain.digraph)
    )
    assert result.reduced_cost == 2


def test_incomplete_schedule_never_finishes(chain):
    result = execute_schedule(chain, RelaxationSchedule([1, 0], chain.digraph))
    assert result.correct_at_step[2] is NEVER
    assert result.reduced_cost is NEVER
    assert not result.is_correct
    assert result.final_distances == (0, 0, UNREACHABLE)


def test_trivial_instances_cost_nothing():
    single = Instance(Digraph(1, []), 0, WeightAssignment([]))
    assert execute_schedule(single, RelaxationSchedule([], single.digraph)).reduced_cost == 0
    isolated = Instance(Digraph(2, []), 0, WeightAssignment([]))
    result = execute_schedule(isolated, RelaxationSchedule([], isolated.digraph))
    assert result.reduced_cost == 0
    assert result.final_distances == (0, UNREACHABLE)


def test_overflow_is_reported():
    g = Digraph(3, [(0, 1), (1, 2)])
    instance = Instance(g, 0, WeightAssignment([INT64_MAX, 1]))
    with pytest.raises(DistanceOverflowError):
        execute_schedule(instance, RelaxationSchedule([0, 1], g))


def test_schedule_for_another_graph_is_rejected(chain):
    other = Digraph(3, [(1, 2), (0, 1)])
    with pytest.raises(ScheduleMismatchError):
        execute_schedule(chain, RelaxationSchedule([0], other))


def test_relax_step_copies(chain):
    before = [0, UNREACHABLE, UNREACHABLE]
    after = relax_step(before, 0, chain)
    assert before == [0, UNREACHABLE, UNREACHABLE]
    assert after == [0, 0, UNREACHABLE]
    with pytest.raises(ScheduleMismatchError):
        relax_step(before, 2, chain)


@given(instances())
def test_bellman_ford_rounds_are_correct(instance):
    schedule = RoundRobin()(instance.digraph)
    oracle = oracle_distances(instance)
    result = execute_schedule(instance, schedule)
    assert result.is_correct
    assert list(result.final_distances) == oracle
    assert result.reduced_cost <= len(schedule)


@given(instances())
def test_step_trace_matches_execution(instance):
    schedule = RoundRobin()(instance.digraph)
    trace = list(iter_distances(instance, schedule))
    assert len(trace) == len(schedule)
    result = execute_schedule(instance, schedule)
    if trace:
        assert trace[-1] == result.final_distances
    cost = result.reduced_cost
    if cost:
        assert list(trace[cost - 1]) == oracle_distances(instance)
        if cost > 1:
            assert list(trace[cost - 2]) != oracle_distances(instance)


def test_alternation_count():
    identity = list(range(5))
    assert alternation_count([0, 1, 2, 3, 4], identity) == 1
    assert alternation_count([2, 0, 4, 1, 3], identity) == 4
    assert alternation_count([3], identity) == 0


def test_backward_start_costs_an_extra_round():
    path = [2, 0, 4, 1, 3]
    identity = list(range(5))
    assert yen_rounds_needed(path, identity) == 3
    assert yen_rounds_needed([0, 4, 1, 3, 2], identity) == 2
    instance = hamiltonian_path_instance(5, path)
    g = instance.digraph
    assert execute_schedule(instance, Yen(rounds=2)(g)).reduced_cost is NEVER
    result = execute_schedule(instance, Yen(rounds=3)(g))
    assert result.is_correct
    assert result.reduced_cost > 2 * g.edge_count


def test_tree_alternation_count():
    # 0 -> 2 -> 1 and 0 -> 3 under the identity order
    parents = [None, 2, 0, 0]
    assert tree_alternation_count(parents, 0, [0, 1, 2, 3]) == 2
    assert tree_alternation_count([None], 0, [0]) == 0


def test_yen_needs_no_more_rounds_than_the_path_requires():
    n = 6
    path = [0, 5, 1, 4, 2, 3]
    instance = hamiltonian_path_instance(n, path)
    rounds = yen_rounds_needed(path, list(range(n)))
    schedule = Yen(rounds=rounds)(complete_digraph(n))
    assert execute_schedule(instance, schedule).is_correct


@st.composite
def runs(draw, max_steps=30):
    """An instance with an arbitrary sequence of steps over its edges"""
    instance = draw(instances())
    m = instance.digraph.edge_count
    steps = draw(st.lists(st.integers(0, m - 1), max_size=max_steps)) if m else []
    return instance, RelaxationSchedule(steps, instance.digraph)


@st.composite
def finishing_runs(draw):
    """Arbitrary steps followed by full Bellman-Ford rounds"""
    instance, schedule = draw(runs())
    return instance, schedule.concat(RoundRobin()(instance.digraph))


def _at_least(d, floor):
    if d is UNREACHABLE:
        return True
    return floor is not UNREACHABLE and d >= floor


@given(runs())
def test_distances_never_increase_or_undershoot(run):
    instance, schedule = run
    oracle = oracle_distances(instance)
    previous = initial_distances(instance)
    for distances in iter_distances(instance, schedule):
        for v, d in enumerate(distances):
            assert _at_least(previous[v], d)
            assert _at_least(d, oracle[v])
        previous = distances


@given(runs(), st.data())
def test_prefix_matches_truncated_trace(run, data):
    instance, schedule = run
    trace = list(iter_distances(instance, schedule))
    k = data.draw(st.integers(0, len(schedule)))
    result = execute_schedule(instance, schedule.prefix(k))
    expected = trace[k - 1] if k else tuple(initial_distances(instance))
    assert result.final_distances == expected


@given(finishing_runs(), st.data())
def test_extra_steps_never_delay_completion(run, data):
    instance, schedule = run
    m = instance.digraph.edge_count
    if not m:
        return
    cost = execute_schedule(instance, schedule).reduced_cost
    steps = schedule.steps.tolist()
    j = data.draw(st.integers(0, len(steps)))
    edge = data.draw(st.integers(0, m - 1))
    inserted = RelaxationSchedule(steps[:j] + [edge] + steps[j:], instance.digraph)
    new_cost = execute_schedule(instance, inserted).reduced_cost
    if j >= cost:
        assert new_cost == cost
    else:
        assert new_cost <= cost + 1

    before = list(iter_distances(instance, schedule.prefix(j)))
    distances = list(before[-1]) if before else initial_distances(instance)
    if relax_step(distances, edge, instance) == distances:
        assert new_cost == (cost + 1 if j < cost else cost)


@given(finishing_runs(), st.data())
def test_appended_steps_leave_cost_unchanged(run, data):
    instance, schedule = run
    m = instance.digraph.edge_count
    suffix = data.draw(st.lists(st.integers(0, m - 1), max_size=10)) if m else []
    cost = execute_schedule(instance, schedule).reduced_cost
    longer = schedule.concat(RelaxationSchedule(suffix, instance.digraph))
    assert execute_schedule(instance, longer).reduced_cost == cost
