import pytest

from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from relaxlab.adversary import (
    deterministic_floor,
    greedy_adversary_complete,
    greedy_gap_floor,
    hamiltonian_path_instance,
    increment_floor,
    randomized_floor,
    sample_random_path_instance,
)
from relaxlab.engine import execute_schedule
from relaxlab.errors import (
    InvalidParameterError,
    ScheduleMismatchError,
    ScheduleNotCorrectError,
)
from relaxlab.graph import complete_digraph
from relaxlab.oracle import oracle_distances
from relaxlab.schedule import RandomizedYen, RoundRobin, Yen, empty_schedule


def test_hamiltonian_path_instance():
    instance = hamiltonian_path_instance(4, [1, 0, 3, 2])
    assert instance.source == 1
    assert sorted(instance.weights).count(0) == 3
    g = instance.digraph
    for u, v in ((1, 0), (0, 3), (3, 2)):
        assert instance.weights[g.edge_index(u, v)] == 0
    assert oracle_distances(instance) == [0, 0, 0, 0]
    with pytest.raises(InvalidParameterError):
        hamiltonian_path_instance(4, [0, 1, 1, 2])


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize(
    "generator",
    [RoundRobin(), Yen(), RandomizedYen(seed=5)],
    ids=["round-robin", "yen", "randomized-yen"],
)
def test_adversary_forces_cubic_cost(n, generator):
    schedule = generator(complete_digraph(n))
    result = greedy_adversary_complete(n, 0, schedule)
    assert sorted(result.path) == list(range(n))
    assert result.path[0] == 0
    assert len(result.milestones) == (n - 1) // 2

    execution = execute_schedule(result.instance, schedule)
    assert execution.reduced_cost >= deterministic_floor(n)

    previous = 0
    for k, position in enumerate(result.milestones):
        i = 2 * (k + 1)
        assert position - previous >= greedy_gap_floor(n, i)
        assert execution.correct_at_step[result.path[i]] == position
        previous = position


def test_adversary_respects_source():
    schedule = RoundRobin()(complete_digraph(5))
    result = greedy_adversary_complete(5, 3, schedule)
    assert result.path[0] == 3
    assert result.instance.source == 3


def test_adversary_is_deterministic():
    schedule = Yen()(complete_digraph(7))
    assert greedy_adversary_complete(7, 0, schedule) == greedy_adversary_complete(
        7, 0, schedule
    )


def test_incorrect_schedule_yields_witness():
    g = complete_digraph(4)
    with pytest.raises(ScheduleNotCorrectError) as info:
        greedy_adversary_complete(4, 0, RoundRobin(rounds=1)(g))
    witness = info.value.instance
    assert sorted(info.value.path) == list(range(4))
    assert not execute_schedule(witness, RoundRobin(rounds=1)(g)).is_correct

    with pytest.raises(ScheduleNotCorrectError):
        greedy_adversary_complete(4, 0, empty_schedule(g))


def test_adversary_rejects_foreign_schedule():
    schedule = RoundRobin()(complete_digraph(4))
    with pytest.raises(ScheduleMismatchError):
        greedy_adversary_complete(5, 0, schedule)
    with pytest.raises(InvalidParameterError):
        greedy_adversary_complete(4, 4, schedule)


def test_floors():
    assert deterministic_floor(3) == 4
    assert deterministic_floor(10) == 165
    assert greedy_gap_floor(8, 2) == 49
    assert increment_floor(3, 0) == 1
    assert increment_floor(8, 0) == 21
    assert increment_floor(8, 6) == 0
    assert randomized_floor(8) == 34
    with pytest.raises(InvalidParameterError):
        increment_floor(8, 3)
    with pytest.raises(InvalidParameterError):
        increment_floor(8, 10)


@settings(max_examples=50)
@given(st.integers(1, 9), st.integers(0, 2 ** 32), st.data())
def test_random_path_sample(n, seed, data):
    source = data.draw(st.integers(0, n - 1))
    instance, path = sample_random_path_instance(n, source, seed)
    again, same_path = sample_random_path_instance(n, source, seed)
    assert instance == again and path == same_path
    assert path[0] == source
    assert sorted(path) == list(range(n))
    assert oracle_distances(instance) == [0] * n


def test_random_path_is_uniform():
    counts = [0] * 4
    for seed in range(2000):
        _, path = sample_random_path_instance(5, 0, seed)
        counts[path[1] - 1] += 1
    assert stats.chisquare(counts).pvalue > 1e-3


def test_every_path_is_equally_likely():
    counts = {}
    for seed in range(10 ** 4):
        _, path = sample_random_path_instance(4, 0, seed)
        counts[tuple(path)] = counts.get(tuple(path), 0) + 1
    assert len(counts) == 6
    assert stats.chisquare(list(counts.values())).pvalue > 1e-3
