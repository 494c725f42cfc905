from fractions import Fraction

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from relaxlab.engine import execute_schedule
from relaxlab.errors import InfeasibleBudgetError, InvalidParameterError
from relaxlab.graph import WeightAssignment
from relaxlab.hard import (
    CompleteBipartiteRegime,
    DenseClosRegime,
    assemble_hard_graph,
    biregular_digraph,
    closure_reduced_cost,
    sample_hard_instance,
    sparse_floor,
)
from relaxlab.oracle import oracle_distances
from relaxlab.schedule import RoundRobin


@pytest.fixture(scope="module")
def small():
    return assemble_hard_graph(10, 30, CompleteBipartiteRegime(), capacity=4, degree=2)


@pytest.fixture(scope="module")
def dense_clos():
    return assemble_hard_graph(
        20, 40, DenseClosRegime(Fraction(1, 2)), capacity=4, degree=2
    )


def test_biregular_degrees():
    g = biregular_digraph(5, 3)
    assert g.edge_count == 15
    assert all(g.out_degree(t) == 3 for t in range(5))
    assert all(g.in_degree(s) == 3 for s in range(5, 10))
    with pytest.raises(InvalidParameterError):
        biregular_digraph(3, 4)


def test_assembled_budgets(small):
    assert small.digraph.vertex_count == 10
    assert small.digraph.vertex_count - small.network.vertex_count == 2
    assert small.digraph.edge_count == 30
    assert small.capacity == 4 and small.degree == 2
    assert small.network_edges == range(0, 16)
    assert small.biregular_edges == range(16, 24)
    assert len(small.padding_edges) == 6
    assert small.source == small.S[0] == 0
    assert small.padding_weight == 40
    heads = small.digraph.heads
    assert len(small.eligible_edges) == 6
    assert all(heads[e] != small.source for e in small.eligible_edges)
    tails = small.digraph.tails
    for e in small.biregular_edges:
        assert tails[e] in small.T and heads[e] in small.S


def test_greedy_capacity_rule():
    graph = assemble_hard_graph(12, 30, CompleteBipartiteRegime())
    assert graph.capacity == 3
    assert graph.degree == 3
    assert graph.digraph.edge_count == 30


def test_dense_clos_regime(dense_clos):
    assert dense_clos.network.vertex_count == 16
    assert dense_clos.network.edge_count == 24
    assert dense_clos.digraph.edge_count == 40
    assert dense_clos.digraph.vertex_count == 20


def test_infeasible_budgets():
    with pytest.raises(InfeasibleBudgetError):
        assemble_hard_graph(4, 4, CompleteBipartiteRegime())
    with pytest.raises(InvalidParameterError):
        assemble_hard_graph(4, 13, CompleteBipartiteRegime())
    with pytest.raises(InfeasibleBudgetError):
        assemble_hard_graph(12, 30, CompleteBipartiteRegime(), capacity=4, degree=5)
    with pytest.raises(InfeasibleBudgetError):
        assemble_hard_graph(6, 30, CompleteBipartiteRegime(), capacity=4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_sample_structure(small, seed):
    sample = sample_hard_instance(small, seed)
    digraph = small.digraph
    tails = [int(digraph.tails[e]) for e in sample.chosen_edges]
    heads = [int(digraph.heads[e]) for e in sample.chosen_edges]
    assert len(set(tails)) == len(tails)
    assert len(set(heads)) == len(heads)
    assert small.source not in heads
    assert sample.milestone_vertices() == heads
    counts = list(sample.available_counts)
    assert all(a > b for a, b in zip(counts, counts[1:]))
    assert counts[0] == len(small.eligible_edges)
    assert len(sample.chosen_edges) >= small.capacity // 2 - 1
    # each choice removes itself and at most 2(d - 1) edges sharing an endpoint
    assert all(a - b <= 2 * small.degree - 1 for a, b in zip(counts, counts[1:]))

    path = sample.assembled_path
    assert path[0] == small.source
    assert len(set(path)) == len(path)
    assert list(sample.weights).count(0) == len(path) - 1
    distances = oracle_distances(sample.instance)
    assert all(distances[v] == 0 for v in path)


def test_sample_is_seeded(dense_clos):
    a = sample_hard_instance(dense_clos, 17)
    b = sample_hard_instance(dense_clos, 17)
    assert a.instance == b.instance
    assert a.chosen_edges == b.chosen_edges


def test_padding_weight_is_neutral(small):
    sample = sample_hard_instance(small, 3)
    heavier = list(sample.weights)
    for e in small.padding_edges:
        heavier[e] = 10 * small.padding_weight
    before = oracle_distances(sample.instance)
    after = oracle_distances(sample.instance.with_weights(WeightAssignment(heavier)))
    for v in small.construction_vertices:
        assert before[v] == after[v]


@pytest.mark.parametrize("seed", range(5))
def test_closure_count_bounds_reduced_cost(dense_clos, seed):
    sample = sample_hard_instance(dense_clos, seed)
    schedule = RoundRobin()(dense_clos.digraph)
    result = execute_schedule(sample.instance, schedule)
    closure = closure_reduced_cost(dense_clos, sample, schedule)
    assert result.is_correct
    assert 0 < closure <= result.reduced_cost


def test_sparse_floor(small):
    assert sparse_floor(32, 512) == 512
    assert sparse_floor(4, 16) == 2
    assert sparse_floor(3, 100) == 0
    assert sparse_floor(32, 1024) == 1024
    assert sparse_floor(4, 8) == 1
    assert sparse_floor(3, 7) == 0
    assert small.floor() == sparse_floor(4, 16)


def test_first_choice_is_uniform(small):
    eligible = small.eligible_edges
    counts = dict.fromkeys(eligible, 0)
    for seed in range(1200):
        counts[sample_hard_instance(small, seed).chosen_edges[0]] += 1
    assert stats.chisquare(list(counts.values())).pvalue > 1e-3
