"""Exact single-source distances used as ground truth.

The oracle is allowed to be adaptive; it is never the algorithm being
measured."""

from typing import List, Optional, Sequence

import networkx as nx

from relaxlab.distance import UNREACHABLE, ExtendedDistance
from relaxlab.errors import NegativeCycleError
from relaxlab.graph import Instance


def _weighted_graph(instance: Instance) -> nx.DiGraph:
    return instance.digraph.to_networkx(instance.weights.weights)


def _raise_negative_cycle(g: nx.DiGraph, source: int) -> None:
    cycle = nx.find_negative_cycle(g, source, weight="weight")
    raise NegativeCycleError(cycle)


def oracle_distances(instance: Instance) -> List[ExtendedDistance]:
    """Shortest-path distance of every vertex from the instance source.

    Raises NegativeCycleError naming a witness cycle when a negative cycle is
    reachable from the source."""
    g = _weighted_graph(instance)
    try:
        lengths = nx.single_source_bellman_ford_path_length(
            g, instance.source, weight="weight"
        )
    except nx.NetworkXUnbounded:
        _raise_negative_cycle(g, instance.source)
    return [
        int(lengths[v]) if v in lengths else UNREACHABLE
        for v in range(instance.vertex_count)
    ]


def shortest_path_tree(instance: Instance) -> List[Optional[int]]:
    """Parent of every vertex in a shortest-path tree; None for the source
    and for unreachable vertices"""
    g = _weighted_graph(instance)
    try:
        pred, _ = nx.bellman_ford_predecessor_and_distance(
            g, instance.source, weight="weight"
        )
    except nx.NetworkXUnbounded:
        _raise_negative_cycle(g, instance.source)
    parents = [None] * instance.vertex_count  # type: List[Optional[int]]
    for v, candidates in pred.items():
        if candidates:
            parents[v] = min(candidates)
    return parents


def tree_paths(parents: Sequence[Optional[int]], source: int) -> List[List[int]]:
    """Root-to-leaf vertex sequences of the tree described by ``parents``"""
    children = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p is not None:
            children[p].append(v)
    paths = []
    stack = [[source]]
    while stack:
        path = stack.pop()
        below = children[path[-1]]
        if not below:
            paths.append(path)
        for child in reversed(below):
            stack.append(path + [child])
    return paths


def check_triangle_inequality(
    instance: Instance, distances: Sequence[ExtendedDistance]
) -> List[int]:
    """Edge indices violating dist(v) <= dist(u) + w(u->v); empty when the
    distances are a feasible potential"""
    violations = []
    digraph = instance.digraph
    for i, (tail, head) in enumerate(digraph.edges):
        du, dv = distances[tail], distances[head]
        if du is UNREACHABLE:
            continue
        if dv is UNREACHABLE or dv > du + instance.weights[i]:
            violations.append(i)
    return violations
