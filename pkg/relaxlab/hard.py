"""Hard instances for incomplete digraphs.

Two vertex sets S and T of size c are joined T -> S by a d-biregular
digraph and S -> T by a rearrangeable non-blocking network.  A random path
alternates between chosen disjoint biregular edges and routed network
paths; padding vertices and edges bring the graph to exact budgets."""

import abc
import logging

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from relaxlab.distance import UNREACHABLE
from relaxlab.engine import NEVER, StepCount
from relaxlab.errors import (
    InfeasibleBudgetError,
    InvalidParameterError,
    RoutingError,
)
from relaxlab.graph import Digraph, Instance, WeightAssignment
from relaxlab.network import (
    NonBlockingNetwork,
    RoutingRequest,
    complete_bipartite_network,
    route_pairs,
    sparse_nonblocking,
    verify_routing,
)
from relaxlab.oracle import oracle_distances
from relaxlab.schedule import RelaxationSchedule

logger = logging.getLogger(__name__)


def biregular_digraph(c: int, d: int) -> Digraph:
    """Circulant T -> S digraph: T[j] = j, S[i] = c + i, and
    T[j] -> S[(j + k) mod c] for k < d"""
    if c < 1 or not 1 <= d <= c:
        raise InvalidParameterError("need c >= 1 and 1 <= d <= c")
    return Digraph(
        2 * c, ((j, c + (j + k) % c) for j in range(c) for k in range(d))
    )


class NetworkRegime(abc.ABC):
    """Which non-blocking network joins S to T"""

    def __call__(self, c: int) -> NonBlockingNetwork:
        return self._build(c)

    @abc.abstractmethod
    def _build(self, c: int) -> NonBlockingNetwork:
        """Subclasses will override this functionality"""

    @property
    @abc.abstractmethod
    def name(self) -> str:
        """Identifier used in files and on the command line"""


class CompleteBipartiteRegime(NetworkRegime):
    name = "complete-bipartite"

    def _build(self, c: int) -> NonBlockingNetwork:
        return complete_bipartite_network(c)

    def __repr__(self) -> str:
        return "CompleteBipartiteRegime()"


class DenseClosRegime(NetworkRegime):
    name = "dense-clos"

    def __init__(self, eps: Union[Fraction, float, int]) -> None:
        self.eps = Fraction(eps)

    def _build(self, c: int) -> NonBlockingNetwork:
        return sparse_nonblocking(c, self.eps)

    def __repr__(self) -> str:
        return "DenseClosRegime(eps={})".format(self.eps)


class SparseHardGraph:
    """The assembled construction.

    Edges are laid out network first, then biregular, then padding; the
    vertex set is the network's vertices followed by padding vertices."""

    def __init__(
        self,
        digraph: Digraph,
        network: NonBlockingNetwork,
        degree: int,
        biregular_edges: range,
        padding_edges: range,
    ) -> None:
        self._digraph = digraph
        self._network = network
        self._degree = degree
        self._biregular_edges = biregular_edges
        self._padding_edges = padding_edges

    @property
    def digraph(self) -> Digraph:
        return self._digraph

    @property
    def network(self) -> NonBlockingNetwork:
        return self._network

    @property
    def S(self) -> Tuple[int, ...]:
        return self._network.inputs

    @property
    def T(self) -> Tuple[int, ...]:
        return self._network.outputs

    @property
    def source(self) -> int:
        return self.S[0]

    @property
    def capacity(self) -> int:
        return self._network.capacity

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def network_edges(self) -> range:
        return range(0, self._network.edge_count)

    @property
    def biregular_edges(self) -> range:
        return self._biregular_edges

    @property
    def padding_edges(self) -> range:
        return self._padding_edges

    @property
    def construction_vertices(self) -> range:
        return range(self._network.vertex_count)

    @property
    def eligible_edges(self) -> List[int]:
        """Biregular edges that may be sampled: those not entering the
        source"""
        heads = self._digraph.heads
        return [e for e in self._biregular_edges if heads[e] != self.source]

    @property
    def padding_weight(self) -> int:
        return self._digraph.vertex_count + self._digraph.edge_count

    def floor(self) -> int:
        """sparse_floor with m taken as twice the biregular edge count"""
        return sparse_floor(self.capacity, 2 * len(self._biregular_edges))

    def __repr__(self) -> str:
        return "SparseHardGraph(n={}, m={}, c={}, d={})".format(
            self._digraph.vertex_count,
            self._digraph.edge_count,
            self.capacity,
            self._degree,
        )


def _choose_capacity(n: int, m: int, regime: NetworkRegime) -> NonBlockingNetwork:
    for c in range(n // 2, 1, -1):
        network = regime(c)
        if network.edge_count <= m / 2 and network.vertex_count <= n:
            if m - network.edge_count >= c:
                return network
    raise InfeasibleBudgetError(
        "no capacity c >= 2 fits n={}, m={}".format(n, m)
    )


def _padding(
    n: int, m: int, core_vertices: int, edges: List[Tuple[int, int]]
) -> List[Tuple[int, int]]:
    """Chain the padding vertices, then scan absent pairs in lexicographic
    order until the edge budget is met"""
    present = set(edges)
    extra = []
    for v in range(core_vertices, n - 1):
        if len(edges) + len(extra) >= m:
            return extra
        extra.append((v, v + 1))
        present.add((v, v + 1))
    for u in range(n):
        for v in range(n):
            if len(edges) + len(extra) >= m:
                return extra
            if u != v and (u, v) not in present:
                extra.append((u, v))
                present.add((u, v))
    return extra


def assemble_hard_graph(
    n: int,
    m: int,
    regime: NetworkRegime,
    capacity: Optional[int] = None,
    degree: Optional[int] = None,
) -> SparseHardGraph:
    """Build the construction with exactly n vertices and m edges.

    Without overrides c is the largest capacity whose network uses at most
    m/2 edges and fits in n vertices, and d = min(c, (m - network edges) // c).
    """
    if not n <= m <= n * (n - 1):
        raise InvalidParameterError("need n <= m <= n(n-1)")
    if capacity is None:
        network = _choose_capacity(n, m, regime)
    else:
        if capacity < 2:
            raise InfeasibleBudgetError("capacity must be at least 2")
        network = regime(capacity)
    c = network.capacity
    remaining = m - network.edge_count
    if degree is None:
        degree = min(c, remaining // c)
    if not 1 <= degree <= c:
        raise InfeasibleBudgetError("degree {} does not fit".format(degree))
    if network.vertex_count > n or network.edge_count + c * degree > m:
        raise InfeasibleBudgetError(
            "c={}, d={} exceeds n={}, m={}".format(c, degree, n, m)
        )

    edges = list(network.graph.edges)
    S, T = network.inputs, network.outputs
    for tail, head in biregular_digraph(c, degree).edges:
        edges.append((T[tail], S[head - c]))
    biregular = range(network.edge_count, len(edges))
    edges.extend(_padding(n, m, network.vertex_count, edges))
    padding = range(biregular.stop, len(edges))
    digraph = Digraph(n, edges)
    logger.info(
        "hard graph: n=%d m=%d c=%d d=%d network=%d biregular=%d padding=%d",
        n,
        m,
        c,
        degree,
        network.edge_count,
        len(biregular),
        len(padding),
    )
    return SparseHardGraph(digraph, network, degree, biregular, padding)


class SparseHardSample:
    """One draw of the hard weight distribution"""

    def __init__(
        self,
        instance: Instance,
        chosen_edges: Sequence[int],
        assembled_path: Sequence[int],
        available_counts: Sequence[int],
    ) -> None:
        self._instance = instance
        self._chosen_edges = tuple(chosen_edges)
        self._assembled_path = tuple(assembled_path)
        self._available_counts = tuple(available_counts)

    @property
    def instance(self) -> Instance:
        return self._instance

    @property
    def weights(self) -> WeightAssignment:
        return self._instance.weights

    @property
    def chosen_edges(self) -> Tuple[int, ...]:
        """Biregular edge indices in path order"""
        return self._chosen_edges

    @property
    def assembled_path(self) -> Tuple[int, ...]:
        return self._assembled_path

    @property
    def available_counts(self) -> Tuple[int, ...]:
        """Eligible biregular edges just before each choice"""
        return self._available_counts

    def milestone_vertices(self) -> List[int]:
        """Heads of the chosen edges; their correction steps are t_1, t_2..."""
        heads = self._instance.digraph.heads
        return [int(heads[e]) for e in self._chosen_edges]


def _choose_disjoint_edges(
    graph: SparseHardGraph, rng: np.random.Generator
) -> Tuple[List[int], List[int]]:
    tails, heads = graph.digraph.tails, graph.digraph.heads
    eligible = graph.eligible_edges
    chosen, available = [], []
    while eligible:
        available.append(len(eligible))
        e = eligible[int(rng.integers(len(eligible)))]
        chosen.append(e)
        eligible = [
            f
            for f in eligible
            if tails[f] != tails[e] and heads[f] != heads[e]
        ]
    return chosen, available


def sample_hard_instance(graph: SparseHardGraph, seed: int) -> SparseHardSample:
    """Draw disjoint biregular edges uniformly one at a time, link them into
    a single path through the network, and weight that path 0"""
    rng = np.random.default_rng(seed)
    chosen, available = _choose_disjoint_edges(graph, rng)

    network = graph.network
    digraph = graph.digraph
    input_index = {v: i for i, v in enumerate(network.inputs)}
    output_index = {v: o for o, v in enumerate(network.outputs)}
    starts = [graph.source] + [int(digraph.heads[e]) for e in chosen[:-1]]
    ends = [int(digraph.tails[e]) for e in chosen]
    request = RoutingRequest(
        [(input_index[s], output_index[t]) for s, t in zip(starts, ends)],
        network.capacity,
    )
    routed = route_pairs(network, request)
    if not verify_routing(network, request, routed):
        raise RoutingError(
            "routed paths are not vertex-disjoint (seed {})".format(seed),
            request,
        )

    path = [graph.source]
    for segment, e in zip(routed, chosen):
        path.extend(segment[1:])
        path.append(int(digraph.heads[e]))

    weights = [1] * digraph.edge_count
    for e in graph.padding_edges:
        weights[e] = graph.padding_weight
    for u, v in zip(path, path[1:]):
        weights[digraph.edge_index(u, v)] = 0
    instance = Instance(digraph, graph.source, WeightAssignment(weights))
    return SparseHardSample(instance, chosen, path, available)


def sparse_floor(c: int, m: int) -> int:
    """floor(c/4) * floor(m/8): c/4 choices, each among at least m/4
    available edges, each costing half the available count in expectation"""
    return (c // 4) * (m // 8)


def closure_reduced_cost(
    graph: SparseHardGraph,
    sample: SparseHardSample,
    schedule: RelaxationSchedule,
) -> StepCount:
    """Reduced cost of the schedule's biregular steps alone, with the whole
    network relaxed to closure before they start and after each one.

    Only construction vertices are required to be correct.  The count never
    exceeds the schedule's own reduced cost."""
    instance = sample.instance
    digraph = instance.digraph
    schedule.check(digraph)
    target = oracle_distances(instance)
    vertices = graph.construction_vertices
    weights = instance.weights.weights
    tails = digraph.tails.tolist()
    heads = digraph.heads.tolist()

    network_graph = digraph.to_networkx()
    network_graph.remove_edges_from(
        digraph.edge(e) for e in list(graph.biregular_edges) + list(graph.padding_edges)
    )
    topological = {v: r for r, v in enumerate(nx.topological_sort(network_graph))}
    network_order = sorted(graph.network_edges, key=lambda e: topological[tails[e]])

    distances = [UNREACHABLE] * digraph.vertex_count  # type: list
    distances[instance.source] = 0

    def relax(e: int) -> bool:
        du = distances[tails[e]]
        if du is UNREACHABLE:
            return False
        candidate = du + weights[e]
        dv = distances[heads[e]]
        if dv is UNREACHABLE or candidate < dv:
            distances[heads[e]] = candidate
            return True
        return False

    def done() -> bool:
        return all(distances[v] == target[v] for v in vertices)

    for e in network_order:
        relax(e)
    if done():
        return 0
    biregular = set(graph.biregular_edges)
    count = 0
    for e in schedule.steps.tolist():
        if e not in biregular:
            continue
        count += 1
        if relax(e):
            for f in network_order:
                relax(f)
            if done():
                return count
    return NEVER
