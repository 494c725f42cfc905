"""Rearrangeable non-blocking networks.

A network of capacity c is a digraph with c inputs and c outputs in which
every partial matching of inputs to outputs can be realized by vertex-disjoint
paths.  Networks remember how they were built so that requests can be routed
recursively."""

import abc
import itertools
import logging
import math

from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from relaxlab.coloring import BipartiteMultigraph, konig_edge_coloring
from relaxlab.errors import (
    InvalidGraphError,
    InvalidParameterError,
    MalformedRequestError,
    RoutingError,
)
from relaxlab.graph import Digraph

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Path = List[int]

MAX_BRUTEFORCE_CAPACITY = 5


class RoutingRequest:
    """Pairs of (input index, output index), each index used at most once"""

    def __init__(self, pairs: Sequence[Pair], capacity: int) -> None:
        self._pairs = tuple((int(i), int(o)) for i, o in pairs)
        inputs = [i for i, _ in self._pairs]
        outputs = [o for _, o in self._pairs]
        if len(set(inputs)) != len(inputs):
            raise MalformedRequestError("an input appears twice")
        if len(set(outputs)) != len(outputs):
            raise MalformedRequestError("an output appears twice")
        if any(not 0 <= x < capacity for x in inputs + outputs):
            raise MalformedRequestError(
                "index outside capacity {}".format(capacity)
            )
        self._capacity = capacity

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return self._pairs

    @property
    def capacity(self) -> int:
        return self._capacity

    def __len__(self) -> int:
        return len(self._pairs)

    def __repr__(self) -> str:
        return "RoutingRequest({})".format(list(self._pairs))


class RoutedPaths:
    """One vertex sequence per request pair, in request order"""

    def __init__(self, paths: Sequence[Sequence[int]]) -> None:
        self._paths = tuple(tuple(p) for p in paths)

    @property
    def paths(self) -> Tuple[Tuple[int, ...], ...]:
        return self._paths

    def __len__(self) -> int:
        return len(self._paths)

    def __getitem__(self, index: int) -> Tuple[int, ...]:
        return self._paths[index]

    def __iter__(self):
        return iter(self._paths)


class NetworkStructure(abc.ABC):
    """How a network was built; knows how to route requests through it"""

    kind = None  # type: str

    def route(self, network: "NonBlockingNetwork", pairs: Sequence[Pair]) -> List[Path]:
        return self._route(network, pairs)

    @abc.abstractmethod
    def _route(
        self, network: "NonBlockingNetwork", pairs: Sequence[Pair]
    ) -> List[Path]:
        """Subclasses will override this functionality"""


class BaseStructure(NetworkStructure):
    """Complete bipartite network: every pair is its own edge"""

    kind = "base"

    def _route(
        self, network: "NonBlockingNetwork", pairs: Sequence[Pair]
    ) -> List[Path]:
        paths = []
        for i, o in pairs:
            tail, head = network.inputs[i], network.outputs[o]
            if not network.graph.has_edge(tail, head):
                raise RoutingError(
                    "no edge from input {} to output {}".format(i, o), pairs
                )
            paths.append([tail, head])
        return paths


class ClosStructure(NetworkStructure):
    """Three stages of c copies of one subunit network.

    ``input_maps[i]``, ``middle_maps[j]`` and ``output_maps[k]`` send the
    subunit's local vertices to vertices of the composed graph.  Output j of
    input subunit i is input i of middle subunit j; output k of middle
    subunit j is input j of output subunit k."""

    kind = "clos"

    def __init__(
        self,
        subunit: "NonBlockingNetwork",
        input_maps: Sequence[Sequence[int]],
        middle_maps: Sequence[Sequence[int]],
        output_maps: Sequence[Sequence[int]],
    ) -> None:
        self.subunit = subunit
        self.input_maps = tuple(tuple(m) for m in input_maps)
        self.middle_maps = tuple(tuple(m) for m in middle_maps)
        self.output_maps = tuple(tuple(m) for m in output_maps)

    @property
    def base_capacity(self) -> int:
        return self.subunit.capacity

    def _route(
        self, network: "NonBlockingNetwork", pairs: Sequence[Pair]
    ) -> List[Path]:
        c = self.base_capacity
        demand = BipartiteMultigraph(
            c, c, ((i // c, o // c) for i, o in pairs)
        )
        if demand.max_degree() > c:
            raise RoutingError("a subunit carries more than c pairs", pairs)
        coloring = konig_edge_coloring(demand)

        first = [[] for _ in range(c)]
        middle = [[] for _ in range(c)]
        last = [[] for _ in range(c)]
        for n, ((i, o), j) in enumerate(zip(pairs, coloring.colors)):
            first[i // c].append((n, (i % c, j)))
            middle[j].append((n, (i // c, o // c)))
            last[o // c].append((n, (j, o % c)))

        paths = [[] for _ in pairs]  # type: List[Path]
        stages = (
            (first, self.input_maps),
            (middle, self.middle_maps),
            (last, self.output_maps),
        )
        for stage, maps in stages:
            for unit, assigned in enumerate(stage):
                if not assigned:
                    continue
                local = self.subunit.route([pair for _, pair in assigned])
                vertex_map = maps[unit]
                for (n, _), local_path in zip(assigned, local):
                    mapped = [vertex_map[v] for v in local_path]
                    if paths[n]:
                        if paths[n][-1] != mapped[0]:
                            raise RoutingError("stages do not meet", pairs)
                        mapped = mapped[1:]
                    paths[n].extend(mapped)
        return paths


class TrimmedStructure(NetworkStructure):
    """Lower-capacity network cut out of a parent network.

    ``vertex_map[v]`` is the new index of parent vertex ``v`` or -1 when it
    was deleted.  Input and output indices are shared with the parent."""

    kind = "trimmed"

    def __init__(self, parent: "NonBlockingNetwork", vertex_map: Sequence[int]) -> None:
        self.parent = parent
        self.vertex_map = tuple(vertex_map)

    def _route(
        self, network: "NonBlockingNetwork", pairs: Sequence[Pair]
    ) -> List[Path]:
        paths = []
        for parent_path in self.parent.route(pairs):
            path = [self.vertex_map[v] for v in parent_path]
            if min(path) < 0:
                raise RoutingError("route uses a deleted vertex", pairs)
            paths.append(path)
        return paths


class NonBlockingNetwork:
    """Digraph with designated, ordered input and output vertices"""

    def __init__(
        self,
        graph: Digraph,
        inputs: Sequence[int],
        outputs: Sequence[int],
        structure: NetworkStructure,
    ) -> None:
        self._graph = graph
        self._inputs = tuple(inputs)
        self._outputs = tuple(outputs)
        self._structure = structure
        self._validate()

    def _validate(self) -> None:
        c = len(self._inputs)
        if len(self._outputs) != c:
            raise InvalidGraphError("inputs and outputs differ in number")
        terminals = set(self._inputs) | set(self._outputs)
        if len(set(self._inputs)) != c or len(set(self._outputs)) != c:
            raise InvalidGraphError("terminals must be distinct vertices")
        if len(terminals) != 2 * c:
            raise InvalidGraphError("a vertex is both an input and an output")
        if any(not 0 <= v < self._graph.vertex_count for v in terminals):
            raise InvalidGraphError("terminal outside the graph")
        if any(self._graph.in_degree(v) for v in self._inputs):
            raise InvalidGraphError("inputs must have in-degree 0")

    @property
    def graph(self) -> Digraph:
        return self._graph

    @property
    def inputs(self) -> Tuple[int, ...]:
        return self._inputs

    @property
    def outputs(self) -> Tuple[int, ...]:
        return self._outputs

    @property
    def structure(self) -> NetworkStructure:
        return self._structure

    @property
    def capacity(self) -> int:
        return len(self._inputs)

    @property
    def vertex_count(self) -> int:
        return self._graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self._graph.edge_count

    def route(self, pairs: Sequence[Pair]) -> List[Path]:
        return self._structure.route(self, pairs)

    def __repr__(self) -> str:
        return "NonBlockingNetwork({}, c={}, n={}, m={})".format(
            self._structure.kind, self.capacity, self.vertex_count, self.edge_count
        )


def complete_bipartite_network(c: int) -> NonBlockingNetwork:
    """K_{c,c}: inputs 0..c-1, outputs c..2c-1, every input-output edge"""
    if c < 1:
        raise InvalidParameterError("capacity must be positive")
    graph = Digraph(2 * c, ((i, c + o) for i in range(c) for o in range(c)))
    return NonBlockingNetwork(
        graph, range(c), range(c, 2 * c), BaseStructure()
    )


def clos_compose(base: NonBlockingNetwork) -> NonBlockingNetwork:
    """Capacity c^2 network from 3c copies of a capacity c network, with
    3c*n - 2c^2 vertices and 3c*m edges"""
    c = base.capacity
    n0 = base.vertex_count
    next_vertex = itertools.count()

    def fresh_map(shared: dict) -> List[int]:
        return [
            shared[v] if v in shared else next(next_vertex) for v in range(n0)
        ]

    input_maps = [fresh_map({}) for _ in range(c)]
    middle_maps = [
        fresh_map(
            {base.inputs[i]: input_maps[i][base.outputs[j]] for i in range(c)}
        )
        for j in range(c)
    ]
    output_maps = [
        fresh_map(
            {base.inputs[j]: middle_maps[j][base.outputs[k]] for j in range(c)}
        )
        for k in range(c)
    ]
    vertex_count = next(next_vertex)

    edges = []
    for vertex_map in input_maps + middle_maps + output_maps:
        edges.extend((vertex_map[t], vertex_map[h]) for t, h in base.graph.edges)
    graph = Digraph(vertex_count, edges)
    inputs = [input_maps[i][v] for i in range(c) for v in base.inputs]
    outputs = [output_maps[k][v] for k in range(c) for v in base.outputs]
    structure = ClosStructure(base, input_maps, middle_maps, output_maps)
    network = NonBlockingNetwork(graph, inputs, outputs, structure)
    logger.info(
        "clos network: capacity %d, %d vertices, %d edges",
        network.capacity,
        network.vertex_count,
        network.edge_count,
    )
    return network


def trim_capacity(network: NonBlockingNetwork, c: int) -> NonBlockingNetwork:
    """Keep the first c inputs and outputs and every vertex lying on some
    path between them"""
    if not 1 <= c <= network.capacity:
        raise InvalidParameterError("cannot trim to capacity {}".format(c))
    if c == network.capacity:
        return network
    g = network.graph.to_networkx()
    kept_inputs = network.inputs[:c]
    kept_outputs = network.outputs[:c]
    forward = set(kept_inputs)
    for v in kept_inputs:
        forward |= nx.descendants(g, v)
    backward = set(kept_outputs)
    for v in kept_outputs:
        backward |= nx.ancestors(g, v)
    alive = sorted(forward & backward)

    vertex_map = [-1] * network.vertex_count
    for new, old in enumerate(alive):
        vertex_map[old] = new
    edges = [
        (vertex_map[t], vertex_map[h])
        for t, h in network.graph.edges
        if vertex_map[t] >= 0 and vertex_map[h] >= 0
    ]
    graph = Digraph(len(alive), edges)
    return NonBlockingNetwork(
        graph,
        [vertex_map[v] for v in kept_inputs],
        [vertex_map[v] for v in kept_outputs],
        TrimmedStructure(network, vertex_map),
    )


def _ceil_sqrt(c: int) -> int:
    root = math.isqrt(c)
    return root if root * root == c else root + 1


def recursion_depth(eps: Union[Fraction, float, int]) -> int:
    """ceil(log2(1/eps)), computed exactly"""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InvalidParameterError("eps must lie in (0, 1]")
    depth = 0
    while eps * 2 ** depth < 1:
        depth += 1
    return depth


def sparse_nonblocking(
    c: int, eps: Union[Fraction, float, int] = 1
) -> NonBlockingNetwork:
    """Capacity c network with O(c) vertices and O(c^(1+eps)) edges"""
    if c < 1:
        raise InvalidParameterError("capacity must be positive")
    if recursion_depth(eps) == 0:
        return complete_bipartite_network(c)
    inner = sparse_nonblocking(_ceil_sqrt(c), min(Fraction(eps) * 2, 1))
    return trim_capacity(clos_compose(inner), c)


def route_pairs(
    network: NonBlockingNetwork, request: RoutingRequest
) -> RoutedPaths:
    """Vertex-disjoint paths realizing every requested pair"""
    if request.capacity != network.capacity:
        raise MalformedRequestError(
            "request for capacity {} on a capacity {} network".format(
                request.capacity, network.capacity
            )
        )
    return RoutedPaths(network.route(request.pairs))


def verify_routing(
    network: NonBlockingNetwork, request: RoutingRequest, routed: RoutedPaths
) -> bool:
    """Independent check: one path per pair, correct endpoints, consecutive
    vertices joined by edges, no vertex shared between or within paths"""
    if len(routed) != len(request):
        return False
    seen = set()
    for (i, o), path in zip(request.pairs, routed):
        if not path or path[0] != network.inputs[i] or path[-1] != network.outputs[o]:
            return False
        if any(not network.graph.has_edge(u, v) for u, v in zip(path, path[1:])):
            return False
        for v in path:
            if v in seen:
                return False
            seen.add(v)
    return True


def partial_injections(c: int) -> Iterator[List[Pair]]:
    """Every set of input-output pairs using each index at most once"""
    for k in range(c + 1):
        for chosen_inputs in itertools.combinations(range(c), k):
            for chosen_outputs in itertools.permutations(range(c), k):
                yield list(zip(chosen_inputs, chosen_outputs))


class VerificationResult:
    """Outcome of exhaustive rearrangeability checking"""

    def __init__(self, checked: int, counterexample: Optional[List[Pair]]) -> None:
        self.checked = checked
        self.counterexample = counterexample

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return "VerificationResult(ok={}, checked={}, counterexample={})".format(
            self.ok, self.checked, self.counterexample
        )


def verify_rearrangeable_bruteforce(
    network: NonBlockingNetwork,
) -> VerificationResult:
    """Route every partial injection and verify the paths; stops at the
    first failure"""
    c = network.capacity
    if c > MAX_BRUTEFORCE_CAPACITY:
        raise InvalidParameterError(
            "exhaustive check limited to capacity {}".format(
                MAX_BRUTEFORCE_CAPACITY
            )
        )
    checked = 0
    for pairs in partial_injections(c):
        checked += 1
        request = RoutingRequest(pairs, c)
        try:
            routed = route_pairs(network, request)
        except RoutingError:
            return VerificationResult(checked, pairs)
        if not verify_routing(network, request, routed):
            return VerificationResult(checked, pairs)
    return VerificationResult(checked, None)
