import hashlib

from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from relaxlab.distance import INT64_MAX, INT64_MIN, check_int64
from relaxlab.errors import InvalidGraphError, InvalidParameterError

Edge = Tuple[int, int]


class Digraph:
    """Simple directed graph whose edges keep the index they were given.

    Edge ``i`` is the ``i``-th entry of ``edges`` for the lifetime of the
    object.  Self-loops and parallel edges are rejected."""

    def __init__(self, vertex_count: int, edges: Iterable[Edge]) -> None:
        if vertex_count < 0:
            raise InvalidGraphError("vertex count must be non-negative")
        self._vertex_count = vertex_count
        self._edges = tuple((int(t), int(h)) for t, h in edges)
        self._index = {}  # type: Dict[Edge, int]
        out_edges = [[] for _ in range(vertex_count)]
        in_degree = [0] * vertex_count
        for i, (tail, head) in enumerate(self._edges):
            self._check_edge(tail, head)
            self._index[(tail, head)] = i
            out_edges[tail].append(i)
            in_degree[head] += 1
        self._out_edges = tuple(tuple(e) for e in out_edges)
        self._in_degree = tuple(in_degree)
        self._tails = np.array([t for t, _ in self._edges], dtype=np.int64)
        self._heads = np.array([h for _, h in self._edges], dtype=np.int64)
        self._tails.flags.writeable = False
        self._heads.flags.writeable = False
        self._fingerprint = None  # type: Optional[str]

    def _check_edge(self, tail: int, head: int) -> None:
        n = self._vertex_count
        if not (0 <= tail < n and 0 <= head < n):
            raise InvalidGraphError(
                "edge ({}, {}) has an endpoint outside [0, {})".format(
                    tail, head, n
                )
            )
        if tail == head:
            raise InvalidGraphError("self-loop at vertex {}".format(tail))
        if (tail, head) in self._index:
            raise InvalidGraphError(
                "duplicate edge ({}, {})".format(tail, head)
            )

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Edges as ``(tail, head)`` pairs in index order"""
        return self._edges

    @property
    def tails(self) -> np.ndarray:
        """Read-only array of edge tails, indexed by edge"""
        return self._tails

    @property
    def heads(self) -> np.ndarray:
        """Read-only array of edge heads, indexed by edge"""
        return self._heads

    @property
    def fingerprint(self) -> str:
        """``"n:m:hash"`` identifying the vertex count and edge list"""
        if self._fingerprint is None:
            digest = hashlib.sha256()
            digest.update(self._tails.tobytes())
            digest.update(self._heads.tobytes())
            self._fingerprint = "{}:{}:{}".format(
                self._vertex_count, self.edge_count, digest.hexdigest()[:16]
            )
        return self._fingerprint

    def edge(self, index: int) -> Edge:
        return self._edges[index]

    def edge_index(self, tail: int, head: int) -> int:
        try:
            return self._index[(tail, head)]
        except KeyError:
            raise InvalidGraphError(
                "no edge ({}, {})".format(tail, head)
            ) from None

    def has_edge(self, tail: int, head: int) -> bool:
        return (tail, head) in self._index

    def out_edges(self, vertex: int) -> Tuple[int, ...]:
        return self._out_edges[vertex]

    def out_degree(self, vertex: int) -> int:
        return len(self._out_edges[vertex])

    def in_degree(self, vertex: int) -> int:
        return self._in_degree[vertex]

    def to_networkx(self, weights: Optional[Sequence[int]] = None) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self._vertex_count))
        if weights is None:
            g.add_edges_from(self._edges)
        else:
            g.add_weighted_edges_from(
                (t, h, w) for (t, h), w in zip(self._edges, weights)
            )
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self._vertex_count == other._vertex_count
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._edges))

    def __repr__(self) -> str:
        return "Digraph(n={}, m={})".format(self._vertex_count, self.edge_count)


class WeightAssignment:
    """Signed 64-bit integer weight for every edge index of a digraph"""

    def __init__(self, weights: Iterable[int]) -> None:
        values = []
        for w in weights:
            if isinstance(w, bool) or not isinstance(w, (int, np.integer)):
                raise InvalidGraphError("weight {!r} is not an integer".format(w))
            w = int(w)
            if w < INT64_MIN or w > INT64_MAX:
                raise InvalidGraphError("weight {} exceeds 64 bits".format(w))
            values.append(w)
        self._weights = tuple(values)

    @property
    def weights(self) -> Tuple[int, ...]:
        return self._weights

    def __len__(self) -> int:
        return len(self._weights)

    def __getitem__(self, index: int) -> int:
        return self._weights[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightAssignment):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self) -> int:
        return hash(self._weights)

    def __repr__(self) -> str:
        return "WeightAssignment({})".format(list(self._weights))


class Instance:
    """Weighted digraph with a designated source vertex"""

    def __init__(
        self,
        digraph: Digraph,
        source: int,
        weights: WeightAssignment,
        check_cycles: bool = False,
    ) -> None:
        if not 0 <= source < digraph.vertex_count:
            raise InvalidGraphError(
                "source {} is not a vertex of {}".format(source, digraph)
            )
        if len(weights) != digraph.edge_count:
            raise InvalidGraphError(
                "{} weights for {} edges".format(len(weights), digraph.edge_count)
            )
        self._digraph = digraph
        self._source = source
        self._weights = weights
        if check_cycles:
            # raises NegativeCycleError
            from relaxlab.oracle import oracle_distances

            oracle_distances(self)

    @property
    def digraph(self) -> Digraph:
        return self._digraph

    @property
    def source(self) -> int:
        return self._source

    @property
    def weights(self) -> WeightAssignment:
        return self._weights

    @property
    def vertex_count(self) -> int:
        return self._digraph.vertex_count

    def with_weights(self, weights: WeightAssignment) -> "Instance":
        return Instance(self._digraph, self._source, weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self._digraph == other._digraph
            and self._source == other._source
            and self._weights == other._weights
        )

    def __hash__(self) -> int:
        return hash((self._digraph, self._source, self._weights))

    def __repr__(self) -> str:
        return "Instance({!r}, source={})".format(self._digraph, self._source)


def complete_digraph(n: int) -> Digraph:
    """All ``n(n-1)`` ordered pairs, in lexicographic ``(tail, head)`` order"""
    if n < 1:
        raise InvalidParameterError("complete digraph needs n >= 1")
    return Digraph(n, ((t, h) for t in range(n) for h in range(n) if t != h))


def reweight(
    digraph: Digraph, slacks: Sequence[int], potentials: Sequence[int]
) -> WeightAssignment:
    """weight(u->v) = slack(u->v) + p(u) - p(v).

    Every cycle weighs the sum of its slacks, so non-negative slacks never
    produce a negative cycle while edges themselves may be negative."""
    if len(slacks) != digraph.edge_count:
        raise InvalidParameterError("one slack per edge is required")
    if len(potentials) != digraph.vertex_count:
        raise InvalidParameterError("one potential per vertex is required")
    if any(r < 0 for r in slacks):
        raise InvalidParameterError("slacks must be non-negative")
    p = [int(x) for x in potentials]
    return WeightAssignment(
        check_int64(int(r) + p[t] - p[h])
        for r, (t, h) in zip(slacks, digraph.edges)
    )


def potential_weights(
    digraph: Digraph, seed: int, slack_max: int, potential_max: int
) -> WeightAssignment:
    """Seeded negative-weight assignment without negative cycles"""
    if slack_max < 0 or potential_max < 0:
        raise InvalidParameterError("slack_max and potential_max must be >= 0")
    if slack_max + potential_max > INT64_MAX:
        raise InvalidParameterError(
            "slack_max + potential_max must fit in 64 bits"
        )
    rng = np.random.default_rng(seed)
    potentials = rng.integers(
        0, potential_max, size=digraph.vertex_count, endpoint=True
    )
    slacks = rng.integers(0, slack_max, size=digraph.edge_count, endpoint=True)
    return reweight(digraph, slacks.tolist(), potentials.tolist())
