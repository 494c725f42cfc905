import pytest

from hypothesis import given, settings

from relaxlab.coloring import (
    BipartiteMultigraph,
    EdgeColoring,
    konig_edge_coloring,
    verify_edge_coloring,
)
from relaxlab.errors import InvalidParameterError

from .strategies import bipartite_multigraphs


@settings(max_examples=300)
@given(bipartite_multigraphs())
def test_konig_coloring_is_proper(g):
    coloring = konig_edge_coloring(g)
    assert len(coloring) == len(g.multiedges)
    assert verify_edge_coloring(g, coloring)
    assert coloring.used_colors() <= g.max_degree()


def test_parallel_edges():
    g = BipartiteMultigraph(2, 2, [(0, 0), (0, 0), (0, 1), (1, 0), (1, 1), (1, 1)])
    assert g.max_degree() == 3
    coloring = konig_edge_coloring(g)
    assert verify_edge_coloring(g, coloring)
    assert coloring.colors[0] != coloring.colors[1]


def test_regular_graph_needs_every_color():
    # 3-regular on 3 + 3 vertices
    edges = [(u, (u + k) % 3) for u in range(3) for k in range(3)]
    g = BipartiteMultigraph(3, 3, edges)
    coloring = konig_edge_coloring(g)
    assert verify_edge_coloring(g, coloring)
    assert coloring.used_colors() == 3


def test_verifier_rejects_bad_colorings():
    g = BipartiteMultigraph(1, 2, [(0, 0), (0, 1)])
    assert not verify_edge_coloring(g, EdgeColoring([0, 0], 2))
    assert not verify_edge_coloring(g, EdgeColoring([0, 2], 3))
    assert not verify_edge_coloring(g, EdgeColoring([0], 2))
    assert verify_edge_coloring(g, EdgeColoring([1, 0], 2))


def test_empty_multigraph():
    g = BipartiteMultigraph(3, 0, [])
    coloring = konig_edge_coloring(g)
    assert len(coloring) == 0
    assert verify_edge_coloring(g, coloring)


def test_out_of_range_multiedge():
    with pytest.raises(InvalidParameterError):
        BipartiteMultigraph(2, 2, [(0, 2)])
