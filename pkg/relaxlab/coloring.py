from typing import Dict, Iterable, List, Sequence, Tuple

from relaxlab.errors import InvalidParameterError

_LEFT, _RIGHT = 0, 1


class BipartiteMultigraph:
    """Bipartite multigraph given by (left, right) index pairs; parallel
    edges are allowed"""

    def __init__(
        self,
        left_count: int,
        right_count: int,
        multiedges: Iterable[Tuple[int, int]],
    ) -> None:
        if left_count < 0 or right_count < 0:
            raise InvalidParameterError("side sizes must be non-negative")
        self._left_count = left_count
        self._right_count = right_count
        self._multiedges = tuple((int(u), int(v)) for u, v in multiedges)
        for u, v in self._multiedges:
            if not (0 <= u < left_count and 0 <= v < right_count):
                raise InvalidParameterError(
                    "multiedge ({}, {}) out of range".format(u, v)
                )

    @property
    def left_count(self) -> int:
        return self._left_count

    @property
    def right_count(self) -> int:
        return self._right_count

    @property
    def multiedges(self) -> Tuple[Tuple[int, int], ...]:
        return self._multiedges

    def degrees(self) -> Tuple[List[int], List[int]]:
        left = [0] * self._left_count
        right = [0] * self._right_count
        for u, v in self._multiedges:
            left[u] += 1
            right[v] += 1
        return left, right

    def max_degree(self) -> int:
        left, right = self.degrees()
        return max(left + right, default=0)


class EdgeColoring:
    """Color index of every multiedge"""

    def __init__(self, colors: Sequence[int], color_count: int) -> None:
        self._colors = tuple(colors)
        self._color_count = color_count

    @property
    def colors(self) -> Tuple[int, ...]:
        return self._colors

    @property
    def color_count(self) -> int:
        """Size of the palette the colors were drawn from"""
        return self._color_count

    def used_colors(self) -> int:
        return len(set(self._colors))

    def __len__(self) -> int:
        return len(self._colors)

    def __getitem__(self, index: int) -> int:
        return self._colors[index]

    def __repr__(self) -> str:
        return "EdgeColoring({})".format(list(self._colors))


class _KempeColorer:
    """Incremental edge coloring with alternating-path recoloring.

    For each side, ``_at[side][vertex]`` maps a color to the multiedge that
    carries it there."""

    def __init__(self, g: BipartiteMultigraph, color_count: int) -> None:
        self._g = g
        self._color_count = color_count
        self._colors = [-1] * len(g.multiedges)
        self._at = (
            [dict() for _ in range(g.left_count)],
            [dict() for _ in range(g.right_count)],
        )  # type: Tuple[List[Dict[int, int]], List[Dict[int, int]]]

    def color(self) -> EdgeColoring:
        for e, (u, v) in enumerate(self._g.multiedges):
            self._add(e, u, v)
        return EdgeColoring(self._colors, self._color_count)

    def _free(self, side: int, vertex: int) -> int:
        used = self._at[side][vertex]
        for c in range(self._color_count):
            if c not in used:
                return c
        raise AssertionError("vertex degree exceeds the palette")

    def _assign(self, e: int, c: int) -> None:
        u, v = self._g.multiedges[e]
        self._colors[e] = c
        self._at[_LEFT][u][c] = e
        self._at[_RIGHT][v][c] = e

    def _unassign(self, e: int) -> None:
        u, v = self._g.multiedges[e]
        c = self._colors[e]
        del self._at[_LEFT][u][c]
        del self._at[_RIGHT][v][c]

    def _add(self, e: int, u: int, v: int) -> None:
        alpha = self._free(_LEFT, u)
        if alpha not in self._at[_RIGHT][v]:
            self._assign(e, alpha)
            return
        beta = self._free(_RIGHT, v)
        if beta not in self._at[_LEFT][u]:
            self._assign(e, beta)
            return
        # the alpha/beta chain from v cannot end at u in a bipartite graph
        self._flip_chain(v, alpha, beta)
        self._assign(e, alpha)

    def _flip_chain(self, start: int, alpha: int, beta: int) -> None:
        chain = []
        side, vertex, c = _RIGHT, start, alpha
        while c in self._at[side][vertex]:
            e = self._at[side][vertex][c]
            chain.append(e)
            u, v = self._g.multiedges[e]
            side, vertex = (_LEFT, u) if side == _RIGHT else (_RIGHT, v)
            c = beta if c == alpha else alpha
        for e in chain:
            self._unassign(e)
        for e in chain:
            old = self._colors[e]
            self._assign(e, beta if old == alpha else alpha)


def konig_edge_coloring(g: BipartiteMultigraph) -> EdgeColoring:
    """Proper edge coloring with at most max-degree colors"""
    return _KempeColorer(g, g.max_degree()).color()


def verify_edge_coloring(g: BipartiteMultigraph, coloring: EdgeColoring) -> bool:
    """True when the coloring is proper and stays within max-degree colors"""
    if len(coloring) != len(g.multiedges):
        return False
    limit = g.max_degree()
    seen = set()
    for (u, v), c in zip(g.multiedges, coloring.colors):
        if not 0 <= c < limit:
            return False
        if (_LEFT, u, c) in seen or (_RIGHT, v, c) in seen:
            return False
        seen.add((_LEFT, u, c))
        seen.add((_RIGHT, v, c))
    return True
