"""Hard weightings of complete digraphs.

Both constructions put weight 0 on a Hamiltonian path from the source and
weight 1 on every other edge, so the only way a vertex reaches distance 0 is
through the relaxations of the path edges in path order."""

import logging
import math

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from relaxlab.errors import InvalidParameterError, ScheduleNotCorrectError
from relaxlab.graph import Instance, WeightAssignment, complete_digraph
from relaxlab.schedule import RelaxationSchedule

logger = logging.getLogger(__name__)


def hamiltonian_path_instance(n: int, path: Sequence[int]) -> Instance:
    """Complete digraph on n vertices, 0 on consecutive path pairs and 1
    elsewhere, sourced at path[0]"""
    if sorted(path) != list(range(n)):
        raise InvalidParameterError("path must visit every vertex once")
    digraph = complete_digraph(n)
    weights = [1] * digraph.edge_count
    for u, v in zip(path, path[1:]):
        weights[digraph.edge_index(u, v)] = 0
    return Instance(digraph, path[0], WeightAssignment(weights))


class AdversaryResult:
    """Path chosen by the greedy adversary and the positions it forced"""

    def __init__(self, path: Sequence[int], milestones: Sequence[int]) -> None:
        self._path = tuple(path)
        self._milestones = tuple(milestones)
        self._instance = hamiltonian_path_instance(len(path), path)

    @property
    def path(self) -> Tuple[int, ...]:
        return self._path

    @property
    def milestones(self) -> Tuple[int, ...]:
        """Schedule positions s_2, s_4, ... at which the even-position path
        vertices become correct"""
        return self._milestones

    @property
    def instance(self) -> Instance:
        return self._instance

    @property
    def weights(self) -> WeightAssignment:
        return self._instance.weights

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdversaryResult):
            return NotImplemented
        return (
            self._path == other._path and self._milestones == other._milestones
        )

    def __repr__(self) -> str:
        return "AdversaryResult(path={}, milestones={})".format(
            list(self._path), list(self._milestones)
        )


class _OccurrenceTable:
    """Sorted schedule positions (1-based) of every edge"""

    def __init__(self, schedule: RelaxationSchedule) -> None:
        steps = schedule.steps
        order = np.argsort(steps, kind="stable")
        edges, starts = np.unique(steps[order], return_index=True)
        positions = np.split(order + 1, starts[1:]) if steps.size else []
        self._positions = dict(
            zip(edges.tolist(), positions)
        )  # type: Dict[int, np.ndarray]

    def next_after(self, edge: int, position: int) -> Optional[int]:
        """First position of edge strictly after position, or None"""
        positions = self._positions.get(edge)
        if positions is None:
            return None
        i = int(np.searchsorted(positions, position, side="right"))
        if i == len(positions):
            return None
        return int(positions[i])


def _witness(n: int, path: List[int]) -> ScheduleNotCorrectError:
    rest = sorted(set(range(n)) - set(path))
    full = path + rest
    return ScheduleNotCorrectError(full, hamiltonian_path_instance(n, full))


def greedy_adversary_complete(
    n: int, source: int, schedule: RelaxationSchedule
) -> AdversaryResult:
    """Choose the path's even-position edges one at a time, each time taking
    the pair (a, b) of unused vertices whose zero-weight completion
    v -> a -> b comes latest in the schedule.

    Raises ScheduleNotCorrectError with a witness weighting when some
    candidate is never completed."""
    digraph = complete_digraph(n)
    if not 0 <= source < n:
        raise InvalidParameterError("source must be a vertex")
    schedule.check(digraph)
    table = _OccurrenceTable(schedule)

    path = [source]
    remaining = sorted(set(range(n)) - {source})
    position = 0
    milestones = []
    while len(remaining) >= 2:
        last = path[-1]
        best = None  # type: Optional[Tuple[int, int, int]]
        for a in remaining:
            reached_a = table.next_after(digraph.edge_index(last, a), position)
            if reached_a is None:
                raise _witness(n, path + [a])
            for b in remaining:
                if b == a:
                    continue
                reached_b = table.next_after(digraph.edge_index(a, b), reached_a)
                if reached_b is None:
                    raise _witness(n, path + [a, b])
                if best is None or reached_b > best[0]:
                    best = (reached_b, a, b)
        position, a, b = best
        logger.debug("adversary picks (%d, %d) at step %d", a, b, position)
        path.extend((a, b))
        milestones.append(position)
        remaining.remove(a)
        remaining.remove(b)
    if remaining:
        final = remaining[0]
        if table.next_after(digraph.edge_index(path[-1], final), position) is None:
            raise _witness(n, path + [final])
        path.append(final)
    return AdversaryResult(path, milestones)


def deterministic_floor(n: int) -> int:
    """(n^3 - n) / 6, the step count every correct schedule must exceed on
    the greedy adversary's weighting"""
    if n < 1:
        raise InvalidParameterError("n must be positive")
    return (n ** 3 - n) // 6


def greedy_gap_floor(n: int, i: int) -> int:
    """Lower bound (n - i + 1)^2 on s_i - s_{i-2}"""
    return (n - i + 1) ** 2


def sample_random_path_instance(
    n: int, source: int, seed: int
) -> Tuple[Instance, List[int]]:
    """Uniform Hamiltonian path starting at the source, weighted 0 along the
    path and 1 elsewhere"""
    if n < 1:
        raise InvalidParameterError("n must be positive")
    if not 0 <= source < n:
        raise InvalidParameterError("source must be a vertex")
    others = np.array([v for v in range(n) if v != source], dtype=np.int64)
    rng = np.random.default_rng(seed)
    path = [source] + rng.permutation(others).tolist()
    return hamiltonian_path_instance(n, path), path


def increment_floor(n: int, i: int) -> int:
    """binomial(n - i - 1, 2): expected-gap floor between s_i and s_{i+2}
    under the random-path distribution"""
    if i < 0 or i % 2 or i > n:
        raise InvalidParameterError("i must be even and within [0, n]")
    return math.comb(max(n - i - 1, 0), 2)


def randomized_floor(n: int) -> int:
    """Sum of increment_floor over even i < n"""
    return sum(increment_floor(n, i) for i in range(0, n, 2))
