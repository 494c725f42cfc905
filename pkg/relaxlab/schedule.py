import abc
import math

from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from relaxlab.errors import InvalidParameterError, ScheduleMismatchError
from relaxlab.graph import Digraph


class RelaxationSchedule:
    """Fixed sequence of edge indices to relax, tied to one digraph.

    The schedule keeps the digraph fingerprint so that running it against
    another graph fails immediately.  Steps may repeat edges."""

    def __init__(
        self,
        steps: Union[Sequence[int], np.ndarray],
        digraph: Optional[Digraph] = None,
        fingerprint: Optional[str] = None,
        edge_count: Optional[int] = None,
    ) -> None:
        if digraph is not None:
            fingerprint = digraph.fingerprint
            edge_count = digraph.edge_count
        if fingerprint is None or edge_count is None:
            raise InvalidParameterError(
                "a schedule needs a digraph or a fingerprint and edge count"
            )
        array = np.array(steps, dtype=np.int64).reshape(-1)
        if array.size and (array.min() < 0 or array.max() >= edge_count):
            raise ScheduleMismatchError(
                "schedule step outside edge range [0, {})".format(edge_count)
            )
        array.flags.writeable = False
        self._steps = array
        self._fingerprint = fingerprint
        self._edge_count = edge_count

    @property
    def steps(self) -> np.ndarray:
        """Read-only array of edge indices in relaxation order"""
        return self._steps

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def __len__(self) -> int:
        return int(self._steps.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelaxationSchedule):
            return NotImplemented
        return self._fingerprint == other._fingerprint and np.array_equal(
            self._steps, other._steps
        )

    def __repr__(self) -> str:
        return "RelaxationSchedule(len={}, graph={})".format(
            len(self), self._fingerprint
        )

    def matches(self, digraph: Digraph) -> bool:
        return self._fingerprint == digraph.fingerprint

    def check(self, digraph: Digraph) -> None:
        if not self.matches(digraph):
            raise ScheduleMismatchError(
                "schedule built for {} used on {}".format(
                    self._fingerprint, digraph.fingerprint
                )
            )

    def prefix(self, length: int) -> "RelaxationSchedule":
        return self._derive(self._steps[:length])

    def concat(self, other: "RelaxationSchedule") -> "RelaxationSchedule":
        if other.fingerprint != self._fingerprint:
            raise ScheduleMismatchError("cannot join schedules of two graphs")
        return self._derive(np.concatenate([self._steps, other.steps]))

    def _derive(self, steps: np.ndarray) -> "RelaxationSchedule":
        return RelaxationSchedule(
            steps, fingerprint=self._fingerprint, edge_count=self._edge_count
        )


def _check_permutation(values: Sequence[int], size: int, what: str) -> None:
    if len(values) != size or sorted(values) != list(range(size)):
        raise InvalidParameterError(
            "{} is not a permutation of range({})".format(what, size)
        )


def _check_rounds(rounds: int) -> None:
    if rounds < 1:
        raise InvalidParameterError("rounds must be a positive integer")


def round_robin_schedule(
    digraph: Digraph, rounds: int, order: Optional[Sequence[int]] = None
) -> RelaxationSchedule:
    """``rounds`` passes over every edge, each pass in the same order"""
    _check_rounds(rounds)
    if order is None:
        order = range(digraph.edge_count)
    else:
        order = [int(e) for e in order]
        _check_permutation(order, digraph.edge_count, "edge order")
    one_round = np.array(order, dtype=np.int64)
    return RelaxationSchedule(np.tile(one_round, rounds), digraph)


def yen_round(digraph: Digraph, vertex_order: Sequence[int]) -> List[int]:
    """Forward DAG edges in topological order, then backward DAG edges.

    Forward edges sort by (position of tail, position of head) ascending and
    backward edges by the same key descending."""
    position = [0] * digraph.vertex_count
    for rank, v in enumerate(vertex_order):
        position[v] = rank
    forward, backward = [], []
    for i, (tail, head) in enumerate(digraph.edges):
        key = (position[tail], position[head], i)
        if key[0] < key[1]:
            forward.append(key)
        else:
            backward.append(key)
    forward.sort()
    backward.sort(reverse=True)
    return [key[2] for key in forward] + [key[2] for key in backward]


def yen_schedule(
    digraph: Digraph, vertex_order: Sequence[int], rounds: int
) -> RelaxationSchedule:
    _check_rounds(rounds)
    vertex_order = [int(v) for v in vertex_order]
    _check_permutation(vertex_order, digraph.vertex_count, "vertex order")
    one_round = np.array(yen_round(digraph, vertex_order), dtype=np.int64)
    return RelaxationSchedule(np.tile(one_round, rounds), digraph)


def random_permutation(size: int, seed: int) -> List[int]:
    """Uniform permutation of range(size) drawn from a seeded generator"""
    rng = np.random.default_rng(seed)
    return rng.permutation(size).tolist()


def randomized_yen_schedule(
    digraph: Digraph, rounds: int, seed: int
) -> Tuple[RelaxationSchedule, List[int]]:
    """Yen's schedule over a uniformly random vertex order"""
    order = random_permutation(digraph.vertex_count, seed)
    return yen_schedule(digraph, order, rounds), order


def fallback_rounds(digraph: Digraph) -> int:
    return max(digraph.vertex_count - 1, 1)


def append_fallback(
    schedule: RelaxationSchedule, digraph: Digraph
) -> RelaxationSchedule:
    """Follow the schedule with n-1 rounds of round-robin Bellman-Ford,
    which makes it correct on every weighting without negative cycles"""
    schedule.check(digraph)
    tail = round_robin_schedule(digraph, fallback_rounds(digraph))
    return schedule.concat(tail)


def empty_schedule(digraph: Digraph) -> RelaxationSchedule:
    return RelaxationSchedule([], digraph)


def yen_rounds(vertex_count: int) -> int:
    """Rounds that make Yen's schedule correct on a complete graph"""
    return max(math.ceil(vertex_count / 2), 1)


class ScheduleGenerator(abc.ABC):
    """Base class for objects producing a relaxation schedule for a digraph"""

    def __call__(self, digraph: Digraph) -> RelaxationSchedule:
        return self._generate(digraph)

    @abc.abstractmethod
    def _generate(self, digraph: Digraph) -> RelaxationSchedule:
        """Subclasses will override this functionality"""

    @property
    def guaranteed_correct(self) -> bool:
        """True when every produced schedule is correct for every weighting
        of a complete digraph without negative cycles"""
        return False


class RoundRobin(ScheduleGenerator):
    """Conventional Bellman-Ford; ``n - 1`` rounds unless told otherwise"""

    def __init__(
        self, rounds: Optional[int] = None, order: Optional[Iterable[int]] = None
    ) -> None:
        self._rounds = rounds
        self._order = None if order is None else list(order)

    def _generate(self, digraph: Digraph) -> RelaxationSchedule:
        rounds = self._rounds or fallback_rounds(digraph)
        return round_robin_schedule(digraph, rounds, self._order)

    @property
    def guaranteed_correct(self) -> bool:
        return self._rounds is None


class Yen(ScheduleGenerator):
    """Yen's two-DAG schedule; identity order and ``ceil(n/2)`` rounds by
    default"""

    def __init__(
        self,
        rounds: Optional[int] = None,
        vertex_order: Optional[Iterable[int]] = None,
    ) -> None:
        self._rounds = rounds
        self._vertex_order = None if vertex_order is None else list(vertex_order)

    def _generate(self, digraph: Digraph) -> RelaxationSchedule:
        n = digraph.vertex_count
        rounds = self._rounds or yen_rounds(n)
        order = self._vertex_order
        if order is None:
            order = range(n)
        return yen_schedule(digraph, order, rounds)

    @property
    def guaranteed_correct(self) -> bool:
        return self._rounds is None


class RandomizedYen(ScheduleGenerator):
    """Yen's schedule over a seeded random vertex order; ``n`` rounds by
    default"""

    def __init__(self, seed: int, rounds: Optional[int] = None) -> None:
        self._seed = seed
        self._rounds = rounds

    @property
    def seed(self) -> int:
        return self._seed

    def _generate(self, digraph: Digraph) -> RelaxationSchedule:
        rounds = self._rounds or max(digraph.vertex_count, 1)
        schedule, _ = randomized_yen_schedule(digraph, rounds, self._seed)
        return schedule

    @property
    def guaranteed_correct(self) -> bool:
        return self._rounds is None


class EmptySchedule(ScheduleGenerator):
    def _generate(self, digraph: Digraph) -> RelaxationSchedule:
        return empty_schedule(digraph)


class WithFallback(ScheduleGenerator):
    """Appends round-robin Bellman-Ford to another generator's schedule"""

    def __init__(self, inner: ScheduleGenerator) -> None:
        self._inner = inner

    def _generate(self, digraph: Digraph) -> RelaxationSchedule:
        return append_fallback(self._inner(digraph), digraph)

    @property
    def guaranteed_correct(self) -> bool:
        return True
