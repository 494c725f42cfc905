import enum

from typing import Iterator, List, Optional, Sequence, Tuple, Union

from relaxlab.distance import UNREACHABLE, ExtendedDistance, check_int64
from relaxlab.errors import InvalidParameterError, ScheduleMismatchError
from relaxlab.graph import Instance
from relaxlab.oracle import oracle_distances, tree_paths
from relaxlab.schedule import RelaxationSchedule


class _Never(enum.Enum):
    """Sentinel reduced cost of a schedule that never finishes"""

    NEVER = "never"

    def __repr__(self) -> str:
        return "NEVER"

    def __str__(self) -> str:
        return "NEVER"


NEVER = _Never.NEVER

StepCount = Union[int, _Never]


class ExecutionResult:
    """Outcome of running a schedule on an instance.

    ``correct_at_step[v]`` is the 1-based step after which vertex ``v`` holds
    its true distance (0 when it starts correct, NEVER when it never does).
    The reduced cost is the largest of these."""

    def __init__(
        self,
        final_distances: Sequence[ExtendedDistance],
        correct_at_step: Sequence[StepCount],
    ) -> None:
        self._final_distances = tuple(final_distances)
        self._correct_at_step = tuple(correct_at_step)
        if any(s is NEVER for s in self._correct_at_step):
            self._reduced_cost = NEVER  # type: StepCount
        else:
            self._reduced_cost = max(self._correct_at_step, default=0)

    @property
    def final_distances(self) -> Tuple[ExtendedDistance, ...]:
        return self._final_distances

    @property
    def correct_at_step(self) -> Tuple[StepCount, ...]:
        return self._correct_at_step

    @property
    def reduced_cost(self) -> StepCount:
        """Steps performed until every distance is correct, or NEVER"""
        return self._reduced_cost

    @property
    def is_correct(self) -> bool:
        return self._reduced_cost is not NEVER

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExecutionResult):
            return NotImplemented
        return (
            self._final_distances == other._final_distances
            and self._correct_at_step == other._correct_at_step
        )

    def __repr__(self) -> str:
        return "ExecutionResult(reduced_cost={!r})".format(self._reduced_cost)


def initial_distances(instance: Instance) -> List[ExtendedDistance]:
    distances = [UNREACHABLE] * instance.vertex_count  # type: list
    distances[instance.source] = 0
    return distances


def relax_step(
    distances: Sequence[ExtendedDistance], edge: int, instance: Instance
) -> List[ExtendedDistance]:
    """D[head] := min(D[head], D[tail] + weight(edge)) on a copy of D"""
    digraph = instance.digraph
    if len(distances) != digraph.vertex_count:
        raise InvalidParameterError("one distance per vertex is required")
    if not 0 <= edge < digraph.edge_count:
        raise ScheduleMismatchError("edge index {} out of range".format(edge))
    updated = list(distances)
    tail, head = digraph.edge(edge)
    du = updated[tail]
    if du is UNREACHABLE:
        return updated
    candidate = check_int64(du + instance.weights[edge])
    dv = updated[head]
    if dv is UNREACHABLE or candidate < dv:
        updated[head] = candidate
    return updated


def iter_distances(
    instance: Instance, schedule: RelaxationSchedule
) -> Iterator[Tuple[ExtendedDistance, ...]]:
    """Distance vector after every step of the schedule, in order"""
    schedule.check(instance.digraph)
    distances = initial_distances(instance)
    for edge in schedule.steps.tolist():
        distances = relax_step(distances, edge, instance)
        yield tuple(distances)


def execute_schedule(
    instance: Instance,
    schedule: RelaxationSchedule,
    oracle: Optional[Sequence[ExtendedDistance]] = None,
) -> ExecutionResult:
    """Run the schedule from D[s] = 0 and measure its reduced cost.

    Distances never drop below the oracle values, so a vertex that reaches
    its oracle value stays correct; the run stops once every vertex is
    correct since no later step can change anything."""
    schedule.check(instance.digraph)
    if oracle is None:
        oracle = oracle_distances(instance)
    target = list(oracle)
    distances = initial_distances(instance)
    correct_at = [NEVER] * instance.vertex_count  # type: list
    pending = 0
    for v, d in enumerate(distances):
        if d == target[v]:
            correct_at[v] = 0
        else:
            pending += 1

    digraph = instance.digraph
    tails = digraph.tails.tolist()
    heads = digraph.heads.tolist()
    weights = instance.weights.weights
    position = 0
    for edge in schedule.steps.tolist():
        if not pending:
            break
        position += 1
        du = distances[tails[edge]]
        if du is UNREACHABLE:
            continue
        candidate = du + weights[edge]
        head = heads[edge]
        dv = distances[head]
        if dv is UNREACHABLE or candidate < dv:
            distances[head] = check_int64(candidate)
            if candidate == target[head]:
                correct_at[head] = position
                pending -= 1
    return ExecutionResult(distances, correct_at)


def _edge_directions(
    path: Sequence[int], vertex_order: Sequence[int]
) -> List[bool]:
    position = {v: rank for rank, v in enumerate(vertex_order)}
    directions = []
    for u, v in zip(path, path[1:]):
        if u == v:
            raise InvalidParameterError("consecutive path vertices coincide")
        directions.append(position[u] < position[v])
    return directions


def alternation_count(path: Sequence[int], vertex_order: Sequence[int]) -> int:
    """Number of maximal runs of same-direction edges along the path, where
    an edge is forward when its tail precedes its head in vertex_order"""
    directions = _edge_directions(path, vertex_order)
    if not directions:
        return 0
    return 1 + sum(1 for a, b in zip(directions, directions[1:]) if a != b)


def yen_rounds_needed(path: Sequence[int], vertex_order: Sequence[int]) -> int:
    """Rounds of Yen's schedule a zero-weight path needs to be relaxed in
    order.  Each round relaxes one forward block followed by one backward
    block, so a path opening with a backward block wastes its first forward
    half-round."""
    directions = _edge_directions(path, vertex_order)
    if not directions:
        return 0
    blocks = alternation_count(path, vertex_order)
    if directions[0]:
        return (blocks + 1) // 2
    return blocks // 2 + 1


def tree_alternation_count(
    parents: Sequence[Optional[int]], source: int, vertex_order: Sequence[int]
) -> int:
    """Largest block count over the root-to-leaf paths of a tree"""
    return max(
        (alternation_count(p, vertex_order) for p in tree_paths(parents, source)),
        default=0,
    )
