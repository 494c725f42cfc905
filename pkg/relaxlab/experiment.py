"""Seeded Monte-Carlo experiments and exhaustive desk-scale minimax search.

Trial ``k`` of an experiment uses seed ``base_seed + k`` for its instance,
so any single trial can be reproduced in isolation."""

import abc
import concurrent.futures
import dataclasses
import functools
import itertools
import json
import logging
import math
import time

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from relaxlab.adversary import hamiltonian_path_instance, sample_random_path_instance
from relaxlab.engine import NEVER, execute_schedule, initial_distances, relax_step
from relaxlab.errors import ConfigError, InvalidParameterError, RelaxLabError, TrialError
from relaxlab.graph import Instance, complete_digraph, potential_weights
from relaxlab.hard import (
    CompleteBipartiteRegime,
    DenseClosRegime,
    NetworkRegime,
    assemble_hard_graph,
    sample_hard_instance,
)
from relaxlab.oracle import oracle_distances
from relaxlab.schedule import (
    EmptySchedule,
    RandomizedYen,
    RelaxationSchedule,
    RoundRobin,
    ScheduleGenerator,
    WithFallback,
    Yen,
)
from relaxlab.summary import ExperimentSummary, TrialRecord

logger = logging.getLogger(__name__)

MAX_BRUTEFORCE_LENGTH = 8


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Which distribution to sample, which schedule to run, how often"""

    generator: Dict[str, Any]
    schedule: Dict[str, Any]
    trials: int = 1
    base_seed: int = 0
    output: Optional[str] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        for name, section, known in (
            ("generator", self.generator, _GENERATORS),
            ("schedule", self.schedule, _SCHEDULES),
        ):
            if not isinstance(section, dict) or section.get("kind") not in known:
                raise ConfigError(
                    "{} kind must be one of {}".format(name, sorted(known))
                )

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "ExperimentConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - fields
        if unknown:
            raise ConfigError("unknown config keys: {}".format(sorted(unknown)))
        try:
            return cls(**doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def replace(self, **changes: Any) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


def load_config(f: TextIO) -> ExperimentConfig:
    try:
        doc = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError("invalid JSON: {}".format(exc)) from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    return ExperimentConfig.from_dict(doc)


def _params(section: Dict[str, Any], allowed: Sequence[str]) -> Dict[str, Any]:
    params = {k: v for k, v in section.items() if k != "kind"}
    unknown = set(params) - set(allowed)
    if unknown:
        raise ConfigError(
            "{}: unknown parameters {}".format(section["kind"], sorted(unknown))
        )
    return params


class InstanceGenerator(abc.ABC):
    """Draws one instance per seed, together with the vertices whose
    correction steps are recorded as milestones"""

    def __call__(self, seed: int) -> Tuple[Instance, List[int]]:
        return self._generate(seed)

    @abc.abstractmethod
    def _generate(self, seed: int) -> Tuple[Instance, List[int]]:
        """Subclasses will override this functionality"""


class RandomPathGenerator(InstanceGenerator):
    """Uniform Hamiltonian zero path in a complete digraph; milestones are
    the path vertices at even positions"""

    def __init__(self, n: int, source: int = 0) -> None:
        self._n = n
        self._source = source

    def _generate(self, seed: int) -> Tuple[Instance, List[int]]:
        instance, path = sample_random_path_instance(self._n, self._source, seed)
        return instance, path[2::2]


class PotentialGenerator(InstanceGenerator):
    """Complete digraph with potential-reweighted random weights"""

    def __init__(self, n: int, slack_max: int = 10, potential_max: int = 10) -> None:
        self._digraph = complete_digraph(n)
        self._slack_max = slack_max
        self._potential_max = potential_max

    def _generate(self, seed: int) -> Tuple[Instance, List[int]]:
        weights = potential_weights(
            self._digraph, seed, self._slack_max, self._potential_max
        )
        return Instance(self._digraph, 0, weights), []


class SparseHardGenerator(InstanceGenerator):
    """Samples of the hard distribution over one assembled graph; milestones
    are the heads of the chosen biregular edges"""

    def __init__(
        self,
        n: int,
        m: int,
        regime: str = "complete-bipartite",
        eps: Any = 1,
        capacity: Optional[int] = None,
        degree: Optional[int] = None,
    ) -> None:
        self.graph = assemble_hard_graph(
            n, m, make_regime(regime, eps), capacity=capacity, degree=degree
        )

    def _generate(self, seed: int) -> Tuple[Instance, List[int]]:
        sample = sample_hard_instance(self.graph, seed)
        return sample.instance, sample.milestone_vertices()


def make_regime(name: str, eps: Any = 1) -> NetworkRegime:
    if name == CompleteBipartiteRegime.name:
        return CompleteBipartiteRegime()
    if name == DenseClosRegime.name:
        try:
            eps = Fraction(eps)
        except (TypeError, ValueError) as exc:
            raise ConfigError("eps must be a number or fraction") from exc
        return DenseClosRegime(eps)
    raise ConfigError("unknown regime {!r}".format(name))


_GENERATORS = {
    "random-path": (RandomPathGenerator, ("n", "source")),
    "potential": (PotentialGenerator, ("n", "slack_max", "potential_max")),
    "sparse-hard": (
        SparseHardGenerator,
        ("n", "m", "regime", "eps", "capacity", "degree"),
    ),
}

_SCHEDULES = ("round-robin", "yen", "randomized-yen", "empty")


def make_generator(section: Dict[str, Any]) -> InstanceGenerator:
    cls, allowed = _GENERATORS[section["kind"]]
    try:
        return cls(**_params(section, allowed))
    except TypeError as exc:
        raise ConfigError("{}: {}".format(section["kind"], exc)) from exc


def schedule_seed(trial_seed: int) -> int:
    """Seed for a per-trial random schedule, independent of the instance
    stream that uses trial_seed directly"""
    return int(np.random.SeedSequence([trial_seed, 1]).generate_state(1)[0])


def make_schedule_generator(section: Dict[str, Any], trial_seed: int) -> ScheduleGenerator:
    kind = section["kind"]
    fallback = bool(section.get("fallback", False))
    if kind == "round-robin":
        params = _params(section, ("rounds", "fallback"))
        generator = RoundRobin(rounds=params.get("rounds"))
    elif kind == "yen":
        params = _params(section, ("rounds", "vertex_order", "fallback"))
        generator = Yen(
            rounds=params.get("rounds"), vertex_order=params.get("vertex_order")
        )
    elif kind == "randomized-yen":
        params = _params(section, ("rounds", "seed", "fallback"))
        seed = params.get("seed")
        if seed is None:
            seed = schedule_seed(trial_seed)
        generator = RandomizedYen(seed, rounds=params.get("rounds"))
    else:
        _params(section, ("fallback",))
        generator = EmptySchedule()
    return WithFallback(generator) if fallback else generator


class _TrialRunner:
    """Holds the per-process state of an experiment: the instance generator
    and schedules that do not depend on the trial"""

    def __init__(self, config: ExperimentConfig) -> None:
        self._config = config
        self._generator = make_generator(config.generator)
        self._varies = config.schedule["kind"] == "randomized-yen" and (
            "seed" not in config.schedule
        )
        self._cache = {}  # type: Dict[str, RelaxationSchedule]

    @property
    def guaranteed_correct(self) -> bool:
        return make_schedule_generator(self._config.schedule, 0).guaranteed_correct

    def _schedule(self, instance: Instance, trial_seed: int) -> RelaxationSchedule:
        digraph = instance.digraph
        if not self._varies and digraph.fingerprint in self._cache:
            return self._cache[digraph.fingerprint]
        generator = make_schedule_generator(self._config.schedule, trial_seed)
        schedule = generator(digraph)
        if not self._varies:
            self._cache[digraph.fingerprint] = schedule
        return schedule

    def run(self, k: int) -> TrialRecord:
        trial_seed = self._config.base_seed + k
        started = time.perf_counter()
        try:
            instance, milestone_vertices = self._generator(trial_seed)
            schedule = self._schedule(instance, trial_seed)
            result = execute_schedule(instance, schedule)
        except RelaxLabError as exc:
            raise TrialError(trial_seed, exc) from exc
        millis = (time.perf_counter() - started) * 1000.0
        cost = result.reduced_cost
        record = TrialRecord(
            trial_seed=trial_seed,
            n=instance.vertex_count,
            m=instance.digraph.edge_count,
            schedule_len=len(schedule),
            reduced_cost=None if cost is NEVER else cost,
            milestones=tuple(
                None if step is NEVER else step
                for step in (result.correct_at_step[v] for v in milestone_vertices)
            ),
            millis=millis,
        )
        logger.debug("trial %d: reduced cost %s", trial_seed, cost)
        return record


_worker_runner = None  # type: Optional[_TrialRunner]


def _init_worker(config: ExperimentConfig) -> None:
    global _worker_runner
    _worker_runner = _TrialRunner(config)


def _run_in_worker(k: int) -> TrialRecord:
    return _worker_runner.run(k)


def estimate_mean_reduced_cost(config: ExperimentConfig) -> ExperimentSummary:
    """Run every trial of the experiment and summarize the reduced costs"""
    logger.info(
        "experiment: %s / %s, %d trials from seed %d",
        config.generator["kind"],
        config.schedule["kind"],
        config.trials,
        config.base_seed,
    )
    runner = _TrialRunner(config)
    if config.workers == 1:
        records = [runner.run(k) for k in range(config.trials)]
    else:
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=_init_worker,
            initargs=(config,),
        ) as executor:
            chunksize = max(1, config.trials // (4 * config.workers))
            records = list(
                executor.map(_run_in_worker, range(config.trials), chunksize=chunksize)
            )
    summary = ExperimentSummary(records)
    if summary.never_count and runner.guaranteed_correct:
        logger.warning(
            "%d trials never finished under a schedule claimed correct",
            summary.never_count,
        )
    logger.info("experiment done: %r", summary)
    return summary


def bruteforce_min_expected_cost(
    n: int = 3, max_len: int = 6
) -> Tuple[Fraction, RelaxationSchedule]:
    """Smallest average reduced cost, over the Hamiltonian zero-path
    weightings of the complete digraph, of any schedule of at most max_len
    steps that is correct on all of them, and a schedule achieving it"""
    if n != 3:
        raise InvalidParameterError("exhaustive search is limited to n = 3")
    if not 0 <= max_len <= MAX_BRUTEFORCE_LENGTH:
        raise InvalidParameterError(
            "max_len must lie in [0, {}]".format(MAX_BRUTEFORCE_LENGTH)
        )
    digraph = complete_digraph(n)
    instances = [
        hamiltonian_path_instance(n, [0] + list(rest))
        for rest in itertools.permutations(range(1, n))
    ]
    targets = [tuple(oracle_distances(i)) for i in instances]

    @functools.lru_cache(maxsize=None)
    def best(states: Tuple[tuple, ...], remaining: int) -> Tuple[float, int]:
        pending = sum(1 for s, t in zip(states, targets) if s != t)
        if not pending:
            return 0, -1
        if not remaining:
            return math.inf, -1
        best_cost, best_edge = math.inf, -1
        for e in range(digraph.edge_count):
            following = tuple(
                tuple(relax_step(s, e, inst)) for s, inst in zip(states, instances)
            )
            cost = pending + best(following, remaining - 1)[0]
            if cost < best_cost:
                best_cost, best_edge = cost, e
        return best_cost, best_edge

    start = tuple(tuple(initial_distances(i)) for i in instances)
    total, _ = best(start, max_len)
    if total == math.inf:
        raise InvalidParameterError(
            "no schedule of length <= {} is correct on every weighting".format(
                max_len
            )
        )
    steps = []
    states, remaining = start, max_len
    while True:
        _, e = best(states, remaining)
        if e < 0:
            break
        steps.append(e)
        states = tuple(
            tuple(relax_step(s, e, inst)) for s, inst in zip(states, instances)
        )
        remaining -= 1
    return Fraction(int(total), len(instances)), RelaxationSchedule(steps, digraph)
