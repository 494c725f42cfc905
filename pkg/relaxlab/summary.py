import csv
import dataclasses
import json
import math

from typing import Iterable, Optional, TextIO, Tuple

import numpy as np
from scipy import stats

CSV_COLUMNS = (
    "trial_seed",
    "n",
    "m",
    "schedule_len",
    "reduced_cost",
    "never_flag",
    "millis",
)


@dataclasses.dataclass(frozen=True)
class TrialRecord:
    """Measurements of one trial; ``reduced_cost`` is None for NEVER.

    Wall time does not take part in equality, so reruns compare equal."""

    trial_seed: int
    n: int
    m: int
    schedule_len: int
    reduced_cost: Optional[int]
    milestones: Tuple[Optional[int], ...] = ()
    millis: float = dataclasses.field(default=0.0, compare=False)

    @property
    def never(self) -> bool:
        return self.reduced_cost is None

    def to_row(self) -> dict:
        return {
            "trial_seed": self.trial_seed,
            "n": self.n,
            "m": self.m,
            "schedule_len": self.schedule_len,
            "reduced_cost": "NEVER" if self.never else self.reduced_cost,
            "never_flag": int(self.never),
            "millis": "{:.3f}".format(self.millis),
        }


class ExperimentSummary:
    """Aggregates trial records into arrays of reduced costs.

    NEVER trials are counted separately and left out of every statistic."""

    def __init__(self, records: Iterable[TrialRecord]) -> None:
        self._records = tuple(records)
        finite = [r.reduced_cost for r in self._records if not r.never]
        self._costs = np.array(finite, dtype=np.float64)

    @property
    def records(self) -> Tuple[TrialRecord, ...]:
        return self._records

    @property
    def reduced_costs(self) -> np.ndarray:
        """Finite reduced costs in trial order"""
        return self._costs

    @property
    def never_count(self) -> int:
        return len(self._records) - int(self._costs.size)

    @property
    def mean(self) -> float:
        if not self._costs.size:
            return math.nan
        return float(self._costs.mean())

    @property
    def stddev(self) -> float:
        """Sample standard deviation (n - 1 denominator)"""
        if self._costs.size < 2:
            return math.nan
        return float(self._costs.std(ddof=1))

    def lower_confidence_bound(self, confidence: float = 0.95) -> float:
        """One-sided Student-t lower bound on the expected reduced cost"""
        k = self._costs.size
        if k < 2:
            return math.nan
        margin = stats.t.ppf(confidence, k - 1) * self.stddev / math.sqrt(k)
        return self.mean - float(margin)

    def as_dict(self) -> dict:
        return {
            "trials": len(self._records),
            "mean": self.mean,
            "stddev": self.stddev,
            "never_count": self.never_count,
            "records": [dataclasses.asdict(r) for r in self._records],
        }

    def dump_csv(self, f: TextIO) -> None:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in self._records:
            writer.writerow(record.to_row())

    def dump_json(self, f: TextIO) -> None:
        json.dump(self.as_dict(), f)
        f.write("\n")

    def __repr__(self) -> str:
        return "ExperimentSummary(trials={}, mean={:.3f}, never={})".format(
            len(self._records), self.mean, self.never_count
        )
