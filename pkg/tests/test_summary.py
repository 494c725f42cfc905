import csv
import io
import json
import math

import pytest

from relaxlab.summary import CSV_COLUMNS, ExperimentSummary, TrialRecord


@pytest.fixture
def summary():
    return ExperimentSummary(
        [
            TrialRecord(0, 4, 12, 36, 10, (4,), millis=1.5),
            TrialRecord(1, 4, 12, 36, None, (None,), millis=2.0),
            TrialRecord(2, 4, 12, 36, 14, (6,), millis=0.5),
            TrialRecord(3, 4, 12, 36, 12, (5,), millis=0.7),
        ]
    )


def test_statistics(summary):
    assert summary.never_count == 1
    assert summary.reduced_costs.tolist() == [10.0, 14.0, 12.0]
    assert summary.mean == pytest.approx(12.0)
    assert summary.stddev == pytest.approx(2.0)
    bound = summary.lower_confidence_bound(0.95)
    # t(0.95, 2) = 2.919986
    assert bound == pytest.approx(12.0 - 2.919986 * 2.0 / math.sqrt(3), rel=1e-5)


def test_small_samples():
    empty = ExperimentSummary([])
    assert math.isnan(empty.mean)
    one = ExperimentSummary([TrialRecord(0, 2, 2, 2, 1)])
    assert one.mean == 1.0
    assert math.isnan(one.stddev)
    assert math.isnan(one.lower_confidence_bound())


def test_wall_time_is_not_compared():
    assert TrialRecord(0, 2, 2, 2, 1, millis=1.0) == TrialRecord(0, 2, 2, 2, 1, millis=9.0)
    assert TrialRecord(0, 2, 2, 2, 1) != TrialRecord(0, 2, 2, 2, None)


def test_csv(summary):
    f = io.StringIO()
    summary.dump_csv(f)
    rows = list(csv.reader(io.StringIO(f.getvalue())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1] == ["0", "4", "12", "36", "10", "0", "1.500"]
    assert rows[2][4:6] == ["NEVER", "1"]
    assert len(rows) == 5


def test_json(summary):
    f = io.StringIO()
    summary.dump_json(f)
    doc = json.loads(f.getvalue())
    assert doc["trials"] == 4
    assert doc["never_count"] == 1
    assert doc["records"][1]["reduced_cost"] is None
    assert doc["records"][0]["milestones"] == [4]
