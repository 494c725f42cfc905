import csv
import json

import pytest

from relaxlab.adversary import deterministic_floor
from relaxlab.cli import main
from relaxlab.summary import CSV_COLUMNS


def _run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "graph.json"
    assert _run("gen-graph", "complete", "--n", 5, "--seed", 3, "--out", path) == 0
    return path


def test_generate_and_run(tmp_path, graph_file):
    schedule = tmp_path / "schedule.json"
    assert _run("gen-schedule", "yen", "--graph", graph_file, "--out", schedule) == 0
    result = tmp_path / "result.json"
    assert _run("run", "--graph", graph_file, "--schedule", schedule, "--out", result) == 0
    doc = json.loads(result.read_text())
    assert isinstance(doc["reduced_cost"], int)
    assert len(doc["final_distances"]) == 5


def test_fallback_schedule(tmp_path, graph_file):
    short = tmp_path / "short.json"
    full = tmp_path / "full.json"
    _run("gen-schedule", "round-robin", "--rounds", 1, "--graph", graph_file, "--out", short)
    assert _run(
        "gen-schedule", "fallback", "--graph", graph_file, "--schedule", short, "--out", full
    ) == 0
    assert len(json.loads(full.read_text())["steps"]) == 5 * 20


def test_adversary_command(tmp_path):
    graph = tmp_path / "k4.json"
    schedule = tmp_path / "rr.json"
    out = tmp_path / "adversary.json"
    _run("gen-graph", "complete", "--n", 4, "--weights", "zero", "--out", graph)
    _run("gen-schedule", "round-robin", "--graph", graph, "--out", schedule)
    assert _run("adversary", "--n", 4, "--schedule", schedule, "--out", out) == 0
    adversarial = tmp_path / "adversarial.json"
    adversarial.write_text(out.read_text())
    result = tmp_path / "result.json"
    _run("run", "--graph", adversarial, "--schedule", schedule, "--out", result)
    assert json.loads(result.read_text())["reduced_cost"] >= deterministic_floor(4)


def test_mismatched_schedule_fails(tmp_path, graph_file, capsys):
    other = tmp_path / "k4.json"
    schedule = tmp_path / "schedule.json"
    _run("gen-graph", "complete", "--n", 4, "--out", other)
    _run("gen-schedule", "yen", "--graph", other, "--out", schedule)
    assert _run("run", "--graph", graph_file, "--schedule", schedule) == 1
    assert "relaxlab: error:" in capsys.readouterr().err


def test_missing_file_fails(tmp_path, capsys):
    assert _run("run", "--graph", tmp_path / "nope.json", "--schedule", tmp_path / "x") == 1
    assert "relaxlab: error:" in capsys.readouterr().err


def test_network_commands(tmp_path, capsys):
    network = tmp_path / "network.json"
    assert _run("network", "build", "--capacity", 4, "--eps", "1/2", "--out", network) == 0
    assert _run("network", "route", "--network", network, "--pairs", "0:3,1:2,3:0") == 0
    paths = json.loads(capsys.readouterr().out)["paths"]
    assert len(paths) == 3
    assert _run("network", "verify", "--network", network) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict == {"rearrangeable": True, "checked": 209, "counterexample": None}
    assert _run("network", "route", "--network", network, "--pairs", "0:1,0:2") == 1


def test_sample_commands(capsys):
    assert _run("sample", "random-path", "--n", 6, "--seed", 2) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [e[2] for e in doc["edges"]].count(0) == 5
    assert _run(
        "sample", "sparse-hard", "--n", 12, "--m", 30, "--capacity", 4, "--degree", 2
    ) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["S"] == [0, 1, 2, 3]
    assert len(doc["edge_classes"]) == 30


def test_sparse_hard_graph(capsys):
    assert _run("gen-graph", "sparse-hard", "--n", 12, "--m", 30) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["edges"]) == 30
    assert doc["degree"] == 3


def test_experiment_csv(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "generator": {"kind": "random-path", "n": 5},
                "schedule": {"kind": "round-robin"},
                "trials": 4,
            }
        )
    )
    out = tmp_path / "trials.csv"
    assert _run("experiment", "--config", config, "--seed", 10, "--out", out) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert [r["trial_seed"] for r in rows] == ["10", "11", "12", "13"]
    assert all(r["never_flag"] == "0" for r in rows)


def test_experiment_json(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(
        '{"generator": {"kind": "potential", "n": 4}, "schedule": {"kind": "yen"}}'
    )
    assert _run("experiment", "--config", config, "--trials", 3, "--format", "json") == 0
    assert json.loads(capsys.readouterr().out)["trials"] == 3


def test_bad_config_fails(tmp_path):
    config = tmp_path / "config.json"
    config.write_text('{"generator": {"kind": "potential", "n": 4}}')
    assert _run("experiment", "--config", config) == 1


def test_usage_errors():
    with pytest.raises(SystemExit):
        _run("gen-graph", "complete")
    with pytest.raises(SystemExit):
        _run("network", "route")
    with pytest.raises(SystemExit):
        _run("network", "build", "--eps", "half")


@pytest.mark.parametrize("pairs", ["0:", "a:b", "3"])
def test_malformed_pairs_are_usage_errors(tmp_path, pairs):
    network = tmp_path / "network.json"
    _run("network", "build", "--capacity", 2, "--out", network)
    with pytest.raises(SystemExit) as info:
        _run("network", "route", "--network", network, "--pairs", pairs)
    assert info.value.code == 2
