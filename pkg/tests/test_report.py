import json
import math

import numpy as np

from windarea.report import (
    SCHEMA_VERSION,
    ExperimentReport,
    comparable_json,
    stable_json,
)


def test_stable_json_is_canonical():
    a = stable_json({"b": 1, "a": 2})
    b = stable_json({"a": 2, "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert json.loads(a) == {"a": 2, "b": 1}


def test_stable_json_cleans_numpy_and_nonfinite():
    doc = {
        "x": np.float64(1.5),
        "n": np.int64(7),
        "bad": math.nan,
        "inf": math.inf,
        "nested": [np.float64(2.0), {"y": -math.inf}],
    }
    out = json.loads(stable_json(doc))
    assert out["x"] == 1.5 and out["n"] == 7
    assert out["bad"] is None and out["inf"] is None
    assert out["nested"] == [2.0, {"y": None}]


def test_report_round_trip(tmp_path):
    rep = ExperimentReport(
        command="demo",
        params={"steps": 4},
        estimates={"value": 1.0},
        diagnostics={},
        artifacts={"table": "t.csv"},
        wall_seconds=0.25,
        workers=2,
    )
    text = rep.canonical_json()
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA_VERSION
    assert doc["timing"] == {"wall_seconds": 0.25, "workers": 2}
    dest = tmp_path / "demo.json"
    rep.write(dest)
    assert dest.read_text() == text


def test_comparable_json_drops_timing_only():
    rep_a = ExperimentReport("c", {"p": 1}, {"e": 2.0}, {}, {}, 0.1, 1)
    rep_b = ExperimentReport("c", {"p": 1}, {"e": 2.0}, {}, {}, 9.9, 8)
    assert rep_a.canonical_json() != rep_b.canonical_json()
    assert comparable_json(rep_a.canonical_json()) == comparable_json(
        rep_b.canonical_json()
    )
    kept = json.loads(comparable_json(rep_a.canonical_json()))
    assert "timing" not in kept
    assert kept["params"] == {"p": 1}
