import json

import numpy as np
import pytest

from weakschmidt.logging import TraceLogger
from weakschmidt.utils.logging import record_analysis_event


def test_complete_trace_folds_events():
    logger = TraceLogger()
    logger.log_event({"op": "spectral_ensemble", "payload": {"rank": 2}})
    logger.log_complete_trace({"command": "detect"})
    traces = logger.get_current_traces()
    assert len(traces) == 1
    assert traces[0]["command"] == "detect"
    assert traces[0]["run_id"] == logger.run_id
    assert traces[0]["events"][0]["op"] == "spectral_ensemble"
    assert logger.events == []


def test_trace_without_events_has_no_events_key():
    logger = TraceLogger()
    logger.log_complete_trace({"command": "bell weyl"})
    assert "events" not in logger.get_current_traces()[0]


def test_save_jsonl_appends(tmp_path):
    logger = TraceLogger()
    logger.log_complete_trace({"command": "schmidt", "residual": np.float64(1e-16), "z": 1j})
    path = str(tmp_path / "traces.jsonl")
    assert logger.save_all_traces(path) == 1
    assert logger.save_all_traces(path) == 1
    lines = (tmp_path / "traces.jsonl").read_text().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["z"] == [0.0, 1.0]


def test_save_json_overwrites(tmp_path):
    logger = TraceLogger()
    logger.log_complete_trace({"command": "phase"})
    path = str(tmp_path / "traces.json")
    logger.save_all_traces(path)
    logger.save_all_traces(path)
    saved = json.loads((tmp_path / "traces.json").read_text())
    assert len(saved) == 1


def test_save_defaults_to_trace_dir(tmp_path):
    logger = TraceLogger(trace_dir=tmp_path / "out")
    logger.log_complete_trace({"command": "generate dense"})
    assert logger.save_all_traces() == 1
    files = list((tmp_path / "out").glob("traces_*.jsonl"))
    assert len(files) == 1


def test_save_without_destination_raises():
    logger = TraceLogger()
    assert logger.save_all_traces() == 0
    logger.log_complete_trace({"command": "detect"})
    with pytest.raises(ValueError):
        logger.save_all_traces()


def test_debug_only_when_verbose(capsys):
    TraceLogger().debug("quiet")
    TraceLogger(verbose=True).debug("loud")
    TraceLogger().error("bad input")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "quiet" not in captured.err
    assert "[DEBUG] loud" in captured.err
    assert "[ERROR] bad input" in captured.err


def test_record_analysis_event():
    history = []
    logger = TraceLogger()
    record_analysis_event(history, "weak_criterion", {"residual": 0.0}, logger, metadata={"n": 3})
    record_analysis_event(history, "verdict", {"schmidt_correlated": True}, None)
    assert history[0] == {"op": "weak_criterion", "payload": {"residual": 0.0}, "metadata": {"n": 3}}
    assert history[1] == {"op": "verdict", "payload": {"schmidt_correlated": True}}
    assert logger.events == [history[0]]
