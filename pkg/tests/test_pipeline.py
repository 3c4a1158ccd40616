import json
import os

import config
from main import CliConfig, build_graph, initial_state
from primegraph.graph import Graph
from stages.verification_stage import should_run_oracle


def run(text, mode="optimal", **options):
    cli = CliConfig(output_format="json", **options)
    return build_graph().invoke(initial_state(text, cli, mode),
                                config={"recursion_limit": config.RECURSION_LIMIT})


def test_optimal_run_passes_and_matches_oracle():
    state = run("C~")
    assert state["bound"].value == 3
    assert state["certificate"].added_count == 3
    assert state["verification_passed"]
    assert state["verification_feedback"] == "ok"
    assert state["oracle_verdict"].p_value == 3
    assert state["oracle_agrees"] is True

    with open(state["output_path"], encoding="utf-8") as f:
        saved = json.load(f)
    assert state["output_path"] == os.path.join(config.OUTPUT_DIR, "certificate.json")
    assert saved["graph"] == "C~"
    assert saved["bound"]["case"] == "PowerOfTwoIsolated"
    assert saved["certificate"]["added_count"] == 3
    assert saved["oracle_agrees"] is True


def test_stable_mode_skips_oracle(tmp_path):
    out = tmp_path / "q.json"
    state = run("Ch", mode="stable-q", out=str(out))
    assert state["certificate"].stable_added_set
    assert state["certificate"].added_count == 2
    assert state["verification_passed"]
    assert state["oracle_verdict"] is None
    assert json.loads(out.read_text())["mode"] == "stable-q"


def test_guard_skips_oracle_for_large_graphs():
    state = run("n 8\n")
    assert state["bound"].value == 4
    assert state["verification_passed"]
    assert state["oracle_verdict"] is None
    assert state["oracle_agrees"] is None


def test_unverified_host_fails_verification():
    state = run("C~", verify_cap=4)
    assert not state["verification_passed"]
    assert "skipped" in state["verification_feedback"]
    assert state["oracle_agrees"] is True


def test_oracle_decision():
    base = {"mode": "optimal", "p_cap": None, "verbose": False}
    assert should_run_oracle({**base, "graph": Graph.empty(7)}) == "oracle"
    assert should_run_oracle({**base, "graph": Graph.empty(8)}) == "continue"
    assert should_run_oracle({**base, "graph": Graph.empty(8), "p_cap": 2}) == "oracle"
    assert should_run_oracle({**base, "mode": "stable-q", "graph": Graph.empty(3)}) == "continue"


def test_pipeline_log_is_written():
    config.init_log()
    try:
        run("C?")
    finally:
        config.close_log()
    with open(config.PIPELINE_LOG_PATH, encoding="utf-8") as f:
        log = f.read()
    for stage in ("STAGE 0", "STAGE 1", "STAGE 2", "STAGE 3", "STAGE 4", "STAGE 5"):
        assert stage in log
    assert "Decision: running oracle" in log


def test_extension_errors_are_recorded():
    state = run("@", mode="stable-q")
    assert state["certificate"] is None
    assert "at least 2 vertices" in state["extension_error"]
    assert not state["verification_passed"]
    assert state["verification_feedback"].startswith("no certificate")
    with open(state["output_path"], encoding="utf-8") as f:
        assert json.load(f)["certificate"] is None
