import io
import json

import pytest

from main import EXIT_BAD_INPUT, EXIT_CHECK_FAILED, EXIT_OK, CliConfig, main
from primegraph.errors import DomainError
from primegraph.graph import parse_graph6


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_json(capsys):
    code, data = run_json(capsys, "analyze", "C~")
    assert code == EXIT_OK
    assert data["bound"]["value"] == 3
    assert data["bound"]["case"] == "PowerOfTwoIsolated"
    assert data["report"]["omega_m"] == 4
    assert data["lower_bound_modular"] == 2
    assert data["upper_bound_modular"] == 3

    _, data = run_json(capsys, "analyze", "Ch")
    assert data["prime"] is True
    assert data["bound"]["value"] == 0
    assert data["lower_bound_modular"] is None

    _, data = run_json(capsys, "analyze", "C?")
    assert data["bound"]["value"] == 3
    assert data["report"]["iota"] == 4
    assert data["general_upper_bound"] == 3


def test_analyze_human(capsys):
    assert main(["analyze", "C~"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Order: 4" in out
    assert "p(G): 3 (PowerOfTwoIsolated)" in out
    assert "M(G): [{0,1,2,3} clique]" in out
    assert "extrapolated" not in out

    assert main(["analyze", "@"]) == EXIT_OK
    assert "p(G): 3 (TinyGraph) (extrapolated below 2 vertices)" in capsys.readouterr().out


def test_extend(capsys, tmp_path):
    code, data = run_json(capsys, "extend", "B?")
    assert code == EXIT_OK
    assert data["added_count"] == 2
    assert data["verified_prime"]

    _, data = run_json(capsys, "extend", "C~", "--mode", "stable-q")
    assert data["added_count"] == 3 and data["stable_added_set"]

    out = tmp_path / "cert.json"
    _, data = run_json(capsys, "extend", "Ch", "--out", str(out))
    assert data["added_count"] == 0
    assert parse_graph6(json.loads(out.read_text())["host"]).order == 4


def test_extend_outputs(capsys):
    assert main(["extend", "C~", "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("graph extension {")
    assert main(["extend", "C~", "--verify-cap", "5"]) == EXIT_CHECK_FAILED
    assert "Verified prime: False (skipped)" in capsys.readouterr().out


def test_oracle(capsys):
    code, data = run_json(capsys, "oracle", "C?")
    assert code == EXIT_OK
    assert data["p_value"] == 3
    main(["oracle", "C?", "--p-cap", "2"])
    assert "p=exceeds cap" in capsys.readouterr().out


def test_sweep(capsys):
    assert main(["sweep", "4"]) == EXIT_OK
    assert "formula-vs-oracle n=4: 64 graphs, 0 failures" in capsys.readouterr().out
    assert main(["sweep", "4", "--check", "tree-vs-bruteforce", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out.strip().splitlines()[-1])["failures"] == 0
    assert main(["sweep", "7"]) == EXIT_BAD_INPUT
    assert "SearchRefusedError" in capsys.readouterr().err


def test_bad_input(capsys):
    assert main(["analyze", "C"]) == EXIT_BAD_INPUT
    err = capsys.readouterr().err
    assert "Graph6ParseError" in err
    assert "byte offset 1" in err
    assert main(["extend", "C~", "--verify-cap", "0"]) == EXIT_BAD_INPUT


def test_edge_list_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "p4.txt"
    path.write_text("# path\nn 4\n0 1\n1 2\n2 3\n")
    _, data = run_json(capsys, "analyze", str(path))
    assert data["prime"] is True

    monkeypatch.setattr("sys.stdin", io.StringIO("C~\n"))
    _, data = run_json(capsys, "analyze")
    assert data["order"] == 4

    monkeypatch.setattr("sys.stdin", io.StringIO("n 2\n0 1\n"))
    _, data = run_json(capsys, "analyze", "-", "--input-format", "edgelist")
    assert data["edges"] == 1


def test_mdtree(capsys):
    assert main(["mdtree", "Bw", "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph mdtree {")
    _, data = run_json(capsys, "mdtree", "Ch")
    assert data["label"] == "prime"
    main(["mdtree", "Ch"])
    assert capsys.readouterr().out.splitlines()[0] == "prime {0,1,2,3}"


def test_verify(capsys):
    assert main(["verify", "C~"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "VERIFICATION PASSED" in out
    assert "=== STAGE 4: ORACLE ===" in out

    code, data = run_json(capsys, "verify", "Ch", "--mode", "stable-q")
    assert code == EXIT_OK
    assert data["certificate"]["stable_added_set"]
    assert data["oracle"] is None


def test_cli_config_validation():
    with pytest.raises(DomainError):
        CliConfig(output_format="yaml")
    with pytest.raises(DomainError):
        CliConfig(jobs=0)


def test_malformed_edge_list_exits_cleanly(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n 3\n0 ²\n", encoding="utf-8")
    assert main(["analyze", str(path)]) == EXIT_BAD_INPUT
    err = capsys.readouterr().err
    assert "EdgeListParseError" in err
    assert "(line 2)" in err


def test_file_option_and_name_precedence(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "Ch").write_text("C~\n")
    _, data = run_json(capsys, "analyze", "Ch")
    assert data["prime"] is False

    (tmp_path / "p4.g6").write_text("Ch\n")
    _, data = run_json(capsys, "analyze", "--file", "p4.g6")
    assert data["prime"] is True

    assert main(["analyze", "Ch", "--file", "p4.g6"]) == EXIT_BAD_INPUT
    assert main(["analyze", "--file", "missing.g6"]) == EXIT_BAD_INPUT
    assert "cannot read missing.g6" in capsys.readouterr().err
