"""
Shared fixtures: named graphs and an isolated output location per test.
"""
import pytest

import config
from primegraph.graph import Graph, disjoint_union, substitute


@pytest.fixture(autouse=True)
def isolated_outputs(tmp_path, monkeypatch):
    intermediate = tmp_path / "intermediate_outputs"
    monkeypatch.setattr(config, "OUTPUT_DIR", str(tmp_path / "outputs"))
    monkeypatch.setattr(config, "INTERMEDIATE_DIR", str(intermediate))
    monkeypatch.setattr(config, "PIPELINE_LOG_PATH", str(intermediate / "pipeline_log.txt"))
    monkeypatch.setattr(config, "_log_ready", False)


@pytest.fixture
def p4():
    return Graph.path(4)


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def two_k2():
    return Graph.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture
def k2_plus_k1():
    return Graph.from_edges(3, [(0, 1)])


@pytest.fixture
def p4_into_p4():
    """P4 substituted for an inner vertex of P4: copy on 0..3, vertices 4, 5 see the copy, edge 5-6."""
    return substitute(Graph.path(4), 1, Graph.path(4))


@pytest.fixture
def k4_union_p4():
    return disjoint_union(Graph.complete(4), Graph.path(4))
