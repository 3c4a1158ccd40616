"""
Stage 1: Structure Analysis
Builds the modular decomposition tree and evaluates p(G).
"""
from state import PipelineState
from primegraph.md_tree import build_md_tree, modular_numbers
from primegraph.prime_bound import prime_bound
from stages import say
import config


def analysis_stage(state: PipelineState) -> PipelineState:
    """
    Stage 1: Structure Analysis

    Args:
        state: State with the parsed graph

    Returns:
        Updated state with tree, report and bound
    """
    say(state, "\n=== STAGE 1: STRUCTURE ANALYSIS ===")
    config.log_stage("STAGE 1: STRUCTURE ANALYSIS", "Building modular decomposition tree...")

    g = state["graph"]
    tree = build_md_tree(g) if g.order >= 1 else None
    report = modular_numbers(g, tree)
    bound = prime_bound(g, tree=tree, report=report)

    state["tree"] = tree
    state["report"] = report
    state["bound"] = bound

    say(state, f"Order {g.order}, {g.edge_count} edges")
    say(state, f"alpha_M={report.alpha_m}, omega_M={report.omega_m}, "
               f"iota={report.iota}, iota(complement)={report.iota_complement}")
    say(state, f"p(G)={bound.value} ({bound.case.value})")
    config.log_message(f"Report: {report.to_dict()}")
    config.log_message(f"Bound: {bound.to_dict()}")

    return state
