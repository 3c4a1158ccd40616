"""
Stage 3: Verification
Re-checks the certificate independently of the construction that produced it.
"""
from state import PipelineState
from primegraph.graph import induced_subgraph
from primegraph.oracle import search_bits
from stages import say
import config


def _problems(state: PipelineState) -> list:
    cert = state.get("certificate")
    if cert is None:
        return [f"no certificate: {state.get('extension_error')}"]
    g = state["graph"]
    problems = []
    base, _ = induced_subgraph(cert.host, range(g.order))
    if base != g:
        problems.append("host does not induce the input graph on its first vertices")
    if not cert.verified_prime:
        problems.append(f"host primality not established (verification: {cert.verification})")
    if state["mode"] == "optimal" and cert.added_count != state["bound"].value:
        problems.append(f"added {cert.added_count} vertices, p(G) is {state['bound'].value}")
    if state["mode"] == "stable-q" and not cert.stable_added_set:
        problems.append("added vertices are not a stable set")
    return problems


def verification_stage(state: PipelineState) -> PipelineState:
    say(state, "\n=== STAGE 3: VERIFICATION ===")
    config.log_stage("STAGE 3: VERIFICATION", "Checking certificate...")

    problems = _problems(state)
    state["verification_passed"] = not problems
    state["verification_feedback"] = "; ".join(problems) if problems else "ok"

    say(state, f"Verification: {'PASSED' if not problems else 'FAILED'}")
    for problem in problems:
        say(state, f"  - {problem}")
    config.log_message(f"Verification passed: {not problems}")
    config.log_message(f"Feedback: {state['verification_feedback']}")

    return state


def should_run_oracle(state: PipelineState) -> str:
    """
    Decision function after verification.

    Returns:
        "oracle" if the brute-force search is feasible, "continue" otherwise
    """
    if state["mode"] != "optimal":
        config.log_message("\nDecision: stable-q mode, skipping oracle")
        return "continue"
    p_cap = state.get("p_cap") or config.ORACLE_P_CAP
    bits = search_bits(state["graph"].order, p_cap)
    if bits > config.ORACLE_MAX_BITS:
        say(state, f"\nOracle skipped: {bits} search bits exceed the guard of {config.ORACLE_MAX_BITS}.")
        config.log_message(f"\nDecision: oracle guard refuses ({bits} bits), skipping oracle")
        return "continue"
    config.log_message("\nDecision: running oracle")
    return "oracle"
