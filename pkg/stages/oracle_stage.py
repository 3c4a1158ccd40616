"""
Stage 4: Oracle
Exhaustive minimal-extension search, compared with the closed form.
"""
from state import PipelineState
from primegraph.oracle import brute_force_prime_bound
from stages import say
import config


def oracle_stage(state: PipelineState) -> PipelineState:
    say(state, "\n=== STAGE 4: ORACLE ===")
    config.log_stage("STAGE 4: ORACLE", "Searching for a minimal prime extension...")

    verdict = brute_force_prime_bound(state["graph"], p_cap=state.get("p_cap"))
    expected = state["bound"].value
    if verdict.exceeds_cap:
        # nothing found up to the cap is consistent only with a larger bound
        agrees = expected > verdict.p_cap
    else:
        agrees = verdict.p_value == expected

    state["oracle_verdict"] = verdict
    state["oracle_agrees"] = agrees

    found = "exceeds cap" if verdict.exceeds_cap else verdict.p_value
    say(state, f"Oracle p={found} after {verdict.search_space_size} candidates; formula p={expected}")
    say(state, f"Oracle {'agrees' if agrees else 'DISAGREES'}")
    config.log_message(f"Oracle verdict: {verdict.to_dict()}")
    config.log_message(f"Agrees with formula: {agrees}")

    return state
