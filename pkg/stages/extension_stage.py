"""
Stage 2: Extension
Builds the prime extension for the requested mode.
"""
import traceback

from state import PipelineState
from primegraph.constructions import extend
from primegraph.errors import PrimeExtensionError
from stages import say
import config


def extension_stage(state: PipelineState) -> PipelineState:
    say(state, "\n=== STAGE 2: EXTENSION ===")
    config.log_stage("STAGE 2: EXTENSION", f"Mode: {state['mode']}")

    try:
        cert = extend(state["graph"], state["mode"], verify_cap=state.get("verify_cap"))
        state["certificate"] = cert
        state["extension_error"] = None
        say(state, f"Added {cert.added_count} vertices via {cert.construction_tag.value}")
        config.log_message(f"Certificate: {cert.to_dict()}")

    except PrimeExtensionError as e:
        error_msg = f"ERROR: {type(e).__name__}: {e}"
        say(state, error_msg)
        config.log_message(f"\n{error_msg}")
        config.log_message(f"Traceback:\n{traceback.format_exc()}")
        state["certificate"] = None
        state["extension_error"] = str(e)

    return state
