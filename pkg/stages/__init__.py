"""
Stage modules for the verification workflow.
"""


def say(state, message: str) -> None:
    """Print progress unless the run emits machine-readable output."""
    if state.get("verbose", True):
        print(message)
