"""
Configuration module for loading environment variables.
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Exhaustive-search caps
EXHAUSTIVE_CAP = int(os.getenv("PRIMEEXT_EXHAUSTIVE_CAP", "16"))  # subset enumeration, 2^n subsets
VERIFY_CAP = int(os.getenv("PRIMEEXT_VERIFY_CAP", "64"))  # closure-based primality check of hosts
ORACLE_P_CAP = int(os.getenv("PRIMEEXT_ORACLE_P_CAP", "3"))
ORACLE_MAX_BITS = int(os.getenv("PRIMEEXT_ORACLE_MAX_BITS", "24"))  # n*p_cap + C(p_cap, 2)
SWEEP_MAX_ORDER = int(os.getenv("PRIMEEXT_SWEEP_MAX_ORDER", "6"))  # 2^C(6,2) = 32768 graphs

# Worker pool
DEFAULT_JOBS = int(os.getenv("PRIMEEXT_JOBS", "1"))

# LangGraph configuration
RECURSION_LIMIT = int(os.getenv("PRIMEEXT_RECURSION_LIMIT", "50"))

# Formats
INPUT_FORMATS = ("auto", "graph6", "edgelist")
OUTPUT_FORMATS = ("human", "json", "dot")
EXTENSION_MODES = ("optimal", "stable-q")

# File paths
OUTPUT_DIR = os.getenv("PRIMEEXT_OUTPUT_DIR", "outputs")
INTERMEDIATE_DIR = os.getenv("PRIMEEXT_INTERMEDIATE_DIR", "intermediate_outputs")
PIPELINE_LOG_PATH = os.path.join(INTERMEDIATE_DIR, "pipeline_log.txt")

# Validate caps
for _name in ("EXHAUSTIVE_CAP", "VERIFY_CAP", "ORACLE_P_CAP", "ORACLE_MAX_BITS",
              "SWEEP_MAX_ORDER", "DEFAULT_JOBS", "RECURSION_LIMIT"):
    if globals()[_name] <= 0:
        raise ValueError(f"{_name} must be positive, got {globals()[_name]}")

# Set by init_log(); the log helpers are silent until then
_log_ready = False


# Logging utility functions
def init_log():
    """Initialize/clear the log file at start of run."""
    global _log_ready
    os.makedirs(os.path.dirname(PIPELINE_LOG_PATH) or ".", exist_ok=True)
    with open(PIPELINE_LOG_PATH, "w", encoding="utf-8") as f:
        f.write("PRIME EXTENSION PIPELINE LOG\n")
        f.write(f"{'='*60}\n\n")
    _log_ready = True


def close_log():
    """Stop writing to the log file."""
    global _log_ready
    _log_ready = False


def log_stage(stage_name: str, content: str):
    """
    Log content to pipeline log file with stage header.

    Args:
        stage_name: Name of the stage (e.g., "STAGE 1: STRUCTURE ANALYSIS")
        content: Content to log
    """
    if not _log_ready:
        return
    with open(PIPELINE_LOG_PATH, "a", encoding="utf-8") as f:
        f.write(f"\n{'='*60}\n")
        f.write(f"{stage_name}\n")
        f.write(f"{'='*60}\n")
        f.write(content)
        f.write("\n")


def log_message(message: str):
    """Log a message without stage header."""
    if not _log_ready:
        return
    with open(PIPELINE_LOG_PATH, "a", encoding="utf-8") as f:
        f.write(f"{message}\n")
