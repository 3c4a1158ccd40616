"""
State definition for the LangGraph verification workflow.
"""
from typing import TypedDict, Optional

from primegraph.constructions import ExtensionCertificate
from primegraph.graph import Graph
from primegraph.md_tree import MDTree, StructureReport
from primegraph.oracle import OracleVerdict
from primegraph.prime_bound import PrimeBoundResult


class PipelineState(TypedDict):
    """
    State carried through analysis, extension, verification and the oracle.
    """
    # Stage 0: Input
    input_text: str
    input_format: str
    mode: str  # "optimal" or "stable-q"
    verify_cap: Optional[int]
    p_cap: Optional[int]
    out_path: Optional[str]
    verbose: bool
    graph: Optional[Graph]

    # Stage 1: Structure analysis
    tree: Optional[MDTree]
    report: Optional[StructureReport]
    bound: Optional[PrimeBoundResult]

    # Stage 2: Extension
    certificate: Optional[ExtensionCertificate]
    extension_error: Optional[str]

    # Stage 3: Verification
    verification_passed: bool
    verification_feedback: Optional[str]

    # Stage 4: Oracle (skipped when the search guard would refuse)
    oracle_verdict: Optional[OracleVerdict]
    oracle_agrees: Optional[bool]

    # Stage 5: Final output
    output_path: Optional[str]
