"""
Command-line entry point and the LangGraph verification workflow.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from langgraph.graph import StateGraph, END

from state import PipelineState
import config

from primegraph.constructions import extend
from primegraph.errors import DomainError, GraphInputError, SearchRefusedError
from primegraph.graph import GRAPH6_MAX_ORDER, Graph, emit_edge_list, emit_graph6, read_graph
from primegraph.md_tree import MDNode, build_md_tree, modular_numbers
from primegraph.modules import is_prime
from primegraph.oracle import brute_force_prime_bound
from primegraph.prime_bound import (
    general_upper_bound, lower_bound_isolated, lower_bound_modular, prime_bound, upper_bound_modular,
)
from primegraph.sweep import CHECKS, labeled_graph_sweep

# Import stage functions
from stages import say
from stages.analysis_stage import analysis_stage
from stages.extension_stage import extension_stage
from stages.verification_stage import verification_stage, should_run_oracle
from stages.oracle_stage import oracle_stage


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


@dataclass(frozen=True)
class CliConfig:
    input_format: str = "auto"
    output_format: str = "human"
    verify_cap: Optional[int] = None
    p_cap: Optional[int] = None
    jobs: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.input_format not in config.INPUT_FORMATS:
            raise DomainError(f"unknown input format {self.input_format!r}")
        if self.output_format not in config.OUTPUT_FORMATS:
            raise DomainError(f"unknown output format {self.output_format!r}")
        for name in ("verify_cap", "p_cap", "jobs"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise DomainError(f"--{name.replace('_', '-')} must be positive, got {value}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        return cls(
            input_format=getattr(args, "input_format", "auto"),
            output_format=args.format,
            verify_cap=getattr(args, "verify_cap", None),
            p_cap=getattr(args, "p_cap", None),
            jobs=getattr(args, "jobs", None),
            out=getattr(args, "out", None),
        )


def read_input_text(source: Optional[str]) -> str:
    """
    A literal graph string, a file path, or stdin for `-`/absent. An existing
    file of that name wins over the literal reading.
    """
    if source is None or source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, "r", encoding="utf-8") as f:
            return f.read()
    return source


def graph_input(args: argparse.Namespace) -> str:
    """`--file` when given, otherwise the positional argument."""
    path = getattr(args, "file", None)
    if path is None:
        return read_input_text(args.graph)
    if args.graph is not None:
        raise GraphInputError("give either a graph argument or --file, not both")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise GraphInputError(f"cannot read {path}: {e.strerror}") from e


def graph_text(g: Graph) -> str:
    return emit_graph6(g) if g.order <= GRAPH6_MAX_ORDER else emit_edge_list(g)


def write_json(path: str, payload: dict) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")


# -- workflow nodes ------------------------------------------------------------


def load_input(state: PipelineState) -> PipelineState:
    """
    Stage 0: Parse the input graph.
    """
    say(state, "\n=== STAGE 0: LOADING INPUT ===")
    config.log_stage("STAGE 0: LOADING INPUT", f"Input format: {state['input_format']}")

    g = read_graph(state["input_text"], state["input_format"])
    state["graph"] = g

    say(state, f"Loaded graph with {g.order} vertices and {g.edge_count} edges")
    config.log_message(f"Graph: {graph_text(g).strip()}")

    state["verification_passed"] = False
    return state


def save_output(state: PipelineState) -> PipelineState:
    """
    Stage 5: Write the certificate and the run summary.
    """
    say(state, "\n=== STAGE 5: SAVING OUTPUT ===")
    config.log_stage("STAGE 5: SAVING OUTPUT", "Writing certificate...")

    path = state.get("out_path") or os.path.join(config.OUTPUT_DIR, "certificate.json")
    write_json(path, verify_summary(state))
    state["output_path"] = path

    say(state, f"Certificate saved to: {path}")
    config.log_message(f"Certificate saved to: {path}")
    return state


def verify_summary(state: PipelineState) -> dict:
    cert = state.get("certificate")
    verdict = state.get("oracle_verdict")
    return {
        "graph": graph_text(state["graph"]).strip(),
        "mode": state["mode"],
        "bound": state["bound"].to_dict(),
        "certificate": cert.to_dict() if cert else None,
        "verification_passed": state["verification_passed"],
        "verification_feedback": state.get("verification_feedback"),
        "oracle": verdict.to_dict() if verdict else None,
        "oracle_agrees": state.get("oracle_agrees"),
    }


def build_graph() -> StateGraph:
    """
    Build the verification workflow.

    Returns:
        Compiled StateGraph
    """
    workflow = StateGraph(PipelineState)

    workflow.add_node("load_input", load_input)
    workflow.add_node("analysis", analysis_stage)
    workflow.add_node("extension", extension_stage)
    workflow.add_node("verification", verification_stage)
    workflow.add_node("oracle", oracle_stage)
    workflow.add_node("save_output", save_output)

    workflow.set_entry_point("load_input")

    workflow.add_edge("load_input", "analysis")
    workflow.add_edge("analysis", "extension")
    workflow.add_edge("extension", "verification")

    # The oracle runs only when its search guard allows it
    workflow.add_conditional_edges(
        "verification",
        should_run_oracle,
        {
            "oracle": "oracle",
            "continue": "save_output"
        }
    )
    workflow.add_edge("oracle", "save_output")

    workflow.add_edge("save_output", END)

    return workflow.compile()


def initial_state(text: str, cli: CliConfig, mode: str) -> PipelineState:
    return {
        "input_text": text,
        "input_format": cli.input_format,
        "mode": mode,
        "verify_cap": cli.verify_cap,
        "p_cap": cli.p_cap,
        "out_path": cli.out,
        "verbose": cli.output_format == "human",
        "graph": None,
        "tree": None,
        "report": None,
        "bound": None,
        "certificate": None,
        "extension_error": None,
        "verification_passed": False,
        "verification_feedback": None,
        "oracle_verdict": None,
        "oracle_agrees": None,
        "output_path": None,
    }


# -- subcommands ---------------------------------------------------------------


def _members(vs) -> str:
    return "{" + ",".join(str(v) for v in vs) + "}"


def cmd_analyze(args: argparse.Namespace, cli: CliConfig) -> int:
    g = read_graph(graph_input(args), cli.input_format)
    tree = build_md_tree(g) if g.order >= 1 else None
    report = modular_numbers(g, tree)
    bound = prime_bound(g, tree=tree, report=report)

    def optional(fn, arg):
        try:
            return fn(arg)
        except DomainError:
            return None

    payload = {
        "order": g.order,
        "edges": g.edge_count,
        "prime": is_prime(g),
        "report": report.to_dict(),
        "bound": bound.to_dict(),
        "lower_bound_modular": optional(lower_bound_modular, report),
        "lower_bound_isolated": optional(lower_bound_isolated, report),
        "upper_bound_modular": optional(upper_bound_modular, report),
        "general_upper_bound": optional(general_upper_bound, g),
    }
    if cli.output_format == "json":
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    cs = ", ".join(f"{_members(m.members)} {m.kind.value}" for m in report.max_cs_modules)
    print(f"Order: {g.order}")
    print(f"Edges: {g.edge_count}")
    print(f"Prime: {payload['prime']}")
    print(f"alpha_M: {report.alpha_m}  omega_M: {report.omega_m}")
    print(f"iota(G): {report.iota}  iota(complement): {report.iota_complement}")
    print(f"M(G): [{cs}]")
    print(f"P(G): [{', '.join(_members(m) for m in report.prime_modules)}]")
    print(f"I(G): {_members(report.residue)}")
    note = " (extrapolated below 2 vertices)" if bound.extrapolated else ""
    print(f"p(G): {bound.value} ({bound.case.value}){note}")
    print(f"Lower bound (modular): {payload['lower_bound_modular']}")
    print(f"Lower bound (isolated): {payload['lower_bound_isolated']}")
    return EXIT_OK


def cmd_extend(args: argparse.Namespace, cli: CliConfig) -> int:
    g = read_graph(graph_input(args), cli.input_format)
    cert = extend(g, args.mode, verify_cap=cli.verify_cap)
    if cli.out:
        write_json(cli.out, cert.to_dict())
    if cli.output_format == "json":
        print(json.dumps(cert.to_dict(), indent=2))
    elif cli.output_format == "dot":
        print(cert.to_dot(), end="")
    else:
        data = cert.to_dict()
        print(f"Host ({data['host_format']}): {data['host'].strip()}")
        print(f"Added vertices: {cert.added_count}")
        print(f"Construction: {cert.construction_tag.value}")
        print(f"Verified prime: {cert.verified_prime} ({cert.verification})")
        print(f"Stable added set: {cert.stable_added_set}")
    return EXIT_OK if cert.verified_prime else EXIT_CHECK_FAILED


def cmd_verify(args: argparse.Namespace, cli: CliConfig) -> int:
    verbose = cli.output_format == "human"
    if verbose:
        print("=" * 60)
        print("PRIME EXTENSION VERIFICATION")
        print("=" * 60)

    config.init_log()
    config.log_message("PRIME EXTENSION VERIFICATION")
    try:
        app = build_graph()
        final_state = app.invoke(
            initial_state(graph_input(args), cli, args.mode),
            config={"recursion_limit": config.RECURSION_LIMIT}
        )
    except Exception as e:
        config.log_message("\nERROR: Workflow failed with exception:")
        config.log_message(f"{type(e).__name__}: {e}")
        raise
    finally:
        config.close_log()

    passed = final_state["verification_passed"] and final_state.get("oracle_agrees") is not False
    if verbose:
        print("\n" + "=" * 60)
        print("VERIFICATION " + ("PASSED" if passed else "FAILED"))
        print("=" * 60)
        print(f"Certificate: {final_state['output_path']}")
        print(f"Pipeline log: {config.PIPELINE_LOG_PATH}")
    else:
        print(json.dumps(verify_summary(final_state), indent=2))
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _print_tree(node: MDNode, depth: int = 0) -> None:
    indent = "  " * depth
    if node.is_leaf:
        print(f"{indent}{node.vertex_set.min()}")
        return
    print(f"{indent}{node.label.value} {_members(node.vertex_set)}")
    for child in node.children:
        _print_tree(child, depth + 1)


def cmd_mdtree(args: argparse.Namespace, cli: CliConfig) -> int:
    g = read_graph(graph_input(args), cli.input_format)
    tree = build_md_tree(g)
    if cli.output_format == "json":
        print(json.dumps(tree.to_dict(), indent=2))
    elif cli.output_format == "dot":
        print(tree.to_dot(), end="")
    else:
        _print_tree(tree.root)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, cli: CliConfig) -> int:
    g = read_graph(graph_input(args), cli.input_format)
    verdict = brute_force_prime_bound(g, p_cap=cli.p_cap)
    if cli.output_format == "json":
        print(json.dumps(verdict.to_dict(), indent=2))
    else:
        found = "exceeds cap" if verdict.exceeds_cap else verdict.p_value
        print(f"p={found} (cap {verdict.p_cap}, {verdict.search_space_size} candidates searched)")
        if verdict.witness:
            print(f"Witness: {verdict.witness.to_dict()['host'].strip()}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, cli: CliConfig) -> int:
    human = cli.output_format == "human"
    summary = labeled_graph_sweep(args.n, args.check, jobs=cli.jobs, progress=human)
    if human:
        print(f"{args.check} n={args.n}: {summary.headline()}")
    for line in summary.json_lines():
        print(line)
    if not human:
        print(json.dumps(summary.to_dict()))
    return EXIT_OK if summary.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primeext",
        description="Modular decomposition, prime bound and certified prime extensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name: str, help_text: str, formats=("human", "json")) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", nargs="?", default=None,
                       help="graph6 string, path to a file, or - for stdin (default); "
                            "an existing file with this name takes precedence over the literal")
        p.add_argument("--file", default=None, help="read the graph from this file only")
        p.add_argument("--input-format", choices=config.INPUT_FORMATS, default="auto")
        p.add_argument("--format", choices=formats, default="human")
        return p

    graph_command("analyze", "structure report and p(G)")

    p = graph_command("extend", "build a prime extension", ("human", "json", "dot"))
    p.add_argument("--mode", choices=config.EXTENSION_MODES, default="optimal")
    p.add_argument("--verify-cap", type=int, default=None)
    p.add_argument("--out", default=None, help="also write the certificate JSON here")

    p = graph_command("verify", "run the analysis/extension/verification/oracle workflow")
    p.add_argument("--mode", choices=config.EXTENSION_MODES, default="optimal")
    p.add_argument("--verify-cap", type=int, default=None)
    p.add_argument("--p-cap", type=int, default=None)
    p.add_argument("--out", default=None, help="certificate path (default: output directory)")

    graph_command("mdtree", "print the modular decomposition tree", ("human", "json", "dot"))

    p = graph_command("oracle", "exhaustive minimal prime extension search")
    p.add_argument("--p-cap", type=int, default=None)

    p = sub.add_parser("sweep", help="cross-check every labeled graph of one order")
    p.add_argument("n", type=int)
    p.add_argument("--check", choices=list(CHECKS), default="formula-vs-oracle")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--format", choices=("human", "json"), default="human")

    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "extend": cmd_extend,
    "verify": cmd_verify,
    "mdtree": cmd_mdtree,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point. Returns the process exit code.
    """
    args = build_parser().parse_args(argv)
    try:
        cli = CliConfig.from_args(args)
        return COMMANDS[args.command](args, cli)
    except (GraphInputError, DomainError, SearchRefusedError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
