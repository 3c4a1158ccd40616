"""
Exhaustive cross-checks over every labeled graph of a given order.

Graph i of order n is `Graph.from_edge_bits(n, i)` for i < 2^C(n,2). Each
check returns None on success or an (expected, actual) pair on failure;
failures are data, reported with the graph6 of the offending graph.
"""
import json
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

import config
from primegraph.constructions import optimal_extension, q_extension
from primegraph.errors import DomainError, SearchRefusedError
from primegraph.graph import Graph, complement, emit_graph6
from primegraph.md_tree import build_md_tree, maximal_cs_modules, modular_numbers
from primegraph.modules import is_prime
from primegraph.oracle import (
    brute_force_maximal_cs_modules, brute_force_modular_numbers, brute_force_prime_bound,
    brute_force_strong_modules,
)
from primegraph.prime_bound import ceil_log2, prime_bound

Mismatch = Optional[Tuple[object, object]]


def _formula_vs_oracle(g: Graph) -> Mismatch:
    expected = brute_force_prime_bound(g).p_value
    actual = prime_bound(g).value
    return None if expected == actual else (expected, actual)


def _tree_vs_bruteforce(g: Graph) -> Mismatch:
    tree = build_md_tree(g)
    expected = sorted(m.mask for m in brute_force_strong_modules(g))
    actual = sorted(node.vertex_set.mask for node in tree.internal_nodes())
    if expected != actual:
        return expected, actual
    expected_cs = [(m.members.mask, m.kind.value) for m in brute_force_maximal_cs_modules(g)]
    actual_cs = [(m.members.mask, m.kind.value) for m in maximal_cs_modules(g, tree)]
    if expected_cs != actual_cs:
        return expected_cs, actual_cs
    report = modular_numbers(g, tree)
    numbers = brute_force_modular_numbers(g)
    if numbers != (report.alpha_m, report.omega_m):
        return list(numbers), [report.alpha_m, report.omega_m]
    return None


def _construction_certification(g: Graph) -> Mismatch:
    bound = prime_bound(g).value
    cert = optimal_extension(g)
    if not cert.verified_prime or cert.added_count != bound:
        return {"prime": True, "added": bound}, {"prime": cert.verified_prime, "added": cert.added_count}
    return None


def _q_extension_contract(g: Graph) -> Mismatch:
    m = modular_numbers(g).modular_number
    if m < 2:
        return None
    limit = ceil_log2(m + 1)
    cert = q_extension(g)
    if not (cert.verified_prime and cert.stable_added_set and cert.added_count <= limit):
        return (
            {"prime": True, "stable": True, "max_added": limit},
            {"prime": cert.verified_prime, "stable": cert.stable_added_set, "added": cert.added_count},
        )
    return None


def _complement_symmetry(g: Graph) -> Mismatch:
    h = complement(g)
    expected = (prime_bound(g).value, is_prime(g))
    actual = (prime_bound(h).value, is_prime(h))
    return None if expected == actual else (list(expected), list(actual))


CHECKS: Dict[str, Callable[[Graph], Mismatch]] = {
    "formula-vs-oracle": _formula_vs_oracle,
    "tree-vs-bruteforce": _tree_vs_bruteforce,
    "construction-certification": _construction_certification,
    "q-extension": _q_extension_contract,
    "complement-symmetry": _complement_symmetry,
}


@dataclass(frozen=True)
class SweepFailure:
    index: int
    graph6: str
    check: str
    expected: object
    actual: object

    def to_json(self) -> str:
        return json.dumps({
            "graph6": self.graph6,
            "check": self.check,
            "expected": self.expected,
            "actual": self.actual,
        }, default=str)


@dataclass
class SweepSummary:
    order: int
    check: str
    graphs: int
    failures: List[SweepFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def headline(self) -> str:
        return f"{self.graphs} graphs, {len(self.failures)} failures"

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "check": self.check,
            "graphs": self.graphs,
            "failures": len(self.failures),
        }

    def json_lines(self) -> List[str]:
        return [f.to_json() for f in self.failures]


def _run_range(order: int, check: str, start: int, stop: int) -> List[SweepFailure]:
    run = CHECKS[check]
    failures = []
    for index in range(start, stop):
        g = Graph.from_edge_bits(order, index)
        mismatch = run(g)
        if mismatch is not None:
            failures.append(SweepFailure(index, emit_graph6(g), check, *mismatch))
    return failures


def labeled_graph_sweep(order: int, check: str, jobs: Optional[int] = None,
                        progress: bool = False, max_order: Optional[int] = None) -> SweepSummary:
    if check not in CHECKS:
        raise DomainError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    max_order = config.SWEEP_MAX_ORDER if max_order is None else max_order
    if order > max_order:
        raise SearchRefusedError(
            f"a sweep of order {order} exceeds the sweep cap {max_order}",
            cap=max_order,
            size=2 ** comb(order, 2),
        )
    if order < 2:
        raise DomainError(f"sweeps start at order 2, got {order}")
    jobs = config.DEFAULT_JOBS if jobs is None else jobs
    total = 2 ** comb(order, 2)
    config.log_message(f"sweep: order {order}, check {check}, {total} graphs, {jobs} job(s)")

    failures: List[SweepFailure] = []
    if jobs <= 1:
        step = max(1, total // 64)
        bar = tqdm(total=total, desc=f"{check} n={order}", disable=not progress)
        for start in range(0, total, step):
            stop = min(total, start + step)
            failures.extend(_run_range(order, check, start, stop))
            bar.update(stop - start)
        bar.close()
    else:
        step = max(1, total // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_run_range, order, check, start, min(total, start + step)):
                       min(total, start + step) - start
                       for start in range(0, total, step)}
            bar = tqdm(total=total, desc=f"{check} n={order}", disable=not progress)
            for future in as_completed(futures):
                failures.extend(future.result())
                bar.update(futures[future])
            bar.close()
    failures.sort(key=lambda f: f.index)
    return SweepSummary(order, check, total, failures)
