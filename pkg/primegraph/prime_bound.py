"""
Closed-form prime bound p(G): the fewest vertices that must be added to G
so that some extension is prime.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from primegraph.errors import DomainError, InvariantError
from primegraph.graph import Graph
from primegraph.md_tree import MDTree, StructureReport, build_md_tree, modular_numbers
from primegraph.modules import is_prime


class BoundCase(str, Enum):
    ALREADY_PRIME = "AlreadyPrime"
    NOT_POWER_OF_TWO = "NotPowerOfTwo"
    POWER_OF_TWO_ISOLATED = "PowerOfTwoIsolated"
    POWER_OF_TWO_REGULAR = "PowerOfTwoRegular"
    ALPHA_OMEGA_ONE = "AlphaOmegaOne"
    TINY_GRAPH = "TinyGraph"


def ceil_log2(x: int) -> int:
    """Exact ceil(log2(x)) for x >= 1."""
    if x < 1:
        raise DomainError(f"ceil_log2 needs a positive integer, got {x}")
    return (x - 1).bit_length()


def is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


@dataclass(frozen=True)
class PrimeBoundResult:
    value: int
    case: BoundCase
    m: int
    k: Optional[int]
    iota: int
    iota_complement: int

    @property
    def extrapolated(self) -> bool:
        """True for the n <= 1 totalization, which the closed forms do not cover."""
        return self.case is BoundCase.TINY_GRAPH

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "case": self.case.value,
            "m": self.m,
            "k": self.k,
            "iota": self.iota,
            "iota_complement": self.iota_complement,
            "extrapolated": self.extrapolated,
        }


def lower_bound_modular(report: StructureReport) -> int:
    m = report.modular_number
    if m < 2:
        raise DomainError(f"lower_bound_modular needs max(alpha_M, omega_M) >= 2, got {m}")
    return ceil_log2(m)


def lower_bound_isolated(report: StructureReport) -> int:
    iota = max(report.iota, report.iota_complement)
    if iota < 1:
        raise DomainError("lower_bound_isolated needs an isolated vertex in G or its complement")
    return ceil_log2(iota + 1)


def upper_bound_modular(report: StructureReport) -> int:
    m = report.modular_number
    if m < 2:
        raise DomainError(f"upper_bound_modular needs max(alpha_M, omega_M) >= 2, got {m}")
    return ceil_log2(m + 1)


def general_upper_bound(g: Graph) -> int:
    """General upper bound ceil(log2(n+1)) for n >= 2, reported for comparison."""
    if g.order < 2:
        raise DomainError(f"the general bound needs at least 2 vertices, got {g.order}")
    return ceil_log2(g.order + 1)


def prime_bound(g: Graph, tree: Optional[MDTree] = None,
                report: Optional[StructureReport] = None) -> PrimeBoundResult:
    n = g.order
    if report is None:
        if n >= 1:
            tree = tree or build_md_tree(g)
        report = modular_numbers(g, tree)
    m = report.modular_number
    iota, iota_bar = report.iota, report.iota_complement

    def result(value: int, case: BoundCase, k: Optional[int] = None) -> PrimeBoundResult:
        return PrimeBoundResult(value, case, m, k, iota, iota_bar)

    if is_prime(g):
        return result(0, BoundCase.ALREADY_PRIME)
    if n <= 1:
        return result(4 - n, BoundCase.TINY_GRAPH)
    if m >= 2:
        if not is_power_of_two(m):
            return result(ceil_log2(m), BoundCase.NOT_POWER_OF_TWO)
        k = m.bit_length() - 1
        if iota == m or iota_bar == m:
            return result(k + 1, BoundCase.POWER_OF_TWO_ISOLATED, k)
        return result(k, BoundCase.POWER_OF_TWO_REGULAR, k)
    # m == 1 from here on
    if n < 4:
        raise InvariantError(f"graph on {n} vertices has no clique or stable module of size 2")
    return result(1, BoundCase.ALPHA_OMEGA_ONE)
