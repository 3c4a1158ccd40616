"""
Brute-force ground truth for the closed forms and the md-tree.

The extension search tries p = 0, 1, ... and, for each p, every assignment
of base neighbourhoods to the added vertices together with every edge
pattern among them. Added vertices are interchangeable, so their
neighbourhoods are enumerated as non-decreasing tuples.
"""
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import List, Optional, Tuple

import config
from primegraph.constructions import ConstructionTag, ExtensionCertificate, certify
from primegraph.errors import SearchRefusedError
from primegraph.graph import Graph, VertexSet, iter_bits
from primegraph.md_tree import CSModule, ModuleKind
from primegraph.modules import enumerate_module_masks, is_prime_rows


@dataclass(frozen=True)
class OracleVerdict:
    p_value: Optional[int]
    p_cap: int
    witness: Optional[ExtensionCertificate]
    search_space_size: int

    @property
    def exceeds_cap(self) -> bool:
        return self.p_value is None

    def to_dict(self) -> dict:
        return {
            "p_value": "exceeds cap" if self.exceeds_cap else self.p_value,
            "p_cap": self.p_cap,
            "search_space_size": self.search_space_size,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def search_bits(order: int, p_cap: int) -> int:
    return order * p_cap + comb(p_cap, 2)


def _search_level(g: Graph, p: int) -> Tuple[Optional[List[int]], int]:
    """First prime p-extension as adjacency rows, plus the number of candidates tried."""
    n = g.order
    pairs = list(combinations(range(n, n + p), 2))
    tried = 0
    for hoods in combinations_with_replacement(range(1 << n), p):
        rows = list(g.rows) + [0] * p
        for i, hood in enumerate(hoods):
            a = n + i
            rows[a] = hood
            for v in iter_bits(hood):
                rows[v] |= 1 << a
        for pattern in range(1 << len(pairs)):
            candidate = list(rows)
            for bit, (a, b) in enumerate(pairs):
                if pattern >> bit & 1:
                    candidate[a] |= 1 << b
                    candidate[b] |= 1 << a
            tried += 1
            if is_prime_rows(candidate):
                return candidate, tried
    return None, tried


def brute_force_prime_bound(g: Graph, p_cap: Optional[int] = None,
                            max_bits: Optional[int] = None) -> OracleVerdict:
    p_cap = config.ORACLE_P_CAP if p_cap is None else p_cap
    max_bits = config.ORACLE_MAX_BITS if max_bits is None else max_bits
    bits = search_bits(g.order, p_cap)
    if bits > max_bits:
        raise SearchRefusedError(
            f"extension search over {bits} bits per level exceeds the guard of {max_bits}",
            cap=max_bits,
            size=2 ** bits,
        )
    examined = 0
    for p in range(p_cap + 1):
        rows, tried = _search_level(g, p)
        examined += tried
        config.log_message(f"oracle: p={p}, {tried} candidates, found={rows is not None}")
        if rows is not None:
            host = Graph(g.order + p, tuple(rows))
            witness = certify(g, host, ConstructionTag.ORACLE_WITNESS)
            return OracleVerdict(p, p_cap, witness, examined)
    return OracleVerdict(None, p_cap, None, examined)


def brute_force_modular_numbers(g: Graph, cap: Optional[int] = None) -> Tuple[int, int]:
    """(alpha_M, omega_M) by scanning every module."""
    if g.order == 0:
        return 0, 0
    alpha = omega = 1
    for mask in enumerate_module_masks(g, cap):
        size = mask.bit_count()
        if size < 2:
            continue
        if g.is_stable(VertexSet(g.order, mask)):
            alpha = max(alpha, size)
        elif g.is_clique(VertexSet(g.order, mask)):
            omega = max(omega, size)
    return alpha, omega


def _overlap(a: int, b: int) -> bool:
    return bool(a & b) and a & ~b != 0 and b & ~a != 0


def brute_force_strong_modules(g: Graph, cap: Optional[int] = None) -> List[VertexSet]:
    """Modules of size >= 2 that overlap no other module, ascending by mask."""
    masks = enumerate_module_masks(g, cap)
    return [VertexSet(g.order, m) for m in masks
            if m.bit_count() >= 2 and not any(_overlap(m, other) for other in masks)]


def brute_force_maximal_cs_modules(g: Graph, cap: Optional[int] = None) -> List[CSModule]:
    """Inclusion-maximal modules of size >= 2 that are cliques or stable sets."""
    found = []
    for mask in enumerate_module_masks(g, cap):
        if mask.bit_count() < 2:
            continue
        members = VertexSet(g.order, mask)
        if g.is_stable(members):
            found.append(CSModule(members, ModuleKind.STABLE))
        elif g.is_clique(members):
            found.append(CSModule(members, ModuleKind.CLIQUE))
    maximal = [m for m in found
               if not any(o.members.mask != m.members.mask and m.members.issubset(o.members) for o in found)]
    maximal.sort(key=lambda m: m.members.min())
    return maximal
