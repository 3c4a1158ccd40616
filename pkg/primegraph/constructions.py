"""
Explicit prime-extension builders.

Every builder returns a host graph H whose first n vertices induce the input
graph G; the added vertices are n, n+1, ... Hosts are wrapped by `certify`
into an ExtensionCertificate that records how the host was checked.

The stable-set family (q_extension) climbs the modular decomposition tree:
prime graphs take two non-adjacent admissible vertices, degenerate nodes whose
children are all singletons take the stable/stable or clique/stable gadget,
and every other node reuses one shared added set S across its children.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import config
from primegraph.errors import DomainError, InvariantError
from primegraph.graph import (
    GRAPH6_MAX_ORDER, Graph, VertexSet, emit_edge_list, emit_graph6, full_mask,
    induced_subgraph, iter_bits,
)
from primegraph.md_tree import MDTree, NodeLabel, StructureReport, build_md_tree, modular_numbers
from primegraph.modules import is_prime, is_prime_exhaustive
from primegraph.prime_bound import BoundCase, PrimeBoundResult, ceil_log2, prime_bound


class ConstructionTag(str, Enum):
    ALREADY_PRIME = "already-prime"
    TINY_GRAPH = "tiny-graph"
    STABLE_TWO_EXTENSION = "stable-two-extension"
    Q_EXTENSION = "q-extension"
    ONE_EXTENSION_K1 = "one-extension-k1"
    ONE_EXTENSION_M1 = "one-extension-m1"
    POWER_OF_TWO = "power-of-two"
    ORACLE_WITNESS = "oracle-witness"


class OneExtensionMode(str, Enum):
    K1 = "k1"
    M1 = "m1"


@dataclass(frozen=True)
class ExtensionCertificate:
    host: Graph
    base_order: int
    added_count: int
    construction_tag: ConstructionTag
    verified_prime: bool
    stable_added_set: bool
    verification: str

    @property
    def added_vertices(self) -> VertexSet:
        return VertexSet(self.host.order, full_mask(self.host.order) & ~full_mask(self.base_order))

    def to_dict(self) -> dict:
        if self.host.order <= GRAPH6_MAX_ORDER:
            host_format, host_text = "graph6", emit_graph6(self.host)
        else:
            host_format, host_text = "edgelist", emit_edge_list(self.host)
        return {
            "host": host_text,
            "host_format": host_format,
            "base_order": self.base_order,
            "added_count": self.added_count,
            "construction_tag": self.construction_tag.value,
            "verified_prime": self.verified_prime,
            "stable_added_set": self.stable_added_set,
            "verification": self.verification,
        }

    def to_dot(self) -> str:
        lines = ["graph extension {"]
        for v in range(self.host.order):
            if v < self.base_order:
                lines.append(f"  {v};")
            else:
                lines.append(f'  {v} [shape=box, style=filled, label="a{v - self.base_order}"];')
        for u, v in self.host.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def certify(graph: Graph, host: Graph, tag: ConstructionTag,
            verify_cap: Optional[int] = None,
            exhaustive_cap: Optional[int] = None) -> ExtensionCertificate:
    """Check the extension property and the added set, then primality per the caps."""
    n = graph.order
    if host.order < n:
        raise InvariantError(f"host has {host.order} vertices, fewer than the base {n}")
    base = full_mask(n)
    for v in range(n):
        if host.rows[v] & base != graph.rows[v]:
            raise InvariantError(f"host does not induce the input graph at vertex {v}")
    added = full_mask(host.order) & ~base
    stable = all(host.rows[a] & added == 0 for a in iter_bits(added))

    verify_cap = config.VERIFY_CAP if verify_cap is None else verify_cap
    exhaustive_cap = config.EXHAUSTIVE_CAP if exhaustive_cap is None else exhaustive_cap
    if host.order > verify_cap:
        verified, verification = False, "skipped"
    else:
        verified, verification = is_prime(host), "closure"
        if host.order <= exhaustive_cap:
            if is_prime_exhaustive(host, cap=exhaustive_cap) != verified:
                raise InvariantError("closure and exhaustive primality checks disagree on the host")
            verification = "closure+exhaustive"
    return ExtensionCertificate(
        host=host,
        base_order=n,
        added_count=host.order - n,
        construction_tag=tag,
        verified_prime=verified,
        stable_added_set=stable,
        verification=verification,
    )


class _Builder:
    """Mutable adjacency rows over the base graph plus `extra` added vertices."""

    def __init__(self, base: Graph, extra: int):
        self.order = base.order + extra
        self.rows = list(base.rows) + [0] * extra

    def add_edge(self, u: int, v: int) -> None:
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def embed(self, host: Graph, vertex_map: Sequence[int]) -> None:
        for u, v in host.edges():
            self.add_edge(vertex_map[u], vertex_map[v])

    def graph(self) -> Graph:
        return Graph(self.order, tuple(self.rows))


def _shortlex_masks(width: int) -> List[int]:
    return [sum(1 << i for i in combo)
            for size in range(width + 1)
            for combo in combinations(range(width), size)]


def stable_stable_prime(s_size: int) -> Graph:
    """
    Prime graph on S = [0, s) and S' = [s, s + ceil(log2(s+1))), both stable.
    The first |S'| vertices of S see all of S' but one; the others get the
    shortlex-smallest unused nonempty subsets of S'.
    """
    if s_size < 2:
        raise DomainError(f"stable_stable_prime needs s_size >= 2, got {s_size}")
    if s_size == 2:
        # S0 - S'0 - S1 - S'1
        return Graph.from_edges(4, [(0, 2), (2, 1), (1, 3)])
    t = ceil_log2(s_size + 1)
    everyone = full_mask(t)
    chosen = [everyone & ~(1 << j) for j in range(t)]
    spare = [m for m in _shortlex_masks(t) if m and m not in chosen]
    chosen += spare[:s_size - t]
    edges = [(i, s_size + j) for i, mask in enumerate(chosen) for j in iter_bits(mask)]
    return Graph.from_edges(s_size + t, edges)


def clique_stable_prime(c_size: int) -> Graph:
    """
    Prime graph on a clique C = [0, c) and a stable S' following it. The
    first |S'| clique vertices see exactly one S' vertex each; the rest get
    the shortlex-smallest unused subsets other than S' itself.
    """
    if c_size < 2:
        raise DomainError(f"clique_stable_prime needs c_size >= 2, got {c_size}")
    t = ceil_log2(c_size + 1)
    everyone = full_mask(t)
    chosen = [1 << j for j in range(t)]
    spare = [m for m in _shortlex_masks(t) if m != everyone and m not in chosen]
    chosen += spare[:c_size - t]
    edges = [(u, v) for u in range(c_size) for v in range(u + 1, c_size)]
    edges += [(i, c_size + j) for i, mask in enumerate(chosen) for j in iter_bits(mask)]
    return Graph.from_edges(c_size + t, edges)


def iter_admissible_masks(g: Graph) -> Iterator[int]:
    """Neighbourhoods of a new vertex that keep a prime graph prime, in shortlex order."""
    everyone = full_mask(g.order)
    forbidden = {0, everyone}
    for v, row in enumerate(g.rows):
        forbidden.add(row)
        forbidden.add(row | 1 << v)
    for size in range(1, g.order):
        for combo in combinations(range(g.order), size):
            mask = sum(1 << v for v in combo)
            if mask not in forbidden:
                yield mask


def _require_prime(g: Graph, what: str) -> None:
    if not is_prime(g):
        raise DomainError(f"{what} needs a prime graph")


def prime_one_extensions(g: Graph) -> List[VertexSet]:
    _require_prime(g, "prime_one_extensions")
    return [VertexSet(g.order, mask) for mask in iter_admissible_masks(g)]


def _two_extension_host(g: Graph) -> Graph:
    admissible = iter_admissible_masks(g)
    first, second = next(admissible), next(admissible)
    builder = _Builder(g, 2)
    for offset, mask in enumerate((first, second)):
        for v in iter_bits(mask):
            builder.add_edge(v, g.order + offset)
    return builder.graph()


def prime_two_extension_nonadjacent(g: Graph) -> ExtensionCertificate:
    _require_prime(g, "prime_two_extension_nonadjacent")
    return certify(g, _two_extension_host(g), ConstructionTag.STABLE_TWO_EXTENSION)


# -- stable added set ---------------------------------------------------------


def _basic_construction(g: Graph, blocks: Sequence[int], singles: int) -> Tuple[Graph, Optional[int]]:
    """
    Extend g along a modular partition of strong modules: `blocks` (size >= 2)
    and the singleton vertices in `singles`. Vertices outside both keep no
    edges to the added set. Returns the host and the added vertex fully
    adjacent to the widest block, if any.
    """
    n = g.order
    parts = []
    for mask in blocks:
        members = list(iter_bits(mask))
        sub, _ = induced_subgraph(g, members)
        parts.append((members, _stable_extension(sub)))
    widths = [host.order - len(members) for members, host in parts]
    q = max(widths)
    x_index = widths.index(q)
    x_members, x_host = parts[x_index]
    x_mask = blocks[x_index]
    added = list(range(n, n + q))

    builder = _Builder(g, q)
    builder.embed(x_host, x_members + added)
    full = [s for s in added if builder.rows[s] & x_mask == x_mask]
    if len(full) > 1 or any(builder.rows[s] & x_mask == 0 for s in added):
        raise InvariantError("recursive extension leaves the widest block undivided")
    tau = full[0] if full else None
    s_x = next(s for s in added if s != tau)

    order = full + [s for s in added if s != tau]
    for i, (members, host) in enumerate(parts):
        if i != x_index:
            builder.embed(host, members + order[:widths[i]])
    for v in iter_bits(singles):
        builder.add_edge(v, s_x)
    return builder.graph(), tau


def _merge_singletons(g: Graph, label: NodeLabel, blocks: Sequence[int], singles: int) -> Graph:
    """Degenerate root with two or more singleton children next to larger blocks."""
    n = g.order
    wide, tau = _basic_construction(g, blocks, 0)
    q = wide.order - n
    w1 = list(iter_bits(singles))
    gadget = stable_stable_prime(len(w1)) if label is NodeLabel.EMPTY else clique_stable_prime(len(w1))
    q1 = gadget.order - len(w1)
    if q1 <= q:
        s_order = ([tau] if tau is not None else []) + [s for s in range(n, n + q) if s != tau]
        targets = s_order[:q1]
        builder = _Builder(wide, 0)
        builder.embed(gadget, w1 + targets)
        if label is NodeLabel.COMPLETE:
            for v in w1:
                for s in s_order[q1:]:
                    builder.add_edge(v, s)
        return builder.graph()
    builder = _Builder(wide, q1 - q)
    builder.embed(gadget, w1 + list(range(n, n + q1)))
    if label is NodeLabel.COMPLETE:
        w2 = full_mask(n) & ~singles
        for v in iter_bits(w2):
            for s in range(n + q, n + q1):
                builder.add_edge(v, s)
    return builder.graph()


def _stable_extension(g: Graph) -> Graph:
    if is_prime(g):
        return _two_extension_host(g)
    root = build_md_tree(g).root
    blocks = [child.vertex_set.mask for child in root.block_children()]
    singles = 0
    for leaf in root.leaf_children():
        singles |= leaf.vertex_set.mask
    if root.label is NodeLabel.PRIME:
        return _basic_construction(g, blocks, singles)[0]
    if not blocks:
        return stable_stable_prime(g.order) if root.label is NodeLabel.EMPTY else clique_stable_prime(g.order)
    if singles.bit_count() <= 1:
        return _basic_construction(g, blocks, singles)[0]
    return _merge_singletons(g, root.label, blocks, singles)


def q_extension(g: Graph, verify_cap: Optional[int] = None) -> ExtensionCertificate:
    """Prime extension whose added vertices form a stable set."""
    if g.order < 2:
        raise DomainError(f"q_extension needs at least 2 vertices, got {g.order}")
    tag = ConstructionTag.STABLE_TWO_EXTENSION if is_prime(g) else ConstructionTag.Q_EXTENSION
    return certify(g, _stable_extension(g), tag, verify_cap=verify_cap)


# -- one added vertex ----------------------------------------------------------


def _one_extension_host(g: Graph, mode: OneExtensionMode, report: StructureReport) -> Graph:
    n = g.order
    builder = _Builder(g, 1)
    a = n
    for module in report.prime_modules:
        members = list(module)
        sub, _ = induced_subgraph(g, members)
        first = next(iter_admissible_masks(sub))
        for i in iter_bits(first):
            builder.add_edge(members[i], a)
    if mode is OneExtensionMode.K1:
        for module in report.max_cs_modules:
            builder.add_edge(module.members.min(), a)
        anchor = report.max_cs_modules[0].members.min()
    else:
        anchor = report.prime_modules[0].min()
    for v in report.residue:
        if not g.adjacent(v, anchor):
            builder.add_edge(v, a)
    return builder.graph()


def _check_one_extension(g: Graph, mode: OneExtensionMode, report: StructureReport) -> None:
    if mode is OneExtensionMode.K1:
        if report.modular_number != 2 or 2 in (report.iota, report.iota_complement):
            raise DomainError(
                "mode k1 needs max(alpha_M, omega_M) = 2 and no exactly-two isolated vertices "
                "in the graph or its complement"
            )
    elif g.order < 4 or report.modular_number != 1 or is_prime(g):
        raise DomainError("mode m1 needs a non-prime graph on >= 4 vertices with alpha_M = omega_M = 1")


def one_extension_special(g: Graph, mode: Union[OneExtensionMode, str],
                          tree: Optional[MDTree] = None) -> ExtensionCertificate:
    mode = OneExtensionMode(mode)
    if g.order < 2:
        raise DomainError("one_extension_special needs at least 2 vertices")
    report = modular_numbers(g, tree or build_md_tree(g))
    _check_one_extension(g, mode, report)
    tag = ConstructionTag.ONE_EXTENSION_K1 if mode is OneExtensionMode.K1 else ConstructionTag.ONE_EXTENSION_M1
    return certify(g, _one_extension_host(g, mode, report), tag)


# -- power of two --------------------------------------------------------------


def _power_of_two_host(g: Graph, report: StructureReport) -> Graph:
    n = g.order
    m = report.modular_number
    k = m.bit_length() - 1
    widest = [module for module in report.max_cs_modules if len(module.members) == m]
    removed = 0
    for module in widest:
        removed |= 1 << module.members.min()
    kept = [v for v in range(n) if not removed >> v & 1]
    rest, _ = induced_subgraph(g, kept)
    rest_bound = prime_bound(rest)
    if rest_bound.m != m - 1:
        raise InvariantError(f"removing one vertex per widest module left modular number {rest_bound.m}, not {m - 1}")
    inner, _ = _optimal_host(rest, rest_bound)
    if inner.order - rest.order != k:
        raise InvariantError(f"inner extension used {inner.order - rest.order} vertices, expected {k}")

    builder = _Builder(g, k)
    builder.embed(inner, kept + list(range(n, n + k)))
    added = full_mask(k) << n
    for module in widest:
        w = module.members.min()
        seen = {(builder.rows[v] & added) >> n for v in module.members if v != w}
        if len(seen) != m - 1:
            raise InvariantError(f"added neighbourhoods inside {module.members!r} are not distinct")
        free = [x for x in range(1 << k) if x not in seen]
        if len(free) != 1:
            raise InvariantError(f"expected one unused added neighbourhood for {module.members!r}")
        for j in iter_bits(free[0]):
            builder.add_edge(w, n + j)
    return builder.graph()


def power_of_two_extension(g: Graph, tree: Optional[MDTree] = None) -> ExtensionCertificate:
    if g.order < 2:
        raise DomainError("power_of_two_extension needs at least 2 vertices")
    report = modular_numbers(g, tree or build_md_tree(g))
    m = report.modular_number
    if m < 4 or m & (m - 1):
        raise DomainError(f"power_of_two_extension needs max(alpha_M, omega_M) = 2^k with k >= 2, got {m}")
    if m in (report.iota, report.iota_complement):
        raise DomainError(f"the graph or its complement has exactly {m} isolated vertices")
    return certify(g, _power_of_two_host(g, report), ConstructionTag.POWER_OF_TWO)


# -- dispatch ------------------------------------------------------------------


def _optimal_host(g: Graph, bound: PrimeBoundResult) -> Tuple[Graph, ConstructionTag]:
    case = bound.case
    if case is BoundCase.ALREADY_PRIME:
        return g, ConstructionTag.ALREADY_PRIME
    if case is BoundCase.TINY_GRAPH:
        return Graph.path(4), ConstructionTag.TINY_GRAPH
    if case in (BoundCase.NOT_POWER_OF_TWO, BoundCase.POWER_OF_TWO_ISOLATED):
        return _stable_extension(g), ConstructionTag.Q_EXTENSION
    report = modular_numbers(g)
    if case is BoundCase.POWER_OF_TWO_REGULAR and bound.k == 1:
        return _one_extension_host(g, OneExtensionMode.K1, report), ConstructionTag.ONE_EXTENSION_K1
    if case is BoundCase.POWER_OF_TWO_REGULAR:
        return _power_of_two_host(g, report), ConstructionTag.POWER_OF_TWO
    return _one_extension_host(g, OneExtensionMode.M1, report), ConstructionTag.ONE_EXTENSION_M1


def optimal_extension(g: Graph, verify_cap: Optional[int] = None) -> ExtensionCertificate:
    """A prime extension with exactly p(G) added vertices."""
    bound = prime_bound(g)
    host, tag = _optimal_host(g, bound)
    config.log_message(f"optimal_extension: case {bound.case.value} -> {tag.value}, p={bound.value}")
    cert = certify(g, host, tag, verify_cap=verify_cap)
    if cert.added_count != bound.value:
        raise InvariantError(f"{tag.value} added {cert.added_count} vertices, the bound is {bound.value}")
    return cert


def extend(g: Graph, mode: str = "optimal", verify_cap: Optional[int] = None) -> ExtensionCertificate:
    """CLI-facing entry: `optimal` or `stable-q`."""
    if mode == "optimal":
        return optimal_extension(g, verify_cap=verify_cap)
    if mode == "stable-q":
        return q_extension(g, verify_cap=verify_cap)
    raise DomainError(f"unknown extension mode {mode!r}")
