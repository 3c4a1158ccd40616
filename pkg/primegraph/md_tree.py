"""
Modular decomposition tree and the structural quantities derived from it.

The tree is built top-down. At a node X, if G[X] is disconnected its
children are the connected components (label EMPTY); if the complement of
G[X] is disconnected, the co-components (label COMPLETE). Otherwise the
quotient is prime and the children are the maximal proper strong modules:
the child containing v is v together with every u whose pair closure
{u, v} stays inside a proper subset of X.
"""
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from primegraph.errors import DomainError
from primegraph.graph import Graph, VertexInput, VertexSet, as_vertex_set, complement, iter_bits
from primegraph.modules import module_closure


class NodeLabel(str, Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    PRIME = "prime"
    LEAF = "leaf"


class ModuleKind(str, Enum):
    CLIQUE = "clique"
    STABLE = "stable"


@dataclass(frozen=True)
class MDNode:
    vertex_set: VertexSet
    label: NodeLabel
    children: Tuple["MDNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.label is NodeLabel.LEAF

    def leaf_children(self) -> List["MDNode"]:
        return [c for c in self.children if c.is_leaf]

    def block_children(self) -> List["MDNode"]:
        return [c for c in self.children if not c.is_leaf]

    def walk(self) -> Iterator["MDNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> dict:
        node = {"label": self.label.value, "vertices": list(self.vertex_set.members)}
        if self.children:
            node["children"] = [c.to_dict() for c in self.children]
        return node


@dataclass(frozen=True)
class MDTree:
    root: MDNode
    index: Dict[int, MDNode] = field(compare=False, repr=False)

    def nodes(self) -> Iterator[MDNode]:
        return self.root.walk()

    def internal_nodes(self) -> List[MDNode]:
        return [node for node in self.nodes() if not node.is_leaf]

    def node_for(self, w: VertexSet) -> Optional[MDNode]:
        return self.index.get(w.mask)

    def to_dict(self) -> dict:
        return self.root.to_dict()

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self) -> str:
        lines = ["digraph mdtree {", "  node [shape=box];"]
        ids: Dict[int, str] = {}
        for i, node in enumerate(self.nodes()):
            ids[node.vertex_set.mask] = f"n{i}"
            members = ",".join(str(v) for v in node.vertex_set)
            text = members if node.is_leaf else f"{node.label.value}\\n{{{members}}}"
            lines.append(f'  n{i} [label="{text}"];')
        for node in self.nodes():
            for child in node.children:
                lines.append(f"  {ids[node.vertex_set.mask]} -> {ids[child.vertex_set.mask]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _components(h: nx.Graph, members: List[int]) -> List[List[int]]:
    parts = [sorted(c) for c in nx.connected_components(h.subgraph(members))]
    return sorted(parts)


def _prime_children(g: Graph, mask: int) -> List[int]:
    blocks = []
    assigned = 0
    for v in iter_bits(mask):
        if assigned >> v & 1:
            continue
        block = 1 << v
        for u in iter_bits(mask & ~assigned & ~(1 << v)):
            if module_closure(g.rows, 1 << u | 1 << v, mask) != mask:
                block |= 1 << u
        assigned |= block
        blocks.append(block)
    return blocks


def _build(g: Graph, co: Graph, mask: int, index: Dict[int, MDNode]) -> MDNode:
    vs = VertexSet(g.order, mask)
    if mask.bit_count() == 1:
        node = MDNode(vs, NodeLabel.LEAF)
        index[mask] = node
        return node
    members = list(iter_bits(mask))
    parts = _components(g.nx_graph, members)
    if len(parts) > 1:
        label = NodeLabel.EMPTY
    else:
        parts = _components(co.nx_graph, members)
        label = NodeLabel.COMPLETE if len(parts) > 1 else NodeLabel.PRIME
    if label is NodeLabel.PRIME:
        child_masks = _prime_children(g, mask)
    else:
        child_masks = [sum(1 << v for v in part) for part in parts]
    child_masks.sort(key=lambda m: (m & -m).bit_length())
    children = tuple(_build(g, co, m, index) for m in child_masks)
    node = MDNode(vs, label, children)
    index[mask] = node
    return node


def build_md_tree(g: Graph) -> MDTree:
    if g.order < 1:
        raise DomainError("the modular decomposition tree needs at least one vertex")
    index: Dict[int, MDNode] = {}
    root = _build(g, complement(g), g.vertex_set().mask, index)
    return MDTree(root, index)


def hat(tree: MDTree, w: VertexInput) -> VertexSet:
    """Smallest strong module (tree node) containing w."""
    target = as_vertex_set(tree.root.vertex_set.order, w)
    if not target:
        raise DomainError("hat() needs a nonempty vertex set")
    if not target.issubset(tree.root.vertex_set):
        raise DomainError(f"{target!r} is not inside the graph")
    exact = tree.node_for(target)
    if exact is not None:
        return exact.vertex_set
    node = tree.root
    while True:
        inner = next((c for c in node.children if target.issubset(c.vertex_set)), None)
        if inner is None:
            return node.vertex_set
        node = inner


@dataclass(frozen=True)
class CSModule:
    """An element of the family of maximal clique/stable modules of size >= 2."""

    members: VertexSet
    kind: ModuleKind

    def to_dict(self) -> dict:
        return {"members": list(self.members.members), "kind": self.kind.value}


def maximal_cs_modules(g: Graph, tree: Optional[MDTree] = None) -> List[CSModule]:
    """
    Each EMPTY or COMPLETE node with at least two leaf children contributes
    the union of those leaves, a stable set or a clique respectively.
    """
    tree = tree or build_md_tree(g)
    found = []
    for node in tree.internal_nodes():
        if node.label not in (NodeLabel.EMPTY, NodeLabel.COMPLETE):
            continue
        leaves = node.leaf_children()
        if len(leaves) < 2:
            continue
        mask = 0
        for leaf in leaves:
            mask |= leaf.vertex_set.mask
        kind = ModuleKind.STABLE if node.label is NodeLabel.EMPTY else ModuleKind.CLIQUE
        found.append(CSModule(VertexSet(g.order, mask), kind))
    found.sort(key=lambda m: m.members.min())
    return found


def prime_modules(g: Graph, tree: Optional[MDTree] = None) -> List[VertexSet]:
    """Modules inducing a prime subgraph: PRIME nodes whose children are all leaves."""
    tree = tree or build_md_tree(g)
    found = [node.vertex_set for node in tree.internal_nodes()
             if node.label is NodeLabel.PRIME and all(c.is_leaf for c in node.children)]
    found.sort(key=lambda vs: vs.min())
    return found


@dataclass(frozen=True)
class StructureReport:
    alpha_m: int
    omega_m: int
    iota: int
    iota_complement: int
    max_cs_modules: Tuple[CSModule, ...]
    prime_modules: Tuple[VertexSet, ...]
    residue: VertexSet

    @property
    def modular_number(self) -> int:
        """max(alpha_M, omega_M)."""
        return max(self.alpha_m, self.omega_m)

    def to_dict(self) -> dict:
        return {
            "alpha_m": self.alpha_m,
            "omega_m": self.omega_m,
            "iota": self.iota,
            "iota_complement": self.iota_complement,
            "max_cs_modules": [m.to_dict() for m in self.max_cs_modules],
            "prime_modules": [list(m.members) for m in self.prime_modules],
            "residue": list(self.residue.members),
        }


def modular_numbers(g: Graph, tree: Optional[MDTree] = None) -> StructureReport:
    if g.order == 0:
        return StructureReport(0, 0, 0, 0, (), (), VertexSet.empty(0))
    tree = tree or build_md_tree(g)
    cs = maximal_cs_modules(g, tree)
    primes = prime_modules(g, tree)
    stable_sizes = [len(m.members) for m in cs if m.kind is ModuleKind.STABLE]
    clique_sizes = [len(m.members) for m in cs if m.kind is ModuleKind.CLIQUE]
    covered = 0
    for m in cs:
        covered |= m.members.mask
    for m in primes:
        covered |= m.mask
    residue = VertexSet(g.order, g.vertex_set().mask & ~covered)
    return StructureReport(
        alpha_m=max(stable_sizes, default=1),
        omega_m=max(clique_sizes, default=1),
        iota=g.isolated_count(),
        iota_complement=complement(g).isolated_count(),
        max_cs_modules=tuple(cs),
        prime_modules=tuple(primes),
        residue=residue,
    )
