"""
Module predicates, smallest-module closure, primality, modular partitions
and quotients.

A set M is a module when every vertex outside M sees either all of M or
none of it. The mask-level helpers take an explicit `universe` so the md-tree
can work on induced subgraphs without materialising them.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import config
from primegraph.errors import GraphInputError, SearchRefusedError
from primegraph.graph import Graph, VertexInput, VertexSet, as_vertex_set, full_mask, iter_bits


def find_splitter(rows: Sequence[int], mask: int, universe: int) -> Optional[int]:
    """Lowest-index vertex of universe \\ mask adjacent to part, not all, of mask."""
    for v in iter_bits(universe & ~mask):
        seen = rows[v] & mask
        if seen and seen != mask:
            return v
    return None


def module_closure(rows: Sequence[int], seed: int, universe: int) -> int:
    """Smallest module of G[universe] containing `seed` (both as masks)."""
    current = seed
    while True:
        v = find_splitter(rows, current, universe)
        if v is None:
            return current
        current |= 1 << v


def has_twins(rows: Sequence[int]) -> bool:
    """True when two vertices u != v satisfy N(u) \\ {v} = N(v) \\ {u}, i.e. {u, v} is a module."""
    n = len(rows)
    for u in range(n):
        for v in range(u + 1, n):
            if rows[u] & ~(1 << v) == rows[v] & ~(1 << u):
                return True
    return False


def is_prime_rows(rows: Sequence[int]) -> bool:
    n = len(rows)
    if n < 4:
        return False
    if has_twins(rows):
        return False
    everyone = full_mask(n)
    for u in range(n):
        for v in range(u + 1, n):
            if module_closure(rows, 1 << u | 1 << v, everyone) != everyone:
                return False
    return True


def is_module(g: Graph, m: VertexInput) -> bool:
    mask = as_vertex_set(g.order, m).mask
    if mask == 0:
        return True
    return find_splitter(g.rows, mask, full_mask(g.order)) is None


def smallest_module_containing(g: Graph, w: VertexInput) -> VertexSet:
    seed = as_vertex_set(g.order, w)
    if not seed:
        raise GraphInputError("smallest_module_containing needs a nonempty vertex set")
    return VertexSet(g.order, module_closure(g.rows, seed.mask, full_mask(g.order)))


def is_prime(g: Graph) -> bool:
    """Prime: at least 4 vertices and only trivial modules (pair-closure test)."""
    return is_prime_rows(g.rows)


def _check_exhaustive_cap(g: Graph, cap: Optional[int]) -> None:
    cap = config.EXHAUSTIVE_CAP if cap is None else cap
    if g.order > cap:
        raise SearchRefusedError(
            f"subset enumeration over {g.order} vertices exceeds the exhaustive cap {cap}",
            cap=cap,
            size=2 ** g.order,
        )


def enumerate_module_masks(g: Graph, cap: Optional[int] = None) -> List[int]:
    _check_exhaustive_cap(g, cap)
    everyone = full_mask(g.order)
    return [mask for mask in range(1 << g.order)
            if mask == 0 or find_splitter(g.rows, mask, everyone) is None]


def enumerate_modules(g: Graph, cap: Optional[int] = None) -> List[VertexSet]:
    """All modules of g (trivial ones included), in ascending mask order."""
    return [VertexSet(g.order, mask) for mask in enumerate_module_masks(g, cap)]


def is_prime_exhaustive(g: Graph, cap: Optional[int] = None) -> bool:
    """Primality by definition: every module is trivial. Bounded by the exhaustive cap."""
    if g.order < 4:
        return False
    return len(enumerate_module_masks(g, cap)) == g.order + 2


@dataclass(frozen=True)
class ModularPartition:
    """A partition of V(G) whose blocks are all modules of G."""

    blocks: Tuple[VertexSet, ...]

    @classmethod
    def of(cls, g: Graph, blocks: Sequence[VertexInput]) -> "ModularPartition":
        partition = cls(tuple(as_vertex_set(g.order, b) for b in blocks))
        partition.validate(g)
        return partition

    @classmethod
    def singletons(cls, g: Graph) -> "ModularPartition":
        return cls(tuple(VertexSet(g.order, 1 << v) for v in range(g.order)))

    def validate(self, g: Graph) -> None:
        covered = 0
        for i, block in enumerate(self.blocks):
            if block.order != g.order:
                raise GraphInputError(f"block {i} {block!r} is over order {block.order}, graph has {g.order}")
            if not block:
                raise GraphInputError(f"block {i} is empty")
            if covered & block.mask:
                raise GraphInputError(f"block {i} {block!r} overlaps an earlier block")
            covered |= block.mask
            if not is_module(g, block):
                raise GraphInputError(f"block {i} {block!r} is not a module")
        if covered != full_mask(g.order):
            missing = VertexSet(g.order, full_mask(g.order) & ~covered)
            raise GraphInputError(f"blocks do not cover vertices {missing!r}")


def quotient(g: Graph, p: ModularPartition) -> Tuple[Graph, Dict[VertexSet, int]]:
    """
    G/P: one vertex per block, two blocks adjacent iff their members are.
    Block i becomes quotient vertex i.
    """
    p.validate(g)
    reps = [block.min() for block in p.blocks]
    edges = [(i, j) for i in range(len(reps)) for j in range(i + 1, len(reps))
             if g.adjacent(reps[i], reps[j])]
    return Graph.from_edges(len(reps), edges), {block: i for i, block in enumerate(p.blocks)}
