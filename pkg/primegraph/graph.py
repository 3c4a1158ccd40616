"""
Graph core: immutable simple graphs over dense integer vertices.

Adjacency is stored as one bitmask per vertex, so vertex sets are plain
integers internally and every set operation is a single bitwise op.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Tuple, Union

import networkx as nx

from primegraph.errors import EdgeListParseError, Graph6ParseError, GraphInputError

GRAPH6_MAX_ORDER = 62


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of `mask` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(order: int) -> int:
    return (1 << order) - 1


@dataclass(frozen=True)
class VertexSet:
    """A subset of [0, order) for a fixed ambient order."""

    order: int
    mask: int = 0

    def __post_init__(self):
        if self.order < 0:
            raise GraphInputError(f"negative ambient order {self.order}")
        if self.mask < 0 or self.mask >> self.order:
            raise GraphInputError(
                f"vertex set mask {self.mask:#x} exceeds ambient order {self.order}"
            )

    @classmethod
    def of(cls, order: int, members: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in members:
            if not isinstance(v, int) or v < 0 or v >= order:
                raise GraphInputError(f"vertex {v!r} out of range for order {order}")
            mask |= 1 << v
        return cls(order, mask)

    @classmethod
    def full(cls, order: int) -> "VertexSet":
        return cls(order, full_mask(order))

    @classmethod
    def empty(cls, order: int) -> "VertexSet":
        return cls(order, 0)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.order and bool(self.mask >> v & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check(self, other: "VertexSet") -> None:
        if other.order != self.order:
            raise GraphInputError(
                f"vertex sets over different orders ({self.order} vs {other.order})"
            )

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.order, self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.order, self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.order, self.mask & ~other.mask)

    def complement(self) -> "VertexSet":
        return VertexSet(self.order, full_mask(self.order) & ~self.mask)

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def min(self) -> int:
        if not self.mask:
            raise GraphInputError("empty vertex set has no minimum")
        return (self.mask & -self.mask).bit_length() - 1

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Shortlex key: smaller sets first, ties broken by sorted members."""
        return (len(self), self.members)

    def __repr__(self) -> str:
        return "{" + ",".join(str(v) for v in self) + "}"


VertexInput = Union[VertexSet, Iterable[int]]


def as_vertex_set(order: int, w: VertexInput) -> VertexSet:
    if isinstance(w, VertexSet):
        if w.order != order:
            raise GraphInputError(
                f"vertex set over order {w.order} used with a graph of order {order}"
            )
        return w
    return VertexSet.of(order, w)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..order-1.

    `rows[v]` is the neighbourhood bitmask of v. Instances are validated on
    construction: symmetric, irreflexive, in range.
    """

    order: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise GraphInputError(f"negative order {self.order}")
        if len(self.rows) != self.order:
            raise GraphInputError(
                f"expected {self.order} adjacency rows, got {len(self.rows)}"
            )
        limit = full_mask(self.order)
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~limit:
                raise GraphInputError(f"row {v} references vertices outside [0, {self.order})")
            if row >> v & 1:
                raise GraphInputError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphInputError(f"asymmetric adjacency between {v} and {u}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphInputError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def from_edge_bits(cls, order: int, bits: int) -> "Graph":
        """Decode the upper triangle in graph6 order (0,1),(0,2),(1,2),(0,3),..."""
        rows = [0] * order
        index = 0
        for j in range(1, order):
            for i in range(j):
                if bits >> index & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                index += 1
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> "Graph":
        everyone = full_mask(order)
        return cls(order, tuple(everyone & ~(1 << v) for v in range(order)))

    @classmethod
    def path(cls, order: int) -> "Graph":
        return cls.from_edges(order, ((v, v + 1) for v in range(order - 1)))

    # -- queries ------------------------------------------------------------

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.order, self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def vertex_set(self) -> VertexSet:
        return VertexSet.full(self.order)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def isolated_count(self) -> int:
        return sum(1 for row in self.rows if row == 0)

    def is_clique(self, w: VertexInput) -> bool:
        mask = as_vertex_set(self.order, w).mask
        return all(self.rows[v] & mask == mask & ~(1 << v) for v in iter_bits(mask))

    def is_stable(self, w: VertexInput) -> bool:
        mask = as_vertex_set(self.order, w).mask
        return all(self.rows[v] & mask == 0 for v in iter_bits(mask))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        return self.to_networkx()

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.order))
        h.add_edges_from(self.edges())
        return h

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges()})"


# -- graph operations -------------------------------------------------------

def complement(g: Graph) -> Graph:
    everyone = full_mask(g.order)
    return Graph(g.order, tuple(everyone & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, w: VertexInput) -> Tuple[Graph, Dict[int, int]]:
    """
    Return G[W] relabelled onto 0..|W|-1 in ascending vertex order, together
    with the old -> new index mapping.
    """
    members = as_vertex_set(g.order, w).members
    mapping = {old: new for new, old in enumerate(members)}
    rows = []
    for old in members:
        row = 0
        for u in iter_bits(g.rows[old]):
            if u in mapping:
                row |= 1 << mapping[u]
        rows.append(row)
    return Graph(len(members), tuple(rows)), mapping


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Place h after g: h's vertex i becomes g.order + i."""
    shift = g.order
    rows = list(g.rows) + [row << shift for row in h.rows]
    return Graph(g.order + h.order, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    union = disjoint_union(g, h)
    left = full_mask(g.order)
    right = full_mask(h.order) << g.order
    rows = [row | right if v < g.order else row | left for v, row in enumerate(union.rows)]
    return Graph(union.order, tuple(rows))


def substitute(g: Graph, v: int, h: Graph) -> Graph:
    """
    Replace vertex v of g by a copy of h. The copy occupies 0..h.order-1, the
    remaining vertices of g follow in ascending order; every copy vertex
    inherits v's neighbourhood.
    """
    if not 0 <= v < g.order:
        raise GraphInputError(f"vertex {v} out of range for order {g.order}")
    if h.order == 0:
        raise GraphInputError("cannot substitute the empty graph")
    rest = [u for u in range(g.order) if u != v]
    position = {u: h.order + i for i, u in enumerate(rest)}
    edges = list(h.edges())
    for a, b in g.edges():
        if v not in (a, b):
            edges.append((position[a], position[b]))
        else:
            other = b if a == v else a
            edges.extend((c, position[other]) for c in range(h.order))
    return Graph.from_edges(h.order + len(rest), edges)


# -- graph6 -----------------------------------------------------------------

def emit_graph6(g: Graph) -> str:
    if g.order > GRAPH6_MAX_ORDER:
        raise GraphInputError(
            f"graph6 output supports at most {GRAPH6_MAX_ORDER} vertices, got {g.order}"
        )
    bits = []
    for j in range(1, g.order):
        for i in range(j):
            bits.append(1 if g.adjacent(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.order + 63)]
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start:start + 6]:
            value = value << 1 | bit
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    data = text.rstrip("\r\n")
    if not data:
        raise Graph6ParseError("empty graph6 string", 0)
    head = ord(data[0])
    if head == 126:
        raise Graph6ParseError("long-form graph6 header is not supported (order > 62)", 0)
    if not 63 <= head <= 125:
        raise Graph6ParseError(f"invalid header byte {data[0]!r}", 0)
    order = head - 63
    nbits = order * (order - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    for i, ch in enumerate(body[:nbytes]):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"invalid data byte {ch!r}", 1 + i)
    if len(body) < nbytes:
        raise Graph6ParseError(
            f"truncated: order {order} needs {nbytes} data bytes, found {len(body)}",
            1 + len(body),
        )
    if len(body) > nbytes:
        raise Graph6ParseError("trailing garbage after graph6 data", 1 + nbytes)
    bits = 0
    index = 0
    for i, ch in enumerate(body):
        value = ord(ch) - 63
        for shift in range(5, -1, -1):
            bit = value >> shift & 1
            if index < nbits:
                bits |= bit << index
            elif bit:
                raise Graph6ParseError("non-zero padding bits", 1 + i)
            index += 1
    return Graph.from_edge_bits(order, bits)


# -- edge list --------------------------------------------------------------

def _is_index(field: str) -> bool:
    return field.isascii() and field.isdigit()


def parse_edge_list(text: str) -> Graph:
    """
    Parse "n <order>" followed by one "u v" pair per line. Blank lines and
    lines starting with '#' are skipped; duplicate edges collapse.
    """
    order = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if order is None:
            if len(fields) != 2 or fields[0] != "n" or not _is_index(fields[1]):
                raise EdgeListParseError(f"expected header 'n <order>', got {line!r}", lineno)
            order = int(fields[1])
            continue
        if len(fields) != 2 or not all(_is_index(f) for f in fields):
            raise EdgeListParseError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            raise EdgeListParseError(f"self-loop at vertex {u}", lineno)
        if u >= order or v >= order:
            raise EdgeListParseError(f"vertex out of range for order {order}", lineno)
        edges.append((u, v))
    if order is None:
        raise EdgeListParseError("missing header 'n <order>'", 1)
    return Graph.from_edges(order, edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.order}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str, fmt: str = "auto") -> Graph:
    """Decode `text` as graph6 or edge list; `auto` picks edge list when the first line starts with 'n '."""
    if fmt == "graph6":
        return parse_graph6(text.strip())
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt != "auto":
        raise GraphInputError(f"unknown input format {fmt!r}")
    stripped = text.lstrip()
    if stripped.startswith("n ") or stripped.startswith("n\t"):
        return parse_edge_list(text)
    return parse_graph6(text.strip())
