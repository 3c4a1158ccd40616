import networkx as nx
import pytest

from primegraph.errors import GraphInputError, SearchRefusedError
from primegraph.graph import Graph, VertexSet, complement, induced_subgraph, iter_bits
from primegraph.modules import (
    ModularPartition, enumerate_modules, is_module, is_prime, is_prime_exhaustive, quotient,
    smallest_module_containing,
)


def all_graphs(n):
    return (Graph.from_edge_bits(n, bits) for bits in range(2 ** (n * (n - 1) // 2)))


def test_is_module(p4, two_k2):
    assert not is_module(p4, [1, 2])
    assert is_module(two_k2, [0, 1])
    assert not is_module(two_k2, [0, 2])
    assert is_module(p4, [])
    assert is_module(p4, [0, 1, 2, 3])
    assert is_module(p4, [2])


def test_smallest_module_containing(p4, two_k2):
    assert smallest_module_containing(p4, [0, 1]).members == (0, 1, 2, 3)
    assert smallest_module_containing(two_k2, [0, 2]).members == (0, 1, 2, 3)
    assert smallest_module_containing(Graph.path(3), [0, 2]).members == (0, 2)
    assert smallest_module_containing(p4, [3]).members == (3,)
    with pytest.raises(GraphInputError):
        smallest_module_containing(p4, [])


def test_is_prime_named_graphs(p4, k4, two_k2):
    assert is_prime(p4)
    assert is_prime(Graph.path(5))
    assert is_prime(Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]))
    bull = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)])
    assert is_prime(bull)
    assert not is_prime(k4)
    assert not is_prime(two_k2)
    assert not is_prime(Graph.path(3))
    assert not is_prime(Graph.empty(0))


def test_enumerate_modules(p4):
    modules = enumerate_modules(p4)
    assert len(modules) == 6
    assert [m.mask for m in modules] == [0, 1, 2, 4, 8, 15]
    assert len(enumerate_modules(Graph.complete(3))) == 8
    with pytest.raises(SearchRefusedError) as info:
        enumerate_modules(Graph.empty(5), cap=4)
    assert info.value.cap == 4


def test_closure_primality_matches_definition():
    for g in all_graphs(5):
        assert is_prime(g) == is_prime_exhaustive(g)
        assert is_prime(g) == is_prime(complement(g))


def test_prime_graphs_agree_with_networkx_connectivity():
    # a prime graph and its complement are both connected
    for g in all_graphs(5):
        if is_prime(g):
            assert nx.is_connected(g.to_networkx())
            assert nx.is_connected(complement(g).to_networkx())


def test_quotient(two_k2):
    partition = ModularPartition.of(two_k2, [[0, 1], [2, 3]])
    q, index = quotient(two_k2, partition)
    assert q == Graph.empty(2)
    assert index[VertexSet.of(4, [2, 3])] == 1

    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)])
    p = ModularPartition.of(g, [[0], [1], [2], [3], [4]])
    q, _ = quotient(g, p)
    assert q == g
    assert ModularPartition.singletons(g) == p


@pytest.mark.parametrize("blocks", [
    [[0, 2], [1, 3]],       # not modules
    [[0, 1], [1, 2, 3]],    # overlap
    [[0, 1]],               # missing cover
    [[0, 1], [], [2, 3]],   # empty block
])
def test_invalid_partitions(two_k2, blocks):
    with pytest.raises(GraphInputError):
        ModularPartition.of(two_k2, blocks)


def splits(g, mask, universe):
    return any(g.rows[v] & mask not in (0, mask) for v in iter_bits(universe & ~mask))


@pytest.mark.parametrize("n", range(2, 6))
def test_module_family_properties(n):
    for g in all_graphs(n):
        modules = [m.mask for m in enumerate_modules(g)]
        for m in modules:
            # a module stays a module inside any induced subgraph
            for w in range(1 << n):
                assert not splits(g, m & w, w)
            # the modules of g[M] are exactly the modules of g inside M
            sub, mapping = induced_subgraph(g, list(iter_bits(m)))
            inside = sorted(sum(1 << mapping[v] for v in iter_bits(x)) for x in modules if x & ~m == 0)
            assert [x.mask for x in enumerate_modules(sub)] == inside
        for a in modules:
            for b in modules:
                if a and b and a & b == 0:
                    assert {g.rows[u] & b for u in iter_bits(a)} in ({0}, {b})


@pytest.mark.parametrize("n", range(2, 6))
def test_smallest_module_is_minimal(n):
    for g in all_graphs(n):
        modules = [m.mask for m in enumerate_modules(g)]
        for w in range(1, 1 << n):
            found = smallest_module_containing(g, list(iter_bits(w))).mask
            assert found in modules
            containing = [m for m in modules if m & w == w]
            assert all(found & ~m == 0 for m in containing)
