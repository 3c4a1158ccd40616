import networkx as nx
import pytest

from primegraph.constructions import (
    ConstructionTag, certify, clique_stable_prime, extend, one_extension_special,
    optimal_extension, power_of_two_extension, prime_one_extensions,
    prime_two_extension_nonadjacent, q_extension, stable_stable_prime,
)
from primegraph.errors import DomainError, InvariantError
from primegraph.graph import Graph, induced_subgraph, parse_graph6
from primegraph.md_tree import modular_numbers
from primegraph.modules import is_prime, is_prime_rows
from primegraph.prime_bound import ceil_log2, prime_bound


def all_graphs(n):
    return (Graph.from_edge_bits(n, bits) for bits in range(2 ** (n * (n - 1) // 2)))


def isomorphic(g, h):
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def extends(cert, g):
    return induced_subgraph(cert.host, range(g.order))[0] == g


def attach(g, mask):
    rows = list(g.rows) + [mask]
    for v in range(g.order):
        if mask >> v & 1:
            rows[v] |= 1 << g.order
    return rows


# -- gadgets -------------------------------------------------------------------


def test_stable_stable_small_cases():
    g = stable_stable_prime(2)
    assert set(g.edges()) == {(0, 2), (1, 2), (1, 3)}
    assert isomorphic(g, Graph.path(4))
    assert isomorphic(stable_stable_prime(3), Graph.path(5))
    assert stable_stable_prime(4).order == 7
    with pytest.raises(DomainError):
        stable_stable_prime(1)


def test_clique_stable_small_cases():
    g = clique_stable_prime(2)
    assert set(g.edges()) == {(0, 1), (0, 2), (1, 3)}
    assert isomorphic(g, Graph.path(4))
    assert clique_stable_prime(3).order == 5
    assert clique_stable_prime(7).order == 10
    with pytest.raises(DomainError):
        clique_stable_prime(0)


@pytest.mark.parametrize("size", range(2, 33))
def test_gadgets_are_prime_with_declared_parts(size):
    t = ceil_log2(size + 1)
    for build, first_part_is_clique in ((stable_stable_prime, False), (clique_stable_prime, True)):
        g = build(size)
        assert g.order == size + t
        assert is_prime(g)
        part = range(size)
        assert g.is_clique(part) if first_part_is_clique else g.is_stable(part)
        assert g.is_stable(range(size, size + t))


# -- one added vertex on a prime graph -----------------------------------------


def test_prime_one_extensions_of_p4(p4):
    found = [vs.members for vs in prime_one_extensions(p4)]
    assert found == [(0,), (3,), (0, 3), (1, 2), (0, 1, 3), (0, 2, 3)]


def test_prime_one_extensions_count():
    assert len(prime_one_extensions(Graph.path(5))) == 2 ** 5 - 10 - 2
    assert len(prime_one_extensions(Graph.path(8))) == 2 ** 8 - 16 - 2


def test_prime_one_extensions_rejects_non_prime(k4):
    with pytest.raises(DomainError):
        prime_one_extensions(k4)


def test_prime_one_extensions_characterise_prime_extensions():
    primes = [g for g in all_graphs(5) if is_prime(g)]
    primes += [Graph.path(4), Graph.path(6), Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])]
    assert len(primes) >= 20
    for g in primes:
        listed = {vs.mask for vs in prime_one_extensions(g)}
        assert len(listed) == 2 ** g.order - 2 * g.order - 2
        for mask in range(1 << g.order):
            assert is_prime_rows(attach(g, mask)) == (mask in listed)


def test_two_extension_of_p4(p4):
    cert = prime_two_extension_nonadjacent(p4)
    assert cert.added_count == 2
    assert cert.host.neighbors(4).members == (0,)
    assert cert.host.neighbors(5).members == (3,)
    assert isomorphic(cert.host, Graph.path(6))
    assert cert.stable_added_set and cert.verified_prime
    assert prime_two_extension_nonadjacent(p4) == cert
    assert prime_two_extension_nonadjacent(Graph.path(5)).verified_prime


# -- stable added set ----------------------------------------------------------


def test_q_extension_examples(p4, k4):
    cert = q_extension(Graph.empty(3))
    assert cert.added_count == 2
    assert isomorphic(cert.host, Graph.path(5))

    cert = q_extension(k4)
    assert cert.added_count == 3
    assert cert.stable_added_set and cert.verified_prime

    cert = q_extension(p4)
    assert cert.added_count == 2
    assert cert.construction_tag is ConstructionTag.STABLE_TWO_EXTENSION

    with pytest.raises(DomainError):
        q_extension(Graph.empty(1))


def test_q_extension_nested_structures(p4_into_p4, k4_union_p4):
    for g in (p4_into_p4, k4_union_p4, parse_graph6("G?B@`o"), Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])):
        cert = q_extension(g)
        assert extends(cert, g)
        assert cert.stable_added_set and cert.verified_prime


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_q_extension_contract(n):
    for g in all_graphs(n):
        cert = q_extension(g)
        assert extends(cert, g)
        assert cert.stable_added_set
        assert cert.verified_prime
        m = modular_numbers(g).modular_number
        if m >= 2:
            assert cert.added_count <= ceil_log2(m + 1)


# -- one added vertex on a non-prime graph ---------------------------------------


def test_one_extension_k1(two_k2, k2_plus_k1):
    cert = one_extension_special(two_k2, "k1")
    assert cert.added_count == 1 and cert.verified_prime
    assert isomorphic(cert.host, Graph.path(5))

    cert = one_extension_special(k2_plus_k1, "k1")
    assert cert.verified_prime
    assert isomorphic(cert.host, Graph.path(4))


def test_one_extension_m1(p4_into_p4):
    cert = one_extension_special(p4_into_p4, "m1")
    assert cert.host.order == 8
    assert cert.verified_prime
    assert cert.construction_tag is ConstructionTag.ONE_EXTENSION_M1


def test_one_extension_preconditions(two_k2):
    with pytest.raises(DomainError):
        one_extension_special(Graph.empty(2), "k1")
    with pytest.raises(DomainError):
        one_extension_special(two_k2, "m1")
    with pytest.raises(DomainError):
        one_extension_special(Graph.path(4), "m1")
    with pytest.raises(ValueError):
        one_extension_special(two_k2, "k2")


# -- power of two --------------------------------------------------------------


def test_power_of_two_extension(k4_union_p4, k4):
    cert = power_of_two_extension(k4_union_p4)
    assert cert.added_count == 2
    assert cert.verified_prime
    assert extends(cert, k4_union_p4)
    with pytest.raises(DomainError):
        power_of_two_extension(k4)
    with pytest.raises(DomainError):
        power_of_two_extension(Graph.from_edges(4, [(0, 1), (2, 3)]))


# -- dispatch ------------------------------------------------------------------


def test_optimal_extension_examples(p4, k4, two_k2):
    cert = optimal_extension(p4)
    assert cert.added_count == 0 and cert.host == p4
    assert cert.construction_tag is ConstructionTag.ALREADY_PRIME

    cert = optimal_extension(Graph.empty(3))
    assert cert.added_count == 2 and cert.verified_prime

    cert = optimal_extension(two_k2)
    assert cert.added_count == 1 and cert.host.order == 5

    cert = optimal_extension(k4)
    assert cert.added_count == 3 and cert.verified_prime


def test_optimal_extension_tiny_graphs():
    for n in (0, 1):
        cert = optimal_extension(Graph.empty(n))
        assert cert.host == Graph.path(4)
        assert cert.added_count == 4 - n
        assert cert.construction_tag is ConstructionTag.TINY_GRAPH


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_optimal_extension_is_exact(n):
    for g in all_graphs(n):
        cert = optimal_extension(g)
        assert extends(cert, g)
        assert cert.verified_prime
        assert cert.added_count == prime_bound(g).value


@pytest.mark.slow
def test_optimal_extension_is_exact_order_six():
    for g in all_graphs(6):
        cert = optimal_extension(g)
        assert cert.verified_prime
        assert cert.added_count == prime_bound(g).value


def test_extend_modes(k4):
    assert extend(k4, "stable-q").stable_added_set
    assert extend(k4, "optimal").added_count == 3
    with pytest.raises(DomainError):
        extend(k4, "greedy")


# -- certificates ----------------------------------------------------------------


def test_certify_checks_extension_property(p4):
    with pytest.raises(InvariantError):
        certify(p4, Graph.from_edges(5, [(0, 2), (1, 2), (2, 3), (3, 4)]), ConstructionTag.ORACLE_WITNESS)
    with pytest.raises(InvariantError):
        certify(p4, Graph.path(3), ConstructionTag.ORACLE_WITNESS)


def test_certificate_serialisation(k4):
    data = q_extension(k4).to_dict()
    assert data["host_format"] == "graph6"
    assert data["base_order"] == 4 and data["added_count"] == 3
    assert data["construction_tag"] == "q-extension"
    assert data["verification"] == "closure+exhaustive"
    assert parse_graph6(data["host"]).order == 7


def test_large_hosts_skip_verification_and_use_edge_lists():
    cert = q_extension(Graph.empty(60))
    assert cert.added_count == 6
    assert cert.verification == "skipped"
    assert not cert.verified_prime
    data = cert.to_dict()
    assert data["host_format"] == "edgelist"
    assert data["host"].startswith("n 66\n")


def test_verify_cap_controls_verification(k4):
    cert = optimal_extension(k4, verify_cap=6)
    assert cert.verification == "skipped"
    assert "a0" in cert.to_dot()
