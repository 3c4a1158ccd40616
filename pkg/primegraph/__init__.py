"""
Modular decomposition, the prime bound p(G) and certified prime extensions.
"""
from primegraph.constructions import (
    ConstructionTag, ExtensionCertificate, certify, clique_stable_prime, extend,
    one_extension_special, optimal_extension, power_of_two_extension,
    prime_one_extensions, prime_two_extension_nonadjacent, q_extension, stable_stable_prime,
)
from primegraph.errors import (
    DomainError, EdgeListParseError, Graph6ParseError, GraphInputError, InvariantError,
    PrimeExtensionError, SearchRefusedError,
)
from primegraph.graph import (
    Graph, VertexSet, complement, disjoint_union, emit_edge_list, emit_graph6,
    induced_subgraph, join, parse_edge_list, parse_graph6, read_graph, substitute,
)
from primegraph.md_tree import (
    MDNode, MDTree, NodeLabel, StructureReport, build_md_tree, hat, maximal_cs_modules,
    modular_numbers,
)
from primegraph.modules import (
    ModularPartition, enumerate_modules, is_module, is_prime, quotient,
    smallest_module_containing,
)
from primegraph.prime_bound import (
    BoundCase, PrimeBoundResult, general_upper_bound, lower_bound_isolated, lower_bound_modular,
    prime_bound, upper_bound_modular,
)
