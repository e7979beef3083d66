from itertools import combinations

import networkx as nx
from hypothesis import given, settings

from klein5.graph import SimpleGraph, complete, join, cycle
from klein5.obstructions import build_k2m7, load_catalog
from klein5.subdivision import SubdivisionWitness, contains_k6_subdivision

from conftest import dense_graphs


def naive_k6_subdivision(g: SimpleGraph) -> bool:
    """Try every branch set and every packing of simple paths, pair by pair."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    for branch in combinations(range(g.n), 6):
        bset = set(branch)
        pairs = list(combinations(branch, 2))

        def pack(i: int, used: set[int]) -> bool:
            if i == len(pairs):
                return True
            a, b = pairs[i]
            blocked = (bset | used) - {a, b}
            sub = h.subgraph(set(h.nodes) - blocked)
            for p in nx.all_simple_paths(sub, a, b):
                if pack(i + 1, used | set(p[1:-1])):
                    return True
            return False

        if pack(0, set()):
            return True
    return False


def test_k6_and_k5():
    w = contains_k6_subdivision(complete(6))
    assert w is not None and w.validate(complete(6))
    assert all(len(p) == 2 for p in w.paths)
    assert contains_k6_subdivision(complete(5)) is None


def test_subdivided_k6_found():
    # replace edge 0-1 of K6 by the path 0-6-1 and edge 2-3 by 2-7-8-3
    edges = set(complete(6).edges) - {(0, 1), (2, 3)}
    edges |= {(0, 6), (1, 6), (2, 7), (7, 8), (3, 8)}
    g = SimpleGraph(9, frozenset(edges))
    w = contains_k6_subdivision(g)
    assert w is not None and w.validate(g)
    assert set(w.branch) == set(range(6))


def test_every_catalog_graph_has_one():
    for surface in ("klein", "torus"):
        for e in load_catalog(surface, verify=False):
            w = contains_k6_subdivision(e.graph)
            assert w is not None and w.validate(e.graph), e.name
    k2m7 = build_k2m7()
    w = contains_k6_subdivision(k2m7)
    assert w is not None and w.validate(k2m7)


def test_witness_validation_rejects_tampering():
    g = complete(6)
    w = contains_k6_subdivision(g)
    broken = SubdivisionWitness(w.branch, w.paths[:-1])
    assert not broken.validate(g)
    assert not w.validate(g.remove_edge(0, 1))


@settings(max_examples=40)
@given(dense_graphs(min_n=6, max_n=9))
def test_agrees_with_naive_enumerator(g):
    w = contains_k6_subdivision(g)
    assert (w is not None) == naive_k6_subdivision(g)
    if w is not None:
        assert w.validate(g)
        assert all(g.degree(b) >= 5 for b in w.branch)
