import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from klein5.graph import GraphError, SimpleGraph, complete, cycle, join, path
from klein5.iso import (
    VertexMapping,
    automorphisms,
    count_copies,
    find_isomorphism,
    is_isomorphic,
    iter_subgraph_isomorphisms,
    subgraph_isomorphism,
)
from klein5.obstructions import (
    build_c3c5,
    build_k2h7,
    build_k2m7,
    build_l3,
    build_l3_alternative,
)

from conftest import dense_graphs, graphs


def nxg(g: SimpleGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_contains(pattern: SimpleGraph, host: SimpleGraph) -> bool:
    return GraphMatcher(nxg(host), nxg(pattern)).subgraph_is_monomorphic()


def test_spec_examples():
    assert subgraph_isomorphism(complete(6), build_k2h7()) is None
    assert subgraph_isomorphism(complete(3), cycle(5)) is None
    host = build_k2m7()
    for pattern in (build_c3c5(), complete(6), build_k2h7()):
        assert subgraph_isomorphism(pattern, host) is None


def test_mapping_found_and_valid():
    m = subgraph_isomorphism(cycle(5), complete(6))
    assert m is not None and m.validate(cycle(5), complete(6))


def test_deterministic():
    a = list(iter_subgraph_isomorphisms(cycle(4), build_c3c5()))
    b = list(iter_subgraph_isomorphisms(cycle(4), build_c3c5()))
    assert a == b and a


def test_mapping_validation_rejects_bad_maps():
    assert not VertexMapping((0, 0, 1)).validate(path(3), complete(3))
    assert not VertexMapping((0, 2, 1)).validate(path(3), path(3))
    assert not VertexMapping((0, 1, 5)).validate(path(3), complete(3))
    assert VertexMapping((0, 1, 2)).format() == "0->0 1->1 2->2"


@given(graphs(min_n=1, max_n=5), dense_graphs(min_n=4, max_n=9))
def test_subgraph_isomorphism_matches_networkx(pattern, host):
    found = subgraph_isomorphism(pattern, host)
    assert (found is not None) == nx_contains(pattern, host)
    if found is not None:
        assert found.validate(pattern, host)


@given(dense_graphs(min_n=4, max_n=8))
def test_count_copies_of_triangles(host):
    tri = sum(1 for c in nx.enumerate_all_cliques(nxg(host)) if len(c) == 3)
    assert count_copies(complete(3), host) == tri


@given(graphs(min_n=1, max_n=8), st.randoms(use_true_random=False))
def test_isomorphism_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    m = find_isomorphism(g, h)
    assert m is not None and m.validate(g, h)


@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=7))
def test_isomorphism_matches_networkx(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(nxg(g), nxg(h))


def test_isomorphism_examples():
    assert is_isomorphic(join(cycle(3), cycle(5)), join(cycle(5), cycle(3)))
    six = build_c3c5().induced(range(6))[0]
    assert not is_isomorphic(complete(6), six)
    assert is_isomorphic(build_l3(), build_l3_alternative())


def test_isomorphism_size_limit():
    with pytest.raises(GraphError):
        is_isomorphic(cycle(17), cycle(17))


def test_automorphism_counts():
    assert len(automorphisms(cycle(5))) == 10
    assert len(automorphisms(complete(4))) == 24
    assert len(automorphisms(build_c3c5())) == 6 * 10
