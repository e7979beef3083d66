import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klein5.coloring import color
from klein5.decide import (
    Colorable,
    DecisionError,
    NotEmbeddable,
    Obstructed,
    ObstructionWitness,
    PreconditionError,
    decide_eulerian_triangulation,
    decide_five_colorable,
    embeds_in_surface,
    find_obstruction,
    scan_order,
)
from klein5.embedding import switch_vertex
from klein5.generator import eulerian_k6_triangulation, klein_grid_triangulation, random_instance
from klein5.graph import GraphError, SimpleGraph, complete, cycle, disjoint_union, join
from klein5.iso import VertexMapping
from klein5.obstructions import build_k2m7, catalog_entry, load_catalog


def test_k6_identity_witness():
    v = decide_five_colorable(complete(6))
    assert isinstance(v, Obstructed)
    assert v.witness.name == "K6" and v.witness.mapping == VertexMapping(tuple(range(6)))
    assert v.exit_code == 1


def test_k2m7_is_not_embeddable():
    v = decide_five_colorable(build_k2m7())
    assert isinstance(v, NotEmbeddable) and v.exit_code == 3
    assert "Klein bottle" in v.explanation


def test_six_regular_klein_triangulations_colorable():
    for p, q in ((3, 3), (4, 3), (3, 4), (4, 4), (5, 3)):
        s = klein_grid_triangulation(p, q)
        assert set(s.graph.degrees()) == {6}
        v = decide_five_colorable(s.graph, scheme=s)
        assert isinstance(v, Colorable)
        assert v.coloring.is_proper(s.graph) and v.coloring.is_total(s.graph)


@pytest.mark.parametrize("surface", ["klein", "torus"])
def test_each_entry_obstructed_by_itself(surface):
    for e in load_catalog(surface):
        v = decide_five_colorable(e.graph, surface)
        assert isinstance(v, Obstructed) and v.witness.name == e.name
        assert v.witness.validate(e.graph, surface)


def test_scan_order_ascending():
    order = [(e.graph.n, e.graph.m) for e in scan_order("klein")]
    assert order == sorted(order)
    assert scan_order("klein")[0].name == "K6"
    assert [e.name for e in scan_order("torus")] == ["K6", "C3+C5", "K2+H7", "T11"]


def test_fast_mode_defers_coloring():
    g = cycle(7)
    v = decide_five_colorable(g, fast=True)
    assert isinstance(v, Colorable) and v.coloring is None
    assert v.materialize().is_proper(g)
    assert isinstance(decide_five_colorable(complete(6), fast=True), Obstructed)


def test_certificate_checked():
    k6 = catalog_entry("K6", "klein")
    s = k6.embeddings[0]
    assert isinstance(decide_five_colorable(k6.graph, "klein", scheme=s), Obstructed)
    with pytest.raises(PreconditionError):
        decide_five_colorable(k6.graph, "torus", scheme=s)  # Klein scheme is not a torus one
    torus_k6 = catalog_entry("K6", "torus").embeddings[0]
    with pytest.raises(PreconditionError):
        decide_five_colorable(k6.graph, "klein", scheme=torus_k6)
    with pytest.raises(PreconditionError):
        decide_five_colorable(cycle(6), "klein", scheme=s)
    assert embeds_in_surface(s, "klein") and not embeds_in_surface(s, "torus")


def test_unknown_surface():
    with pytest.raises(GraphError):
        decide_five_colorable(complete(3), "sphere")


def test_torus_and_klein_agree_on_shared_witnesses():
    for name in ("K6", "C3+C5", "K2+H7"):
        g = catalog_entry(name, "torus").graph
        host = disjoint_union(g, cycle(4)) if name != "K6" else join(g, complete(1))
        a = decide_five_colorable(host, "torus")
        b = decide_five_colorable(host, "klein")
        assert isinstance(a, Obstructed) and isinstance(b, Obstructed)
        assert a.witness.name == b.witness.name
        assert a.witness.mapping == b.witness.mapping


def test_witness_replay_rejects_forgery():
    w = ObstructionWitness("K6", VertexMapping((0, 1, 2, 3, 4, 5)))
    assert w.validate(complete(6))
    assert not w.validate(complete(6).remove_edge(0, 1))
    assert not ObstructionWitness("L9", w.mapping).validate(complete(6))


@st.composite
def generated(draw):
    seed = draw(st.integers(0, 10_000))
    steps = draw(st.integers(0, 12))
    return random_instance(seed, steps, max_vertices=12)


@settings(max_examples=25)
@given(generated())
def test_agreement_and_replay_on_generator_output(inst):
    g, _ = inst
    v = decide_five_colorable(g)
    assert not isinstance(v, NotEmbeddable)
    assert isinstance(v, Colorable) == (color(g, 5) is not None)
    if isinstance(v, Obstructed):
        assert v.witness.validate(g)
    else:
        assert v.coloring.is_proper(g)


@settings(max_examples=25)
@given(generated(), st.data())
def test_adding_edges_keeps_obstruction(inst, data):
    g, _ = inst
    v = decide_five_colorable(g, fast=True)
    missing = [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if not g.has_edge(a, b)]
    if not isinstance(v, Obstructed) or not missing:
        return
    extra = data.draw(st.lists(st.sampled_from(missing), min_size=1, max_size=3, unique=True))
    h = g.add_edges(extra)
    w = decide_five_colorable(h, fast=True)
    # the denser graph may leave the Klein bottle, but it never becomes colorable
    assert not isinstance(w, Colorable)
    assert color(h, 5) is None


def test_eulerian_fast_path():
    s = eulerian_k6_triangulation()
    v = decide_eulerian_triangulation(s)
    assert isinstance(v, Obstructed) and v.witness.name == "K6"
    assert v.witness.validate(s.graph)
    grid = klein_grid_triangulation(3, 3)
    v = decide_eulerian_triangulation(grid)
    assert isinstance(v, Colorable) and v.coloring.is_proper(grid.graph)


def test_eulerian_preconditions_reported_individually():
    l3 = catalog_entry("L3", "klein").embeddings[0]  # a triangulation with odd degrees
    with pytest.raises(PreconditionError) as info:
        decide_eulerian_triangulation(l3)
    assert info.value.failures == ["some vertex has odd degree"]
    k6 = catalog_entry("K6", "klein").embeddings[0]  # has a hexagonal face, odd degrees
    with pytest.raises(PreconditionError) as info:
        decide_eulerian_triangulation(k6)
    assert set(info.value.failures) == {"not a triangulation", "some vertex has odd degree"}
    t11 = catalog_entry("T11", "torus").embeddings[0]
    with pytest.raises(PreconditionError) as info:
        decide_eulerian_triangulation(t11)
    assert info.value.failures == ["surface is the torus, not the Klein bottle"]
