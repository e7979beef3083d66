from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klein5.embedding import (
    euler_genus,
    face_count,
    format_scheme,
    is_eulerian,
    is_orientable,
    is_triangulation,
    normalize,
    scheme_from_neighbor_rotation,
    trace_face_corners,
    trace_faces,
)
from klein5.generator import (
    AddEdgeInFace,
    AddVertexInFace,
    MutationError,
    SplitVertex,
    base_name,
    base_schemes,
    eulerian_k6_triangulation,
    klein_grid_triangulation,
    mutate,
    random_instance,
    random_op,
)
from klein5.iso import is_isomorphic, subgraph_isomorphism
from klein5.graph import complete, cycle
from klein5.obstructions import catalog_entry
from klein5.rng import SplitMix64


def klein_k6():
    return catalog_entry("K6", "klein").embeddings[0]


def face_index(s, length):
    return next(i for i, f in enumerate(trace_face_corners(s)) if len(f) == length)


def test_vertex_in_triangle():
    s = klein_k6()
    t = mutate(s, AddVertexInFace(face_index(s, 3), (0, 1, 2)))
    assert face_count(t) == face_count(s) + 2
    assert euler_genus(t) == euler_genus(s) == 2
    assert t.n == s.n + 1 and t.m == s.m + 3


def test_chord_across_hexagon():
    # a plane hexagon: two faces of length six
    s = scheme_from_neighbor_rotation(cycle(6), [[(v - 1) % 6, (v + 1) % 6] for v in range(6)])
    assert [len(f) for f in trace_face_corners(s)] == [6, 6]
    for i, j in ((0, 3), (0, 2), (1, 4)):
        t = mutate(s, AddEdgeInFace(0, i, j))
        lengths = sorted(len(w) for w in trace_faces(t))
        assert face_count(t) == 3 and euler_genus(t) == 0
        lengths.remove(6)
        assert sum(lengths) == 8


def test_chord_in_klein_face():
    # grow an 8-walk inside the hexagonal face of a Klein K6 and cut it by a chord
    s = klein_k6()
    t = mutate(s, AddVertexInFace(face_index(s, 6), (0,)))
    fi = face_index(t, 8)
    corners = trace_face_corners(t)[fi]
    new = t.n - 1
    i = next(p for p, c in enumerate(corners) if c.vertex == new)
    j = next(p for p, c in enumerate(corners) if not t.graph.has_edge(new, c.vertex) and c.vertex != new)
    u = mutate(t, AddEdgeInFace(fi, i, j))
    before = Counter(len(w) for w in trace_faces(t))
    after = Counter(len(w) for w in trace_faces(u))
    assert before - after == Counter({8: 1})
    assert sum(k * c for k, c in (after - before).items()) == 8 + 2
    assert euler_genus(u) == 2


def test_split_vertex_on_k6():
    s = klein_k6()
    t = mutate(s, SplitVertex(0, 0, 2))
    assert t.n == 7 and t.m == 15
    x, y = 0, 6
    assert not t.graph.has_edge(x, y)
    assert t.graph.degree(x) + t.graph.degree(y) == 5
    assert euler_genus(t) <= 2
    # identifying x and y again gives back K6
    merged = {tuple(sorted((0 if a == 6 else a, 0 if b == 6 else b))) for a, b in t.graph.edges}
    assert merged == set(complete(6).edges)


def test_rejected_moves():
    s = klein_k6()
    fi = face_index(s, 3)
    with pytest.raises(MutationError):
        mutate(s, AddEdgeInFace(fi, 0, 1))  # already adjacent: parallel edge
    with pytest.raises(MutationError):
        mutate(s, AddEdgeInFace(fi, 0, 0))
    with pytest.raises(MutationError):
        mutate(s, AddVertexInFace(99, (0,)))
    with pytest.raises(MutationError):
        mutate(s, AddVertexInFace(fi, ()))
    with pytest.raises(MutationError):
        mutate(s, SplitVertex(0, 1, 1))
    with pytest.raises(MutationError):
        mutate(s, SplitVertex(7, 0, 1))


def test_bases():
    names = [n for n, _ in base_schemes()]
    assert names[:4] == ["K6", "K6#1", "K6#2", "K6#3"]
    assert {"grid3x3", "grid4x3", "grid3x4", "eulerian-k6"} <= set(names)
    for _, s in base_schemes():
        assert euler_genus(s) == 2 and not is_orientable(s)


def test_grid_triangulations():
    for p, q in ((3, 3), (4, 3), (3, 4), (4, 5)):
        s = klein_grid_triangulation(p, q)
        assert s.n == p * q and s.m == 3 * p * q
        assert is_triangulation(s) and euler_genus(s) == 2 and not is_orientable(s)


def test_eulerian_k6_base():
    s = eulerian_k6_triangulation()
    assert is_triangulation(s) and is_eulerian(s.graph)
    assert euler_genus(s) == 2 and not is_orientable(s)
    assert subgraph_isomorphism(complete(6), s.graph) is not None


def test_steps_zero_returns_base():
    g, s = random_instance(42, 0)
    name = base_name(42)
    base = dict(base_schemes())[name]
    assert s == normalize(base) and g == base.graph


def test_reproducible_bytes():
    a = format_scheme(random_instance(7, 20)[1])
    b = format_scheme(random_instance(7, 20)[1])
    assert a == b
    assert random_instance(8, 20)[1] != random_instance(7, 20)[1]


def test_negative_steps_rejected():
    with pytest.raises(ValueError):
        random_instance(1, -1)


@settings(max_examples=40)
@given(st.integers(0, 2**32), st.integers(0, 25))
def test_random_instances_stay_in_klein_bottle(seed, steps):
    g, s = random_instance(seed, steps)
    assert s.graph == g and g.is_connected()
    assert g.n <= 14
    gamma = euler_genus(s)
    assert gamma <= 2
    assert not (gamma == 2 and is_orientable(s))


@settings(max_examples=40)
@given(st.integers(0, 2**32), st.integers(0, len(base_schemes()) - 1))
def test_single_moves_keep_face_bookkeeping(seed, which):
    s = base_schemes()[which][1]
    rng = SplitMix64(seed)
    for _ in range(10):
        op = random_op(rng, s)
        try:
            t = mutate(s, op)
        except MutationError:
            continue
        f = face_count(s)
        if isinstance(op, AddVertexInFace):
            assert face_count(t) == f + len(op.corners) - 1
            assert euler_genus(t) == euler_genus(s)
        elif isinstance(op, AddEdgeInFace):
            assert face_count(t) == f + 1
            assert euler_genus(t) == euler_genus(s)
        else:
            assert euler_genus(t) <= euler_genus(s)
        s = t
