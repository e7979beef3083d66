from itertools import product

import pytest
from hypothesis import given

from klein5.coloring import (
    Coloring,
    ColoringError,
    chromatic_number,
    color,
    extend_precoloring,
    format_coloring,
    is_k_critical,
    parse_coloring,
)
from klein5.graph import ParseError, SimpleGraph, complete, cycle, join
from klein5.obstructions import build_c3c5, build_h7, build_k2h7, build_m7, build_t11

from conftest import dense_graphs, graphs


def naive_colorable(g: SimpleGraph, k: int) -> bool:
    """Try all k^n assignments."""
    return any(
        all(c[u] != c[v] for u, v in g.edges) for c in product(range(k), repeat=g.n)
    )


@given(dense_graphs(min_n=1, max_n=8))
def test_color_sound_and_complete_vs_naive(g):
    for k in (2, 3, 4):
        c = color(g, k)
        assert (c is not None) == naive_colorable(g, k)
        if c is not None:
            assert c.is_total(g) and c.is_proper(g)
            assert max(c.assignment.values(), default=1) <= k


@given(graphs(max_n=8))
def test_chromatic_number_vs_naive(g):
    chi = chromatic_number(g)
    assert naive_colorable(g, chi)
    assert chi == 0 or not naive_colorable(g, chi - 1)


def test_color_examples():
    assert color(complete(6), 5) is None
    assert color(complete(6), 6) is not None
    assert color(build_c3c5(), 5) is None
    g = build_k2h7()
    for u, v in g.sorted_edges():
        c = color(g.remove_edge(u, v), 5)
        assert c is not None and c.is_proper(g.remove_edge(u, v))


def test_color_is_deterministic():
    g = build_t11()
    assert color(g, 6) == color(g, 6)


@given(dense_graphs(min_n=3, max_n=8))
def test_criticality_is_definitional(g):
    for k in (3, 4, 5):
        if is_k_critical(g, k):
            assert color(g, k - 1) is None
            assert all(color(g.remove_edge(u, v), k - 1) is not None for u, v in g.edges)


def test_criticality_examples():
    assert is_k_critical(complete(6), 6)
    assert is_k_critical(build_h7(), 4)
    assert is_k_critical(build_m7(), 4)
    assert is_k_critical(build_t11(), 6)
    assert not is_k_critical(complete(6), 5)
    assert not is_k_critical(join(complete(1), complete(6)), 6)  # K7 is 7-critical
    assert is_k_critical(join(complete(1), cycle(5)), 4)


def test_extend_precoloring_examples():
    k4 = complete(4)
    c = extend_precoloring(k4, Coloring({0: 1, 1: 2, 2: 3}, 5))
    assert c is not None and c[3] not in (1, 2, 3) and c.is_proper(k4)

    wheel = join(complete(1), cycle(5)).relabel([5, 0, 1, 2, 3, 4])  # hub is 5
    rim = {i: i + 1 for i in range(5)}
    assert extend_precoloring(wheel, Coloring(rim, 5)) is None

    k6 = complete(6)
    assert extend_precoloring(k6, Coloring({i: i + 1 for i in range(5)}, 5)) is None


def test_extend_precoloring_rejects_improper_input():
    with pytest.raises(ColoringError):
        extend_precoloring(complete(3), Coloring({0: 1, 1: 1}, 5))
    with pytest.raises(ColoringError):
        extend_precoloring(complete(3), Coloring({7: 1}, 5))


@given(dense_graphs(min_n=2, max_n=8))
def test_extension_agrees_with_naive(g):
    partial = Coloring({0: 1, 1: 2 if g.has_edge(0, 1) else 1}, 3)
    ext = extend_precoloring(g, partial)
    want = any(
        all(c[u] != c[v] for u, v in g.edges)
        for c in product(range(1, 4), repeat=g.n)
        if c[0] == partial[0] and c[1] == partial[1]
    )
    assert (ext is not None) == want
    if ext is not None:
        assert ext.is_proper(g) and ext[0] == partial[0] and ext[1] == partial[1]


def test_coloring_file_round_trip():
    c = Coloring({0: 1, 3: 4}, 5)
    assert parse_coloring(format_coloring(c), 5) == c
    assert parse_coloring("# x\n0 2\n1 0\n", 5).assignment == {0: 2}


@pytest.mark.parametrize("text, line", [("0 6\n", 1), ("0 1\n0 2\n", 2), ("0\n", 1), ("-1 2\n", 1)])
def test_coloring_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_coloring(text, 5)
    assert info.value.line == line
