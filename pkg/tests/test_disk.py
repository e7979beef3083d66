from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from klein5.coloring import Coloring
from klein5.derivation import disk_templates as template_derivation
from klein5.disk import (
    DiskError,
    DiskInstance,
    classify_cycle_extension,
    coincidences,
    cycle_colorings,
    enumerate_disk_graphs,
    load_templates,
    numberings,
    random_boundary_coloring,
    random_disk_instance,
    validate_case,
)
from klein5.graph import SimpleGraph, complete, cycle, join
from klein5.rng import SplitMix64

from disk_corpus import naive_extends, random_cases


def cycle_plus(k: int, extra: list[tuple[int, int]], n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % k) for i in range(k)] + extra)


def classify(inst: DiskInstance, colors: dict[int, int]):
    return classify_cycle_extension(inst, Coloring(colors, 5))


def rainbow_wheel() -> DiskInstance:
    return DiskInstance(cycle_plus(5, [(i, 5) for i in range(5)], 6), tuple(range(5)))


def test_rainbow_wheel_is_case_i():
    inst = rainbow_wheel()
    colors = {i: i + 1 for i in range(5)}
    v = classify(inst, colors)
    assert not v.extendable and v.case == "i" and v.witness == (5,)
    assert validate_case(inst, colors, v)


def test_c6_two_adjacent_vertices_is_case_ii():
    # a = 6 on x0..x3, b = 7 on x3, x4, x5, x0; colors make both see {1, 2, 3, 4}
    g = cycle_plus(6, [(6, 0), (6, 1), (6, 2), (6, 3), (7, 3), (7, 4), (7, 5), (7, 0), (6, 7)], 8)
    inst = DiskInstance(g, tuple(range(6)))
    colors = dict(enumerate([1, 2, 3, 4, 2, 3]))
    v = classify(inst, colors)
    assert not v.extendable and v.case == "ii" and set(v.witness) == {6, 7}
    assert validate_case(inst, colors, v)


def test_c7_triangle_is_case_iii():
    # triangle a, b, c; each sees {1, 2, 3}
    g = cycle_plus(
        7,
        [(7, 0), (7, 1), (7, 2), (8, 2), (8, 3), (8, 4), (9, 4), (9, 5), (9, 6), (9, 0), (7, 8), (8, 9), (7, 9)],
        10,
    )
    inst = DiskInstance(g, tuple(range(7)))
    colors = dict(enumerate([1, 2, 3, 1, 2, 3, 2]))
    v = classify(inst, colors)
    assert not v.extendable and v.case == "iii"
    assert validate_case(inst, colors, v)


def path_template_instance() -> DiskInstance:
    # path a - b - c with a on x1..x4, b on x1, x4, x5, c on x1, x5, x6, x7 (x_i is vertex i-1)
    a, b, c = 7, 8, 9
    extra = [(a, 0), (a, 1), (a, 2), (a, 3), (b, 0), (b, 3), (b, 4), (c, 0), (c, 4), (c, 5), (c, 6), (a, b), (b, c)]
    return DiskInstance(cycle_plus(7, extra, 10), tuple(range(7)))


def test_first_template_graph_is_case_iv():
    inst = path_template_instance()
    # coincidences exactly {x2, x5} and {x4, x6}
    colors = dict(enumerate([1, 2, 3, 4, 2, 4, 5]))
    numbered = tuple(range(7))
    assert coincidences(numbered, colors) == {frozenset({2, 5}), frozenset({4, 6})}
    v = classify(inst, colors)
    assert not v.extendable and v.case == "iv"
    assert validate_case(inst, colors, v)
    assert not naive_extends(inst, colors)


def test_other_colorings_of_template_graph_extend_or_are_labelled():
    inst = path_template_instance()
    for col in cycle_colorings(7):
        colors = dict(enumerate(col))
        v = classify(inst, colors)
        assert v.extendable == naive_extends(inst, colors)
        if not v.extendable:
            assert validate_case(inst, colors, v)


def test_short_cycles_always_extend():
    rng = SplitMix64(5)
    for _ in range(200):
        k = 3 + rng.below(2)
        inst = random_disk_instance(rng, k, 1 + rng.below(6), fill=True)
        v = classify(inst, random_boundary_coloring(rng, inst))
        assert v.extendable


def test_extension_agrees_with_boundary():
    inst = rainbow_wheel()
    colors = {0: 1, 1: 2, 2: 1, 3: 2, 4: 3}
    v = classify(inst, colors)
    assert v.extendable
    assert all(v.coloring[x] == c for x, c in colors.items())
    assert v.coloring.is_proper(inst.graph)


def test_rejects_bad_inputs():
    with pytest.raises(DiskError):
        DiskInstance(cycle(8), tuple(range(8)))  # cycle too long
    with pytest.raises(DiskError):
        DiskInstance(cycle(5), (0, 2, 1, 3, 4))  # not a cycle of the graph
    k5_in_c5 = cycle_plus(5, [(i, 5) for i in range(5)] + [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)], 6)
    with pytest.raises(DiskError):
        DiskInstance(k5_in_c5, tuple(range(5)))  # not plane with the cycle outside
    inst = rainbow_wheel()
    with pytest.raises(DiskError):
        classify(inst, {0: 1, 1: 1, 2: 2, 3: 3, 4: 4})  # improper
    with pytest.raises(DiskError):
        classify(inst, {0: 1, 1: 2, 2: 3, 3: 4})  # incomplete
    with pytest.raises(DiskError):
        classify_cycle_extension(inst, Coloring({i: i + 1 for i in range(5)}, 6))


def test_coloring_module_entry_point():
    from klein5.coloring import classify_cycle_extension as via_coloring

    v = via_coloring(rainbow_wheel(), Coloring({i: i + 1 for i in range(5)}, 5))
    assert v.case == "i"


def test_numberings_and_cycle_colorings():
    assert len(numberings((0, 1, 2, 3, 4, 5, 6))) == 14
    assert len(cycle_colorings(3)) == 1
    assert len(cycle_colorings(4)) == 4
    assert len(cycle_colorings(5)) == 11


def test_enumeration_yields_valid_instances():
    insts = list(enumerate_disk_graphs(6, 2))
    assert insts
    for inst in insts:
        assert all(inst.graph.degree(v) >= 5 for v in inst.interior())
        chords = [(u, v) for u, v in inst.graph.edges if u < 6 and v < 6 and (v - u) % 6 not in (1, 5)]
        assert chords == []


def test_templates_load():
    ts = load_templates()
    assert Counter(t.case for t in ts) == Counter({"iv": 3, "v": 1, "vi": 1})
    assert {t.r for t in ts if t.case == "iv"} == {3}
    assert {t.r for t in ts if t.case != "iv"} == {4}


@pytest.mark.slow
def test_template_derivation_reproduces_data():
    assert template_derivation.main(["--check"]) == 0


@given(st.integers(0, 2**32))
def test_random_instances_agree_with_oracle(seed):
    ((inst, colors),) = random_cases(1, seed=seed)
    v = classify(inst, colors)
    assert v.extendable == naive_extends(inst, colors)
    if v.extendable:
        assert v.coloring.is_proper(inst.graph)
        assert all(v.coloring[x] == c for x, c in colors.items())
    else:
        assert inst.k >= 5
        assert validate_case(inst, colors, v)
