"""Precoloring extension from a short outer cycle into a plane disk.

A :class:`DiskInstance` is a plane graph whose outer face is bounded by a cycle
``C`` of length at most seven. Given a proper 5-coloring of ``C``,
:func:`classify_cycle_extension` either extends it or names the reason it
cannot be extended:

``i``    an interior vertex sees five colors on ``C``;
``ii``   two adjacent interior vertices both see four common colors;
``iii``  three pairwise adjacent interior vertices all see three common colors;
``iv``, ``v``, ``vi``
         a 7-cycle whose coloring has one of a few coincidence patterns and
         contains one of the shipped templates (see ``disk_templates.txt``).

Cases are tested in this order; the first that validates is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterator, Mapping, Sequence

import networkx as nx

from .coloring import Coloring, ColoringError, extend_precoloring
from .graph import GraphError, SimpleGraph
from .rng import SplitMix64

CASES = ("i", "ii", "iii", "iv", "v", "vi")
MAX_CYCLE = 7


class DiskError(GraphError):
    pass


@dataclass(frozen=True)
class DiskInstance:
    graph: SimpleGraph
    outer_cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outer_cycle", tuple(self.outer_cycle))
        validate_disk(self)

    @property
    def k(self) -> int:
        return len(self.outer_cycle)

    def interior(self) -> list[int]:
        on_c = set(self.outer_cycle)
        return [v for v in range(self.graph.n) if v not in on_c]


def is_disk_planar(g: SimpleGraph, cycle: Sequence[int]) -> bool:
    """Planar with ``cycle`` bounding one face: add an apex on the cycle and test planarity."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n + 1))
    h.add_edges_from(g.edges)
    h.add_edges_from((g.n, v) for v in cycle)
    planar, _ = nx.check_planarity(h)
    return planar


def validate_disk(inst: DiskInstance) -> None:
    g, cyc = inst.graph, inst.outer_cycle
    k = len(cyc)
    if k > MAX_CYCLE:
        raise DiskError(f"outer cycle has length {k}; at most {MAX_CYCLE} is supported")
    if k < 3 or len(set(cyc)) != k:
        raise DiskError("outer cycle must list at least three distinct vertices")
    for v in cyc:
        if not 0 <= v < g.n:
            raise DiskError(f"cycle vertex {v} out of range")
    for i in range(k):
        if not g.has_edge(cyc[i], cyc[(i + 1) % k]):
            raise DiskError(f"{cyc[i]} and {cyc[(i + 1) % k]} are consecutive on the cycle but not adjacent")
    if not is_disk_planar(g, cyc):
        raise DiskError("graph has no plane drawing with the outer cycle bounding a face")


@dataclass(frozen=True)
class ExtensionVerdict:
    """``coloring`` is set when the precoloring extends, otherwise ``case`` and ``witness``."""

    coloring: Coloring | None = None
    case: str | None = None
    witness: tuple[int, ...] = ()
    numbering: tuple[int, ...] = ()

    @property
    def extendable(self) -> bool:
        return self.coloring is not None


# -- helpers ---------------------------------------------------------------------


def seen_colors(g: SimpleGraph, v: int, colors: Mapping[int, int], on_cycle: set[int]) -> frozenset[int]:
    return frozenset(colors[w] for w in g.neighbors(v) if w in on_cycle)


def numberings(cycle: Sequence[int]) -> list[tuple[int, ...]]:
    """All ways to number the cycle x1..xk in order: every start, both directions."""
    k = len(cycle)
    out = []
    for seq in (tuple(cycle), tuple(reversed(cycle))):
        for r in range(k):
            out.append(seq[r:] + seq[:r])
    return out


def coincidences(numbered: Sequence[int], colors: Mapping[int, int]) -> frozenset[frozenset[int]]:
    """Pairs of positions (1-based) on the numbered cycle that share a color."""
    k = len(numbered)
    return frozenset(
        frozenset((i + 1, j + 1))
        for i, j in combinations(range(k), 2)
        if colors[numbered[i]] == colors[numbered[j]]
    )


# -- templates -------------------------------------------------------------------


@dataclass(frozen=True)
class Template:
    """Interior vertices ``0..r-1`` with neighbours on a numbered 7-cycle (positions 1..7)."""

    case: str
    pairs: frozenset[frozenset[int]]  # the exact coincidence pattern this template is stored for
    cycle_neighbors: tuple[frozenset[int], ...]
    interior_edges: frozenset[tuple[int, int]]

    @property
    def r(self) -> int:
        return len(self.cycle_neighbors)

    def format(self) -> str:
        pairs = " ".join(f"{min(p)}-{max(p)}" for p in sorted(self.pairs, key=sorted))
        nb = " ".join(f"{i}:{','.join(map(str, sorted(s)))}" for i, s in enumerate(self.cycle_neighbors))
        ed = " ".join(f"{u}-{v}" for u, v in sorted(self.interior_edges)) or "-"
        return f"{self.case} | {pairs} | {nb} | {ed}"


def parse_template(line: str) -> Template:
    try:
        case, pairs_s, nb_s, ed_s = (part.strip() for part in line.split("|"))
        pairs = frozenset(frozenset(int(x) for x in p.split("-")) for p in pairs_s.split())
        nbs = []
        for i, item in enumerate(nb_s.split()):
            idx, _, rest = item.partition(":")
            if int(idx) != i:
                raise ValueError("interior vertices must be numbered in order")
            nbs.append(frozenset(int(x) for x in rest.split(",")) if rest else frozenset())
        edges = frozenset() if ed_s == "-" else frozenset(
            tuple(sorted(int(x) for x in e.split("-"))) for e in ed_s.split()  # type: ignore[misc]
        )
    except ValueError as exc:
        raise DiskError(f"bad template line {line!r}: {exc}") from None
    if case not in ("iv", "v", "vi"):
        raise DiskError(f"bad template case {case!r}")
    return Template(case, pairs, tuple(nbs), edges)


def templates_path() -> Path:
    return Path(__file__).resolve().parent / "data" / "disk_templates.txt"


@lru_cache(maxsize=None)
def load_templates(path: str | None = None) -> tuple[Template, ...]:
    p = Path(path) if path else templates_path()
    out = []
    for raw in p.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_template(line))
    return tuple(out)


def _match_template(
    g: SimpleGraph, t: Template, numbered: Sequence[int], interior: Sequence[int]
) -> tuple[int, ...] | None:
    """Injective map of template interior vertices into ``interior`` respecting all template edges."""
    pos = {i + 1: v for i, v in enumerate(numbered)}
    cands = []
    for i in range(t.r):
        need = [pos[p] for p in t.cycle_neighbors[i]]
        cands.append([v for v in interior if all(g.has_edge(v, w) for w in need)])
    for image in _injective(cands):
        if all(g.has_edge(image[a], image[b]) for a, b in t.interior_edges):
            return image
    return None


def _injective(cands: list[list[int]]):
    def rec(i: int, used: tuple[int, ...]):
        if i == len(cands):
            yield used
            return
        for v in cands[i]:
            if v not in used:
                yield from rec(i + 1, used + (v,))

    yield from rec(0, ())


# -- classification --------------------------------------------------------------


def _check_boundary(inst: DiskInstance, coloring: Coloring) -> dict[int, int]:
    if coloring.k != 5:
        raise DiskError("boundary coloring must use k = 5")
    colors = {}
    for v in inst.outer_cycle:
        c = coloring.get(v)
        if c is None:
            raise DiskError(f"cycle vertex {v} is not colored")
        colors[v] = c
    if any(not 1 <= c <= 5 for c in colors.values()):
        raise DiskError("colors must lie in 1..5")
    for u, v in combinations(inst.outer_cycle, 2):
        if inst.graph.has_edge(u, v) and colors[u] == colors[v]:
            raise DiskError(f"boundary coloring is improper on edge {u}-{v}")
    return colors


def find_case(inst: DiskInstance, colors: Mapping[int, int]) -> tuple[str, tuple[int, ...], tuple[int, ...]] | None:
    """The first of the cases (i)..(vi) that holds, with witness vertices and numbering."""
    g = inst.graph
    on_c = set(inst.outer_cycle)
    interior = inst.interior()
    if inst.k < 5:
        return None
    seen = {v: seen_colors(g, v, colors, on_c) for v in interior}
    for v in interior:
        if len(seen[v]) == 5:
            return "i", (v,), ()
    # "the same four (three) colors": colors common to all of them; each may see more
    for u, v in combinations(interior, 2):
        if g.has_edge(u, v) and len(seen[u] & seen[v]) >= 4:
            return "ii", (u, v), ()
    for a, b, c in combinations(interior, 3):
        if (
            g.has_edge(a, b)
            and g.has_edge(b, c)
            and g.has_edge(a, c)
            and len(seen[a] & seen[b] & seen[c]) >= 3
        ):
            return "iii", (a, b, c), ()
    if inst.k != 7:
        return None
    templates = load_templates()
    for case in ("iv", "v", "vi"):
        for numbered in numberings(inst.outer_cycle):
            pattern = coincidences(numbered, colors)
            for t in templates:
                if t.case != case or t.pairs != pattern:
                    continue
                image = _match_template(g, t, numbered, interior)
                if image is not None:
                    return case, image, tuple(numbered)
    return None


def classify_cycle_extension(inst: DiskInstance, boundary: Coloring) -> ExtensionVerdict:
    """Extend ``boundary`` into the disk or name the obstruction case."""
    colors = _check_boundary(inst, boundary)
    try:
        ext = extend_precoloring(inst.graph, Coloring(colors, 5))
    except ColoringError as exc:
        raise DiskError(str(exc)) from None
    if ext is not None:
        return ExtensionVerdict(coloring=ext)
    found = find_case(inst, colors)
    if found is None:
        raise DiskError(
            "precoloring does not extend but no obstruction case applies; "
            "the instance violates the disk hypotheses or the template data is incomplete"
        )
    case, witness, numbering = found
    return ExtensionVerdict(case=case, witness=witness, numbering=numbering)


def validate_case(inst: DiskInstance, colors: Mapping[int, int], verdict: ExtensionVerdict) -> bool:
    """Re-check a reported obstruction from its witness alone."""
    g = inst.graph
    on_c = set(inst.outer_cycle)
    w = verdict.witness
    seen = {v: seen_colors(g, v, colors, on_c) for v in w}
    if any(v in on_c for v in w) or len(set(w)) != len(w):
        return False
    if verdict.case == "i":
        return len(w) == 1 and len(seen[w[0]]) == 5
    if verdict.case == "ii":
        return len(w) == 2 and g.has_edge(*w) and len(seen[w[0]] & seen[w[1]]) >= 4
    if verdict.case == "iii":
        return (
            len(w) == 3
            and all(g.has_edge(a, b) for a, b in combinations(w, 2))
            and len(seen[w[0]] & seen[w[1]] & seen[w[2]]) >= 3
        )
    if verdict.case in ("iv", "v", "vi"):
        numbered = verdict.numbering
        if sorted(numbered) != sorted(inst.outer_cycle) or numbered not in numberings(inst.outer_cycle):
            return False
        pattern = coincidences(numbered, colors)
        pos = {i + 1: v for i, v in enumerate(numbered)}
        for t in load_templates():
            if t.case != verdict.case or t.pairs != pattern or t.r != len(w):
                continue
            if all(
                all(g.has_edge(w[i], pos[p]) for p in t.cycle_neighbors[i]) for i in range(t.r)
            ) and all(g.has_edge(w[a], w[b]) for a, b in t.interior_edges):
                return True
        return False
    return False


# -- instance corpora ------------------------------------------------------------


def _crossing_free(spokes: Sequence[frozenset[int]], adj: Sequence[set[int]], k: int) -> bool:
    """Cheap necessary condition for a plane drawing (see ``is_disk_planar`` for the real test).

    The spokes of one interior vertex cut the disk into regions; each connected
    group of the remaining interior vertices must see the cycle within one of them.
    Only the first ``len(spokes)`` interior vertices are considered, so the test
    can prune partial assignments.
    """
    r = len(spokes)
    for u in range(r):
        cut = sorted(spokes[u])
        if len(cut) < 2:
            continue
        rest = [w for w in range(r) if w != u]
        seen: set[int] = set()
        for start in rest:
            if start in seen:
                continue
            group, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y != u and y < r and y not in group:
                        group.add(y)
                        stack.append(y)
            seen |= group
            targets = set().union(*(spokes[w] for w in group))
            ok = False
            for i in range(len(cut)):
                a, b = cut[i], cut[(i + 1) % len(cut)]
                span = (b - a) % k or k
                if all((t - a) % k <= span for t in targets):
                    ok = True
                    break
            if not ok:
                return False
    return True


def enumerate_disk_graphs(k: int, r: int, min_degree: int = 5) -> Iterator[DiskInstance]:
    """Chordless disk instances on cycle ``0..k-1`` with interior vertices ``k..k+r-1``.

    Every interior vertex has degree at least ``min_degree``. Instances that
    differ only by relabelling interior vertices are yielded once.
    """
    pairs = list(combinations(range(r), 2))
    subsets = [frozenset(c) for size in range(k + 1) for c in combinations(range(k), size)]
    cyc = frozenset((i, (i + 1) % k) if i < (i + 1) % k else ((i + 1) % k, i) for i in range(k))
    seen_keys: set[tuple] = set()
    for mask in range(1 << len(pairs)):
        inner = [p for i, p in enumerate(pairs) if mask >> i & 1]
        adj: list[set[int]] = [set() for _ in range(r)]
        for a, b in inner:
            adj[a].add(b)
            adj[b].add(a)
        options = [[s for s in subsets if len(s) + len(adj[v]) >= min_degree] for v in range(r)]

        def rec(v: int, chosen: list[frozenset[int]]):
            if v == r:
                yield list(chosen)
                return
            for s in options[v]:
                chosen.append(s)
                if _crossing_free(chosen, adj, k):
                    yield from rec(v + 1, chosen)
                chosen.pop()

        for spokes in rec(0, []):
            key = _interior_key(spokes, inner)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            edges = set(cyc)
            for v, ss in enumerate(spokes):
                edges.update((p, k + v) for p in ss)
            edges.update((k + a, k + b) for a, b in inner)
            g = SimpleGraph(k + r, frozenset(edges))
            if is_disk_planar(g, range(k)):
                yield DiskInstance(g, tuple(range(k)))


def _interior_key(spokes: Sequence[frozenset[int]], inner: Sequence[tuple[int, int]]) -> tuple:
    r = len(spokes)
    best = None
    for perm in permutations(range(r)):
        inv = [0] * r
        for i, p in enumerate(perm):
            inv[p] = i
        key = (
            tuple(tuple(sorted(spokes[inv[i]])) for i in range(r)),
            tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in inner)),
        )
        if best is None or key < best:
            best = key
    return best


def cycle_colorings(k: int) -> list[tuple[int, ...]]:
    """Proper colorings of C_k with colors 1..5, one per renaming of colors (first-appearance order)."""
    out = []

    def rec(prefix: tuple[int, ...], top: int) -> None:
        if len(prefix) == k:
            if prefix[-1] != prefix[0]:
                out.append(prefix)
            return
        for c in range(1, min(top + 1, 5) + 1):
            if c != prefix[-1]:
                rec(prefix + (c,), max(top, c))

    rec((1,), 1)
    return out


def random_disk_instance(rng: SplitMix64, k: int, interior: int, fill: bool = False) -> DiskInstance:
    """A random 2-connected plane graph inside the cycle ``0..k-1``.

    Each step either drops a new vertex into a random inner face, joined to at
    least two of its corners, or adds a chord across a face. Faces are kept as
    vertex cycles, so the drawing is plane by construction. With ``fill``,
    chords are then added until no face can take another one.
    """
    edges = {(min(i, (i + 1) % k), max(i, (i + 1) % k)) for i in range(k)}
    faces = [list(range(k))]
    n = k
    while n < k + interior:
        fi = rng.below(len(faces))
        face = faces[fi]
        m = len(face)
        if rng.below(4) == 0 and m >= 4:
            i = rng.below(m)
            j = (i + 2 + rng.below(m - 3)) % m
            u, v = face[i], face[j]
            if (min(u, v), max(u, v)) in edges:
                continue
            edges.add((min(u, v), max(u, v)))
            a, b = min(i, j), max(i, j)
            faces[fi] = face[a : b + 1]
            faces.append(face[b:] + face[: a + 1])
            continue
        count = min(m, 2 + rng.below(4))
        idx = list(range(m))
        rng.shuffle(idx)
        attach = sorted(idx[: min(count, m)])
        x = n
        n += 1
        for i in attach:
            edges.add((face[i], x))
        del faces[fi]
        for t in range(len(attach)):
            a, b = attach[t], attach[(t + 1) % len(attach)]
            arc = face[a : b + 1] if a < b else face[a:] + face[: b + 1]
            faces.append([x] + arc)
    while fill:
        options = [
            (fi, i, j)
            for fi, face in enumerate(faces)
            for i, j in combinations(range(len(face)), 2)
            if 2 <= j - i <= len(face) - 2
            and (min(face[i], face[j]), max(face[i], face[j])) not in edges
        ]
        if not options:
            break
        fi, i, j = rng.choice(options)
        face = faces[fi]
        edges.add((min(face[i], face[j]), max(face[i], face[j])))
        faces[fi] = face[i : j + 1]
        faces.append(face[j:] + face[: i + 1])
    return DiskInstance(SimpleGraph(n, frozenset(edges)), tuple(range(k)))


def random_boundary_coloring(rng: SplitMix64, inst: DiskInstance) -> dict[int, int]:
    """A uniformly random proper 5-coloring of the graph induced on the outer cycle."""
    cyc = inst.outer_cycle
    g = inst.graph
    while True:
        cols = {v: 1 + rng.below(5) for v in cyc}
        if all(cols[u] != cols[v] for u, v in combinations(cyc, 2) if g.has_edge(u, v)):
            return cols



def peel_low_degree(inst: DiskInstance, min_degree: int = 5) -> DiskInstance:
    """Repeatedly delete interior vertices of degree below ``min_degree``; cycle vertices keep their labels."""
    g = inst.graph
    on_c = set(inst.outer_cycle)
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive - on_c):
            if len(g.neighbors(v) & alive) < min_degree:
                alive.discard(v)
                changed = True
    order = sorted(alive)
    index = {v: i for i, v in enumerate(order)}
    edges = frozenset((index[u], index[v]) for u, v in g.edges if u in alive and v in alive)
    return DiskInstance(SimpleGraph(len(order), edges), tuple(index[v] for v in inst.outer_cycle))


def random_disk_triangulation(
    rng: SplitMix64, k: int, interior: int, min_degree: int = 5, max_flips: int = 4000
) -> DiskInstance | None:
    """A random triangulated disk whose interior vertices have degree at least ``min_degree``.

    Starts from a fan of the cycle with the interior vertices dropped into
    random triangles, then applies random edge flips until every interior
    vertex is heavy enough. Returns ``None`` if ``max_flips`` is not enough.
    """
    def key(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    boundary = {key(i, (i + 1) % k) for i in range(k)}
    edges = set(boundary)
    tris: set[frozenset[int]] = set()
    for i in range(1, k - 1):
        edges.add(key(0, i))
        edges.add(key(0, i + 1))
        tris.add(frozenset((0, i, i + 1)))
    for x in range(k, k + interior):
        t = rng.choice(sorted(tris, key=sorted))
        tris.remove(t)
        a, b, c = sorted(t)
        tris.update({frozenset((a, b, x)), frozenset((b, c, x)), frozenset((a, c, x))})
        edges.update({key(a, x), key(b, x), key(c, x)})
    degree = [0] * (k + interior)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    for _ in range(max_flips):
        if all(degree[v] >= min_degree for v in range(k, k + interior)):
            return DiskInstance(SimpleGraph(k + interior, frozenset(edges)), tuple(range(k)))
        u, v = rng.choice(sorted(edges - boundary))
        pair = [t for t in tris if u in t and v in t]
        if len(pair) != 2:
            continue
        (c,) = pair[0] - {u, v}
        (d,) = pair[1] - {u, v}
        if key(c, d) in edges:
            continue
        edges.remove(key(u, v))
        edges.add(key(c, d))
        tris.difference_update(pair)
        tris.update({frozenset((c, d, u)), frozenset((c, d, v))})
        degree[u] -= 1
        degree[v] -= 1
        degree[c] += 1
        degree[d] += 1
    return None
