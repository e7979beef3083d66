"""The obstruction catalogs for 5-coloring in the Klein bottle and the torus.

Klein bottle: K6, C3+C5, K2+H7 and the six graphs L1..L6. Torus: K6,
C3+C5, K2+H7 and T11. Graphs with a complete verbal description are built
by the constructors below; L1, L2, L4, L5 and L6 are read from data files
produced by :mod:`klein5.derivation`. Every entry carries at least one
embedding certificate, and the catalog is verified when it is loaded.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .coloring import is_colorable, is_k_critical
from .embedding import (
    EmbeddingScheme,
    euler_genus,
    face_length_multiset,
    is_orientable,
    is_triangulation,
    load_scheme,
    trace_faces,
)
from .graph import GraphError, SimpleGraph, complete, cycle, join, load_graph
from .iso import is_isomorphic, subgraph_isomorphism
from .subdivision import contains_k6_subdivision

KLEIN_NAMES = ("K6", "C3+C5", "K2+H7", "L1", "L2", "L3", "L4", "L5", "L6")
TORUS_NAMES = ("K6", "C3+C5", "K2+H7", "T11")
SURFACES = ("klein", "torus")

# face-length multisets allowed for a 2-cell K6 drawing in the Klein bottle or torus
K6_FACE_TYPES = ({3: 6, 4: 3}, {3: 7, 4: 1, 5: 1}, {3: 8, 6: 1})


class CatalogError(GraphError):
    pass


def _graph_from(order: Sequence[str], adjacency: Mapping[str, Iterable[str]]) -> SimpleGraph:
    index = {x: i for i, x in enumerate(order)}
    edges = set()
    for x, nbrs in adjacency.items():
        for y in nbrs:
            u, v = index[x], index[y]
            edges.add((u, v) if u < v else (v, u))
    return SimpleGraph(len(order), frozenset(edges))


def _clique(names: Sequence[str]) -> dict[str, set[str]]:
    return {x: {y for y in names if y != x} for x in names}


def _merge(adj: dict[str, set[str]], x: str, nbrs: Iterable[str]) -> None:
    for y in nbrs:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)


# -- small graphs --------------------------------------------------------------


def build_h7() -> SimpleGraph:
    """Two triangles p2p3p4 and p5p6p7, the edge p4p5, and p1 joined to p2, p3, p6, p7."""
    adj: dict[str, set[str]] = {}
    _merge(adj, "p1", ["p2", "p3", "p6", "p7"])
    for tri in (("p2", "p3", "p4"), ("p5", "p6", "p7")):
        for x, y in combinations(tri, 2):
            _merge(adj, x, [y])
    _merge(adj, "p4", ["p5"])
    return _graph_from(H7_LABELS, adj)


H7_LABELS = ("p1", "p2", "p3", "p4", "p5", "p6", "p7")


def build_m7() -> SimpleGraph:
    """Hexagon x1..x6 plus the triangle x1x3x5 and a vertex v joined to x2, x4, x6."""
    adj: dict[str, set[str]] = {}
    xs = [f"x{i}" for i in range(1, 7)]
    for i in range(6):
        _merge(adj, xs[i], [xs[(i + 1) % 6]])
    _merge(adj, "x1", ["x3", "x5"])
    _merge(adj, "x3", ["x5"])
    _merge(adj, "v", ["x2", "x4", "x6"])
    return _graph_from(xs + ["v"], adj)


def build_t11() -> SimpleGraph:
    """C11 with every pair at cyclic distance two or three also joined."""
    edges = set()
    for i in range(11):
        for d in (1, 2, 3):
            j = (i + d) % 11
            edges.add((min(i, j), max(i, j)))
    return SimpleGraph(11, frozenset(edges))


def build_k6() -> SimpleGraph:
    return complete(6)


def build_c3c5() -> SimpleGraph:
    return join(cycle(3), cycle(5))


def build_k2h7() -> SimpleGraph:
    return join(complete(2), build_h7())


def build_k2m7() -> SimpleGraph:
    return join(complete(2), build_m7())


# -- ten-vertex graphs with a degree-nine vertex ---------------------------------

L3_LABELS = ("u1", "u4", "u5", "u3", "v3", "v2", "u2", "v1", "v4", "v0")


def build_l3() -> SimpleGraph:
    """K5 on u1..u5 plus v0..v4; u2 is the unique vertex of degree nine."""
    adj = _clique(["u1", "u2", "u3", "u4", "u5"])
    _merge(adj, "v0", ["u2", "v1", "v2", "v3", "v4"])
    _merge(adj, "v1", ["v0", "v4", "u2", "u3", "u4", "u5"])
    _merge(adj, "v2", ["v0", "v3", "u1", "u2", "u4", "u5"])
    _merge(adj, "v3", ["v0", "v2", "v4", "u1", "u2"])
    _merge(adj, "v4", ["v0", "v1", "v3", "u2", "u3"])
    return _graph_from(L3_LABELS, adj)


def build_l3_alternative() -> SimpleGraph:
    """A second description of L3 (a different labelling of the same drawing)."""
    adj = _clique(["u1", "u2", "u3", "u4", "u5"])
    _merge(adj, "v3", ["v0", "v1", "v2", "u1", "v4"])
    _merge(adj, "v4", ["u1", "u2", "u3", "u4", "v1", "v3"])
    _merge(adj, "v0", ["v1", "v2", "v3", "u1", "u5"])
    _merge(adj, "v1", ["u1", "u4"])
    _merge(adj, "v2", ["u1", "u5", "u2", "u3"])
    return _graph_from(("u4", "u2", "u3", "u5", "v1", "v4", "u1", "v2", "v0", "v3"), adj)


def _c3c5_labelled() -> dict[str, set[str]]:
    """C3+C5 with the 5-cycle p1..p5 and the triangle z0 q2 q3 (z0 left out)."""
    ps = [f"p{i}" for i in range(1, 6)]
    adj: dict[str, set[str]] = {}
    for i in range(5):
        _merge(adj, ps[i], [ps[(i + 1) % 5]])
    _merge(adj, "q2", ["q3"])
    for p in ps:
        _merge(adj, p, ["q2", "q3"])
    return adj


L4_LABELS = ("p1", "y", "q3", "p2", "q2", "p5", "p4", "p3", "x", "v0")


def build_l4() -> SimpleGraph:
    """C3+C5 with one triangle vertex split into x, y and a new vertex v0 of degree five."""
    adj = _c3c5_labelled()
    _merge(adj, "x", ["p2", "q2", "p3", "p4"])
    _merge(adj, "y", ["p1", "p2", "q2", "q3", "p5"])
    _merge(adj, "v0", ["x", "y", "q2", "p1", "p2"])
    return _graph_from(L4_LABELS, adj)


def build_l4_alternative() -> SimpleGraph:
    """The same construction with the roles of the split vertices exchanged."""
    adj = _c3c5_labelled()
    _merge(adj, "x", ["q2", "p2", "p1", "q3", "p5"])
    _merge(adj, "y", ["q2", "p2", "p3", "p4"])
    _merge(adj, "v0", ["x", "y", "p2", "q2", "p1"])
    return _graph_from(("x", "p1", "q3", "p2", "q2", "p5", "p4", "p3", "y", "v0"), adj)


# -- the clique-pair family L1, L2, L5, L6 ---------------------------------------


def clique_pair_graph(a_count: int, c1_bs: int, with_c0: bool) -> tuple[SimpleGraph, tuple[str, ...]]:
    """Clique ``a1..`` joined to both of the non-adjacent ``c1, c2``, plus a K5 of b-vertices.

    The K5 is ``b1..b5``, or ``b1..b4`` plus ``c0`` when ``with_c0``; in that case
    ``c0`` is adjacent to every other vertex. The first ``c1_bs`` b-vertices are
    joined to ``c1`` and the others to ``c2``.
    """
    a = [f"a{i}" for i in range(1, a_count + 1)]
    nb = 4 if with_c0 else 5
    b = [f"b{i}" for i in range(1, nb + 1)]
    labels = (["c0"] if with_c0 else []) + ["c1", "c2"] + a + b
    adj = _clique(a)
    adj.update({k: v | adj.get(k, set()) for k, v in _clique(b).items()})
    for x in a:
        _merge(adj, x, ["c1", "c2"])
    for i, x in enumerate(b):
        _merge(adj, x, ["c1" if i < c1_bs else "c2"])
    if with_c0:
        _merge(adj, "c0", [x for x in labels if x != "c0"])
    return _graph_from(labels, adj), tuple(labels)


FAMILY_PARAMS = {"L1": (3, 2, True), "L2": (3, 3, True), "L5": (4, 3, False), "L6": (4, 4, False)}


def build_family_member(name: str) -> SimpleGraph:
    return clique_pair_graph(*FAMILY_PARAMS[name])[0]


def family_labels(name: str) -> tuple[str, ...]:
    return clique_pair_graph(*FAMILY_PARAMS[name])[1]


def labels_for(name: str) -> tuple[str, ...] | None:
    if name in FAMILY_PARAMS:
        return family_labels(name)
    return {"L3": L3_LABELS, "L4": L4_LABELS}.get(name)


# constructors for the entries with a complete verbal description
CONSTRUCTORS = {
    "K6": build_k6,
    "C3+C5": build_c3c5,
    "K2+H7": build_k2h7,
    "L3": build_l3,
    "T11": build_t11,
}
DATA_ONLY = ("L1", "L2", "L4", "L5", "L6")


# -- catalog -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: SimpleGraph
    embeddings: tuple[EmbeddingScheme, ...] = ()
    provenance: str = ""
    labels: tuple[str, ...] | None = field(default=None, compare=False)


@dataclass
class VerificationReport:
    surface: str
    results: dict[str, list[tuple[str, bool, str]]] = field(default_factory=dict)

    def record(self, name: str, check: str, ok: bool, detail: str = "") -> None:
        self.results.setdefault(name, []).append((check, ok, detail))

    @property
    def failures(self) -> list[tuple[str, str, str]]:
        return [(n, c, d) for n, rows in self.results.items() for c, ok, d in rows if not ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def entry_ok(self, name: str) -> bool:
        return all(ok for _, ok, _ in self.results.get(name, []))


def data_dir() -> Path:
    env = os.environ.get("KLEIN5_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def _catalog_dir(surface: str, root: Path | None = None) -> Path:
    if surface not in SURFACES:
        raise CatalogError(f"unknown surface {surface!r}; expected klein or torus")
    return (root or data_dir()) / "catalog" / surface


def _embedding_files(folder: Path, name: str) -> list[Path]:
    files = [folder / f"{name}.emb"] + sorted(folder.glob(f"{name}-*.emb"))
    return [f for f in files if f.is_file()]


def _load_entry(surface: str, name: str, folder: Path) -> CatalogEntry:
    gpath = folder / f"{name}.graph"
    if name in CONSTRUCTORS:
        g = CONSTRUCTORS[name]()
        provenance = "constructor"
        if gpath.is_file():
            stored = load_graph(gpath)
            if stored != g:
                raise CatalogError(f"{name}: data file {gpath} disagrees with the constructor")
            provenance = "constructor, data file matches"
    else:
        if not gpath.is_file():
            raise CatalogError(f"{name}: missing data file {gpath}")
        g = load_graph(gpath)
        provenance = f"data file {gpath.name}"
    embeddings = []
    for path in _embedding_files(folder, name):
        s = load_scheme(path)
        if s.graph != g:
            raise CatalogError(f"{name}: embedding {path.name} is for a different graph")
        embeddings.append(s)
    return CatalogEntry(name, g, tuple(embeddings), provenance, labels_for(name))


@functools.lru_cache(maxsize=None)
def _cached_catalog(surface: str, root: str, verify: bool) -> tuple[CatalogEntry, ...]:
    folder = _catalog_dir(surface, Path(root))
    if not folder.is_dir():
        raise CatalogError(f"catalog directory {folder} not found")
    names = KLEIN_NAMES if surface == "klein" else TORUS_NAMES
    entries = tuple(_load_entry(surface, name, folder) for name in names)
    if verify:
        report = verify_catalog(entries, surface)
        if not report.ok:
            lines = "; ".join(f"{n}: {c} ({d})" if d else f"{n}: {c}" for n, c, d in report.failures)
            raise CatalogError(f"{surface} catalog failed verification: {lines}")
    return entries


def load_catalog(surface: str = "klein", verify: bool = True) -> list[CatalogEntry]:
    """The obstruction list for ``surface``, verified unless ``verify`` is false."""
    return list(_cached_catalog(surface, str(data_dir()), verify))


def catalog_entry(name: str, surface: str | None = None) -> CatalogEntry:
    for surf in ([surface] if surface else list(SURFACES)):
        for e in load_catalog(surf):
            if e.name == name:
                return e
    raise CatalogError(f"no catalog entry named {name!r}")


# -- verification --------------------------------------------------------------


def _pentagon_pattern_ok(walk_labels: Sequence[str]) -> bool:
    """Cycle reading c1, a, c2, b, b in some rotation and direction."""
    k = len(walk_labels)
    seqs = [tuple(walk_labels), tuple(reversed(walk_labels))]
    for seq in seqs:
        for r in range(k):
            s = seq[r:] + seq[:r]
            if (
                s[0] == "c1"
                and s[1].startswith("a")
                and s[2] == "c2"
                and s[3].startswith("b")
                and s[4].startswith("b")
            ):
                return True
    return False


def check_embedding(entry: CatalogEntry, s: EmbeddingScheme, surface: str) -> list[str]:
    """Problems with one certificate; an empty list means it is fine."""
    problems = []
    gamma = euler_genus(s)
    orientable = is_orientable(s)
    if surface == "klein":
        if gamma > 2 or (gamma == 2 and orientable):
            problems.append(f"Euler genus {gamma} {'orientable' if orientable else 'nonorientable'} is not in the Klein bottle")
    else:
        if gamma not in (0, 2) or (gamma == 2 and not orientable):
            problems.append(f"Euler genus {gamma} {'orientable' if orientable else 'nonorientable'} is not in the torus")
    walks = trace_faces(s)
    lengths = dict(face_length_multiset(s))
    name = entry.name
    if name == "K6" and gamma == 2 and lengths not in K6_FACE_TYPES:
        problems.append(f"K6 face lengths {sorted(lengths.items())} not allowed")
    if name in ("L1", "L2", "L5", "L6"):
        want = 1 if name in ("L1", "L2") else 2
        pentagons = [w for w in walks if len(w) == 5]
        if lengths != ({3: len(walks) - want, 5: want} if len(walks) > want else {5: want}):
            problems.append(f"expected {want} pentagonal face(s) and triangles, got {sorted(lengths.items())}")
        elif entry.labels is not None:
            for w in pentagons:
                names = [entry.labels[v] for v in w.vertices]
                if w.has_repeated_vertex() or not _pentagon_pattern_ok(names):
                    problems.append(f"pentagon {' '.join(names)} is not of the form c1 a c2 b b")
            if want == 2 and len(pentagons) == 2 and not problems:
                common = set(pentagons[0].vertices) & set(pentagons[1].vertices)
                shared = {entry.labels[v] for v in common}
                expect = {"c1", "c2"} if name == "L5" else {"c1", "c2", "b5"}
                if shared != expect:
                    problems.append(f"pentagons share {sorted(shared)}, expected {sorted(expect)}")
    if name in ("L3", "L4") and not (is_triangulation(s) and len(walks) == 20):
        problems.append("expected a triangulation with 20 faces")
    return problems


def verify_catalog(entries: Sequence[CatalogEntry], surface: str = "klein") -> VerificationReport:
    """Check every entry; nothing is raised, all results land in the report."""
    report = VerificationReport(surface)
    core = {"K6", "C3+C5", "K2+H7"}
    for e in entries:
        g = e.graph
        colorable = is_colorable(g, 5)
        report.record(e.name, "not 5-colorable", not colorable)
        report.record(e.name, "6-critical", (not colorable) and is_k_critical(g, 6))
        report.record(e.name, "K6 subdivision", contains_k6_subdivision(g) is not None)
        if surface == "klein" and e.name not in core:
            ok = g.n >= 10 and (g.n != 10 or 9 in g.degrees())
            report.record(e.name, "size law", ok, f"{g.n} vertices, max degree {max(g.degrees(), default=0)}")
        if not e.embeddings:
            report.record(e.name, "embedding certificate", False, "none attached")
        for i, s in enumerate(e.embeddings):
            if s.graph != g:
                report.record(e.name, f"embedding {i}", False, "graph mismatch")
                continue
            problems = check_embedding(e, s, surface)
            report.record(e.name, f"embedding {i}", not problems, "; ".join(problems))
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        report.record("catalog", "distinct names", False, ", ".join(names))
    for a, b in combinations(entries, 2):
        if a.graph.n <= 16 and b.graph.n <= 16 and is_isomorphic(a.graph, b.graph):
            report.record("catalog", "pairwise non-isomorphic", False, f"{a.name} ~ {b.name}")
    return report


def minimality_violations(entries: Sequence[CatalogEntry]) -> list[tuple[str, str]]:
    """Pairs (small, big) where one entry is a subgraph of another."""
    bad = []
    for a in entries:
        for b in entries:
            if a is b or a.graph.n > b.graph.n or a.graph.m > b.graph.m:
                continue
            if subgraph_isomorphism(a.graph, b.graph) is not None:
                bad.append((a.name, b.name))
    return bad

