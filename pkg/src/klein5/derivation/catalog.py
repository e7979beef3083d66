"""Derive the catalog data files.

Graphs. The ten- and eleven-vertex members L1, L2, L5, L6 arise from a
degree-five vertex ``v0`` whose closed neighbourhood is K6 minus the edge
``v1v2``, together with a K5 ``K`` avoiding ``v0, v1, v2`` whose vertices are
each adjacent to ``v1`` or ``v2``. With ``t`` neighbours of ``v0`` inside
``K`` this is the clique-pair family of
:func:`klein5.obstructions.clique_pair_graph`. :func:`derive_family`
enumerates every way of attaching the K5 vertices, keeps the 6-critical
graphs and sorts them into isomorphism classes. The expected outcome is
two classes for ``t = 0`` and for ``t = 1``, and one each for ``t = 2``
(K2+H7) and ``t = 3`` (C3+C5); anything else is an error. Names inside a
pair are fixed by facial facts checked on a Klein embedding (see
:func:`name_by_faces`); :func:`klein_face_families` enumerates all of them
so the same facts can be checked on every one. L4 is built from its split-vertex description
and cross-checked against a second, independent labelling.

Embeddings are found with :mod:`klein5.facesearch` from the face-length
data each graph must have.

Run ``python -m klein5.derivation.catalog --out DIR`` to write the files
(``DIR/catalog/klein`` and ``DIR/catalog/torus``); ``--check`` compares
against the shipped data instead.
"""

from __future__ import annotations

import argparse
import sys
from itertools import combinations, product
from pathlib import Path

from ..coloring import is_k_critical
from ..embedding import EmbeddingScheme, format_scheme, normalize
from ..facesearch import find_embedding
from ..graph import SimpleGraph, format_graph
from ..iso import is_isomorphic
from ..obstructions import (
    KLEIN_NAMES,
    TORUS_NAMES,
    CatalogEntry,
    build_c3c5,
    build_family_member,
    build_k2h7,
    build_k6,
    build_l3,
    build_l3_alternative,
    build_l4,
    build_l4_alternative,
    build_t11,
    check_embedding,
    data_dir,
    labels_for,
)


class DerivationError(RuntimeError):
    pass


def attachment_graph(t: int, sides: tuple[int, ...]) -> SimpleGraph:
    """``v0`` with closed neighbourhood K6 - v1v2 plus a K5 sharing ``t`` of v0's other neighbours.

    ``sides[i]`` says whether the i-th K5 vertex outside N(v0) is joined to
    ``v1`` (1), ``v2`` (2) or both (3).
    """
    # vertices: v0, v1, v2, w1..w3, then the 5 - t K5 vertices not among the w's
    n = 6 + 5 - t
    edges = set()
    nbhd = list(range(6))
    for u, v in combinations(nbhd, 2):
        if {u, v} != {1, 2}:
            edges.add((u, v))
    k5 = [3 + i for i in range(t)] + list(range(6, n))
    for u, v in combinations(k5, 2):
        edges.add((min(u, v), max(u, v)))
    for x, side in zip(range(6, n), sides):
        if side & 1:
            edges.add((1, x))
        if side & 2:
            edges.add((2, x))
    return SimpleGraph(n, frozenset(edges))


def derive_family(t: int) -> list[SimpleGraph]:
    """Isomorphism classes of 6-critical graphs of the attachment form for this ``t``."""
    classes: list[SimpleGraph] = []
    for sides in product((1, 2, 3), repeat=5 - t):
        g = attachment_graph(t, sides)
        if any(is_isomorphic(g, h) for h in classes):
            continue
        if is_k_critical(g, 6):
            classes.append(g)
    return classes


def name_by_faces(name_pair: tuple[str, str], graphs: list[SimpleGraph]) -> dict[str, SimpleGraph]:
    """Match derived graphs to names by checking a Klein embedding against each name's facial facts."""
    counts = {"L1": {3: 17, 5: 1}, "L2": {3: 17, 5: 1}, "L5": {3: 16, 5: 2}, "L6": {3: 16, 5: 2}}
    result: dict[str, SimpleGraph] = {}
    for name in name_pair:
        labelled = build_family_member(name)
        matches = [g for g in graphs if is_isomorphic(g, labelled)]
        if len(matches) != 1:
            raise DerivationError(f"{name}: {len(matches)} derived classes match the labelled form")
        s = find_embedding(labelled, counts[name], orientable=False)
        if s is None:
            raise DerivationError(f"{name}: no Klein embedding with the expected faces")
        entry = CatalogEntry(name, labelled, (), "", labels_for(name))
        problems = check_embedding(entry, s, "klein")
        if problems:
            raise DerivationError(f"{name}: {problems}")
        result[name] = labelled
    if is_isomorphic(result[name_pair[0]], result[name_pair[1]]):
        raise DerivationError(f"{name_pair} collapsed to one class")
    return result


def derive_graphs() -> dict[str, SimpleGraph]:
    fam0 = derive_family(0)
    fam1 = derive_family(1)
    fam2 = derive_family(2)
    fam3 = derive_family(3)
    if len(fam0) != 2 or len(fam1) != 2:
        raise DerivationError(f"expected two classes for t=0 and t=1, got {len(fam0)} and {len(fam1)}")
    if len(fam2) != 1 or not is_isomorphic(fam2[0], build_k2h7()):
        raise DerivationError("t=2 should give exactly K2+H7")
    if len(fam3) != 1 or not is_isomorphic(fam3[0], build_c3c5()):
        raise DerivationError("t=3 should give exactly C3+C5")
    graphs = {"K6": build_k6(), "C3+C5": build_c3c5(), "K2+H7": build_k2h7(), "T11": build_t11()}
    graphs.update(name_by_faces(("L1", "L2"), fam1))
    graphs.update(name_by_faces(("L5", "L6"), fam0))
    l3 = build_l3()
    if l3 != build_l3_alternative():
        raise DerivationError("the two descriptions of L3 disagree")
    l4 = build_l4()
    if l4 != build_l4_alternative():
        raise DerivationError("the two descriptions of L4 disagree")
    if not is_k_critical(l4, 6) or is_isomorphic(l3, l4):
        raise DerivationError("L4 must be 6-critical and differ from L3")
    graphs["L3"] = l3
    graphs["L4"] = l4
    return graphs


def _length_partitions(total: int, parts: int, lo: int = 3, hi: int = 7):
    if parts == 0:
        if total == 0:
            yield []
        return
    for first in range(lo, min(hi, total - (parts - 1) * lo) + 1):
        for rest in _length_partitions(total - first, parts - 1, first, hi):
            yield [first] + rest


def klein_face_families(g: SimpleGraph, max_face: int = 7) -> list[EmbeddingScheme]:
    """Every nonorientable Euler-genus-2 embedding whose faces are cycles of length <= ``max_face``."""
    from collections import Counter

    from ..embedding import EmbeddingError, is_orientable, scheme_from_faces
    from ..facesearch import search_face_sets

    found = []
    for lengths in _length_partitions(2 * g.m, g.m - g.n, 3, max_face):
        for faces in search_face_sets(g, dict(Counter(lengths))):
            try:
                s = scheme_from_faces(g, faces)
            except EmbeddingError:
                continue
            if not is_orientable(s):
                found.append(s)
    return found


# -- embeddings ------------------------------------------------------------------


def _z(*labels: int) -> list[int]:
    return [x - 1 for x in labels]


def derive_embeddings() -> dict[tuple[str, str], list[tuple[str, EmbeddingScheme]]]:
    """``(surface, name) -> [(file suffix, scheme)]``; suffix '' is ``<name>.emb``."""
    graphs = derive_graphs()
    k6 = graphs["K6"]
    out: dict[tuple[str, str], list[tuple[str, EmbeddingScheme]]] = {}

    def need(s: EmbeddingScheme | None, what: str) -> EmbeddingScheme:
        if s is None:
            raise DerivationError(f"no embedding found for {what}")
        return normalize(s)

    # K6 in the Klein bottle: the two hexagonal-walk drawings, then one of each other face type
    out[("klein", "K6")] = [
        ("", need(find_embedding(k6, {3: 8, 6: 1}, False, [_z(6, 2, 4, 6, 3, 5)]), "K6 hexagon")),
        ("walk2", need(find_embedding(k6, {3: 8, 6: 1}, False, [_z(6, 5, 4, 6, 2, 4)]), "K6 walk")),
        ("quad", need(find_embedding(k6, {3: 6, 4: 3}, False), "K6 quadrilaterals")),
        ("pent", need(find_embedding(k6, {3: 7, 4: 1, 5: 1}, False), "K6 pentagon")),
    ]
    out[("torus", "K6")] = [("", need(find_embedding(k6, {3: 6, 4: 3}, True), "K6 torus"))]
    for surface, orientable in (("klein", False), ("torus", True)):
        out[(surface, "C3+C5")] = [("", need(find_embedding(graphs["C3+C5"], {3: 14, 4: 1}, orientable), "C3+C5"))]
        out[(surface, "K2+H7")] = [("", need(find_embedding(graphs["K2+H7"], {3: 16, 4: 1}, orientable), "K2+H7"))]
    out[("torus", "T11")] = [("", need(find_embedding(graphs["T11"], {3: 22}, True), "T11"))]
    faces = {"L1": {3: 17, 5: 1}, "L2": {3: 17, 5: 1}, "L3": {3: 20}, "L4": {3: 20},
             "L5": {3: 16, 5: 2}, "L6": {3: 16, 5: 2}}
    for name, counts in faces.items():
        out[("klein", name)] = [("", need(find_embedding(graphs[name], counts, False), name))]
    return out


def _graph_comment(name: str) -> str:
    labels = labels_for(name)
    text = f"{name}: generated by klein5.derivation.catalog"
    if labels:
        text += "\nlabels: " + " ".join(labels)
    return text


def render(root: Path) -> dict[Path, str]:
    """File contents keyed by path, for every catalog file."""
    graphs = derive_graphs()
    files: dict[Path, str] = {}
    for surface, names in (("klein", KLEIN_NAMES), ("torus", TORUS_NAMES)):
        folder = root / "catalog" / surface
        for name in names:
            files[folder / f"{name}.graph"] = format_graph(graphs[name], _graph_comment(name))
    for (surface, name), schemes in derive_embeddings().items():
        folder = root / "catalog" / surface
        for suffix, s in schemes:
            fname = f"{name}-{suffix}.emb" if suffix else f"{name}.emb"
            files[folder / fname] = format_scheme(s, f"{name} embedding ({surface})")
    return files


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="python -m klein5.derivation.catalog", description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None, help="data root to write (default: package data)")
    ap.add_argument("--check", action="store_true", help="compare with existing files instead of writing")
    args = ap.parse_args(argv)
    root = args.out or data_dir()
    files = render(root)
    if args.check:
        stale = [p for p, text in files.items() if not p.is_file() or p.read_text() != text]
        for p in stale:
            print(f"differs: {p}")
        print(f"checked: {len(files)} files, {len(stale)} differ")
        return 1 if stale else 0
    for p, text in files.items():
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)
    print(f"wrote: {len(files)} files under {root}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
