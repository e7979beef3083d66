"""Random Klein-bottle instances grown by local, embedding-preserving moves.

Three moves act on an :class:`EmbeddingScheme`:

* :class:`AddVertexInFace` puts a new vertex inside a face and joins it to
  some of the face's corners;
* :class:`AddEdgeInFace` joins two corners of one face by a chord;
* :class:`SplitVertex` cuts the rotation at a vertex into two intervals and
  gives each interval to one of two new, nonadjacent vertices.

Faces are addressed by their index in :func:`trace_face_corners` and corners
by their position along that walk. The first two moves never change the
surface. A split may lower the Euler genus; results are re-traced and
rejected if they leave the Klein bottle or stop being simple and connected.

Randomness comes from :class:`klein5.rng.SplitMix64`, so a seed fixes the
output on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .embedding import (
    Corner,
    EmbeddingError,
    EmbeddingScheme,
    euler_genus,
    is_orientable,
    normalize,
    scheme_from_faces,
    trace_face_corners,
)
from .facesearch import find_embedding
from .graph import SimpleGraph
from .obstructions import load_catalog
from .rng import SplitMix64


class MutationError(EmbeddingError):
    pass


@dataclass(frozen=True)
class AddVertexInFace:
    face: int
    corners: tuple[int, ...]  # positions along the face walk, in walk order


@dataclass(frozen=True)
class AddEdgeInFace:
    face: int
    i: int
    j: int


@dataclass(frozen=True)
class SplitVertex:
    vertex: int
    start: int  # rotation positions start..stop-1 (cyclically) go to the new vertex
    stop: int


MutationOp = Union[AddVertexInFace, AddEdgeInFace, SplitVertex]


# -- raw scheme editing ----------------------------------------------------------


@dataclass
class _Draft:
    n: int
    edges: list[tuple[int, int]]
    rotation: list[list[int]]
    signature: list[int]

    @classmethod
    def of(cls, s: EmbeddingScheme) -> "_Draft":
        return cls(s.n, list(s.edge_list), [list(r) for r in s.rotation], list(s.signature))

    def add_edge(self, u: int, v: int, sign: int) -> int:
        if u == v:
            raise MutationError("move would create a loop")
        key = (u, v) if u < v else (v, u)
        if key in self.edges:
            raise MutationError(f"move would create a parallel edge {key}")
        self.edges.append(key)
        self.signature.append(sign)
        return len(self.edges) - 1

    def insert_at_corner(self, c: Corner, e: int) -> None:
        """Put edge ``e`` into the rotation at ``c.vertex`` inside the angle of corner ``c``."""
        r = self.rotation[c.vertex]
        # with flip 0 the walk turns from e_in to its successor, so the angle follows e_in
        anchor = c.e_in if c.flip == 0 else c.e_out
        r.insert(r.index(anchor) + 1, e)

    def build(self) -> EmbeddingScheme:
        """Scheme with edges renumbered in sorted order."""
        order = sorted(range(len(self.edges)), key=lambda i: self.edges[i])
        new_id = {old: new for new, old in enumerate(order)}
        g = SimpleGraph(self.n, frozenset(self.edges))
        return EmbeddingScheme(
            g,
            tuple(self.edges[i] for i in order),
            tuple(tuple(new_id[e] for e in r) for r in self.rotation),
            tuple(self.signature[i] for i in order),
        )


def _face(s: EmbeddingScheme, index: int) -> list[Corner]:
    faces = trace_face_corners(s)
    if not 0 <= index < len(faces):
        raise MutationError(f"face {index} out of range (scheme has {len(faces)} faces)")
    return faces[index]


def _add_vertex(s: EmbeddingScheme, op: AddVertexInFace) -> EmbeddingScheme:
    face = _face(s, op.face)
    picks = list(op.corners)
    if not picks:
        raise MutationError("a new vertex needs at least one neighbour")
    if sorted(set(picks)) != picks or picks[0] < 0 or picks[-1] >= len(face):
        raise MutationError("corner positions must be increasing and inside the face")
    if len({face[i].vertex for i in picks}) != len(picks):
        raise MutationError("move would create a parallel edge")
    d = _Draft.of(s)
    z = d.n
    d.n += 1
    d.rotation.append([])
    for i in picks:
        c = face[i]
        # the new vertex takes the walk's frame; a corner traversed against its
        # vertex's orientation sees the new edge twisted
        e = d.add_edge(c.vertex, z, 1 if c.flip == 0 else -1)
        d.insert_at_corner(c, e)
        d.rotation[z].append(e)
    d.rotation[z].reverse()
    return d.build()


def _add_edge(s: EmbeddingScheme, op: AddEdgeInFace) -> EmbeddingScheme:
    face = _face(s, op.face)
    if not (0 <= op.i < len(face) and 0 <= op.j < len(face)) or op.i == op.j:
        raise MutationError("chord needs two distinct corner positions of the face")
    a, b = face[op.i], face[op.j]
    d = _Draft.of(s)
    e = d.add_edge(a.vertex, b.vertex, -1 if a.flip != b.flip else 1)
    d.insert_at_corner(a, e)
    d.insert_at_corner(b, e)
    return d.build()


def _split(s: EmbeddingScheme, op: SplitVertex) -> EmbeddingScheme:
    v = op.vertex
    if not 0 <= v < s.n:
        raise MutationError(f"vertex {v} out of range")
    rot = s.rotation[v]
    deg = len(rot)
    if not (0 <= op.start < deg and 0 <= op.stop < deg) or op.start == op.stop:
        raise MutationError("split needs two distinct rotation positions")
    moved = [rot[(op.start + i) % deg] for i in range((op.stop - op.start) % deg)]
    kept = [e for e in rot if e not in moved]
    d = _Draft.of(s)
    y = d.n
    d.n += 1
    d.rotation[v] = kept
    d.rotation.append(moved)
    for e in moved:
        a, b = d.edges[e]
        other = b if a == v else a
        key = (other, y) if other < y else (y, other)
        d.edges[e] = key
    g_edges = set(d.edges)
    if len(g_edges) != len(d.edges):
        raise MutationError("split would create a parallel edge")
    return d.build()


def mutate(s: EmbeddingScheme, op: MutationOp) -> EmbeddingScheme:
    """Apply ``op``; the result is checked to be connected and to lie in the Klein bottle."""
    if isinstance(op, AddVertexInFace):
        out = _add_vertex(s, op)
    elif isinstance(op, AddEdgeInFace):
        out = _add_edge(s, op)
    elif isinstance(op, SplitVertex):
        out = _split(s, op)
    else:
        raise MutationError(f"unknown move {op!r}")
    if not out.graph.is_connected():
        raise MutationError("move disconnects the graph")
    before, after = euler_genus(s), euler_genus(out)
    if after > before:
        raise MutationError(f"move raised the Euler genus from {before} to {after}")
    if not isinstance(op, SplitVertex) and after != before:
        raise MutationError("face move changed the surface")
    if after == 2 and is_orientable(out):
        raise MutationError("move produced a torus embedding")
    return out


# -- base embeddings ------------------------------------------------------------


def klein_grid_triangulation(p: int, q: int) -> EmbeddingScheme:
    """6-regular triangulation of the Klein bottle on a ``p x q`` grid.

    Vertices ``(i, j)`` with ``i`` mod ``p`` and ``j`` mod ``q``; every square
    ``(i, j), (i+1, j), (i+1, j+1), (i, j+1)`` is cut by its diagonal from
    ``(i, j)`` to ``(i+1, j+1)``. Rows close up normally; the last row is glued
    to the first with ``i`` reflected, which makes the surface nonorientable.
    """
    def vid(i: int, j: int) -> int:
        if j == q:
            i, j = -i - 1, 0
        return (i % p) * q + j

    faces = []
    for i in range(p):
        for j in range(q):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces.append((a, b, c))
            faces.append((a, c, d))
    edges = set()
    for f in faces:
        for k in range(3):
            u, v = f[k], f[(k + 1) % 3]
            if u == v:
                raise EmbeddingError(f"grid {p}x{q} is too small: a face degenerates")
            edges.add((min(u, v), max(u, v)))
    g = SimpleGraph(p * q, frozenset(edges))
    return normalize(scheme_from_faces(g, faces))


# K6 on 0..5 plus three degree-4 vertices; every degree is even and the graph
# triangulates the Klein bottle (the embedding is recovered by face search)
EULERIAN_K6_EDGES = (
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4), (1, 5),
    (1, 7), (2, 3), (2, 4), (2, 5), (2, 8), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8),
    (4, 5), (4, 6), (4, 7), (4, 8), (5, 6), (5, 7), (5, 8),
)


@lru_cache(maxsize=None)
def eulerian_k6_triangulation() -> EmbeddingScheme:
    """A 9-vertex Eulerian triangulation of the Klein bottle that contains K6."""
    g = SimpleGraph(9, frozenset(EULERIAN_K6_EDGES))
    s = find_embedding(g, {3: 18}, orientable=False)
    if s is None:
        raise EmbeddingError("no Klein triangulation found for the Eulerian K6 graph")
    return normalize(s)


@lru_cache(maxsize=None)
def base_schemes() -> tuple[tuple[str, EmbeddingScheme], ...]:
    """Named starting embeddings: every catalog Klein embedding plus small Klein triangulations."""
    out: list[tuple[str, EmbeddingScheme]] = []
    for entry in load_catalog("klein"):
        for i, s in enumerate(entry.embeddings):
            out.append((entry.name if i == 0 else f"{entry.name}#{i}", s))
    for p, q in GRID_SIZES:
        out.append((f"grid{p}x{q}", klein_grid_triangulation(p, q)))
    out.append(("eulerian-k6", eulerian_k6_triangulation()))
    return tuple(out)


GRID_SIZES = ((3, 3), (4, 3), (3, 4))


# -- random instances -----------------------------------------------------------


def random_op(rng: SplitMix64, s: EmbeddingScheme) -> MutationOp:
    faces = trace_face_corners(s)
    kind = rng.below(10)
    if kind < 5:
        fi = rng.below(len(faces))
        face = faces[fi]
        size = 1 + rng.below(min(len(face), 5))
        positions = list(range(len(face)))
        rng.shuffle(positions)
        return AddVertexInFace(fi, tuple(sorted(positions[:size])))
    if kind < 8:
        fi = rng.below(len(faces))
        face = faces[fi]
        i = rng.below(len(face))
        j = (i + 1 + rng.below(max(1, len(face) - 1))) % len(face)
        return AddEdgeInFace(fi, i, j)
    v = rng.below(s.n)
    deg = len(s.rotation[v])
    start = rng.below(deg)
    return SplitVertex(v, start, (start + 1 + rng.below(max(1, deg - 1))) % deg)


def random_instance(
    seed: int, steps: int, max_vertices: int = 14, attempts_per_step: int = 50
) -> tuple[SimpleGraph, EmbeddingScheme]:
    """Seeded base embedding followed by ``steps`` random valid moves.

    Moves that are invalid or would exceed ``max_vertices`` are redrawn; after
    ``attempts_per_step`` failures in a row the walk stops early.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = SplitMix64(seed)
    bases = [s for _, s in base_schemes() if s.n <= max_vertices]
    s = rng.choice(bases)
    for _ in range(steps):
        for _ in range(attempts_per_step):
            op = random_op(rng, s)
            grows = isinstance(op, (AddVertexInFace, SplitVertex))
            if grows and s.n + 1 > max_vertices:
                continue
            try:
                s = mutate(s, op)
            except MutationError:
                continue
            break
        else:
            break
    s = normalize(s)
    return s.graph, s


def base_name(seed: int, max_vertices: int = 14) -> str:
    rng = SplitMix64(seed)
    bases = [(name, s) for name, s in base_schemes() if s.n <= max_vertices]
    return rng.choice(bases)[0]

