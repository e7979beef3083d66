"""Combinatorial surface embeddings: rotation systems with edge signatures.

A scheme lists, for every vertex, the cyclic order of its incident edge ids,
and gives every edge a signature in ``{+1, -1}``. Faces are traced with a
flip bit: arriving at ``w`` along ``e`` the walk leaves along the rotation
successor of ``e`` at ``w`` while the bit is clear and along the predecessor
while it is set; every edge with signature ``-1`` toggles the bit.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .graph import GraphError, ParseError, SimpleGraph, _content_lines, parse_graph_lines


class EmbeddingError(GraphError):
    pass


@dataclass(frozen=True)
class Corner:
    """One visit of a facial walk to ``vertex``: in along ``e_in``, out along ``e_out``."""

    vertex: int
    e_in: int
    e_out: int
    flip: int


@dataclass(frozen=True)
class FacialWalk:
    """Closed walk ``vertices[0] -edges[0]- vertices[1] ... -edges[-1]- vertices[0]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def has_repeated_vertex(self) -> bool:
        return len(set(self.vertices)) != len(self.vertices)

    def canonical(self) -> "FacialWalk":
        """Least rotation (over both directions) by vertex sequence, then edge sequence."""
        n = len(self.vertices)
        best = None
        # reversed walk: edges[i] must still join verts[i] and verts[i+1]
        rev = (
            tuple(reversed(self.vertices)),
            tuple(self.edges[(n - 2 - i) % n] for i in range(n)),
        )
        for verts, edges in ((self.vertices, self.edges), rev):
            for r in range(n):
                cand = (verts[r:] + verts[:r], edges[r:] + edges[:r])
                if best is None or cand < best:
                    best = cand
        if best is None:
            return self
        return FacialWalk(best[0], best[1])

    def format(self) -> str:
        return " ".join(str(v) for v in self.vertices)


@dataclass(frozen=True)
class EmbeddingScheme:
    graph: SimpleGraph
    edge_list: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    signature: tuple[int, ...]

    def __post_init__(self) -> None:
        validate_scheme(self)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return len(self.edge_list)

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edge_list[e]
        return b if a == v else a

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        for i, e in enumerate(self.edge_list):
            if e == key:
                return i
        raise EmbeddingError(f"no edge {key}")


def validate_scheme(s: EmbeddingScheme) -> None:
    g = s.graph
    if len(s.edge_list) != g.m:
        raise EmbeddingError(f"scheme has {len(s.edge_list)} edges, graph has {g.m}")
    if set(s.edge_list) != set(g.edges) or len(set(s.edge_list)) != g.m:
        raise EmbeddingError("edge list does not match the graph's edges")
    if any(u >= v for u, v in s.edge_list):
        raise EmbeddingError("edge list entries must be sorted pairs")
    if len(s.signature) != g.m or any(x not in (1, -1) for x in s.signature):
        raise EmbeddingError("signature must give +1 or -1 for every edge")
    if len(s.rotation) != g.n:
        raise EmbeddingError("rotation must list every vertex")
    for v in range(g.n):
        rot = s.rotation[v]
        if len(rot) != g.degree(v):
            raise EmbeddingError(f"rotation at {v} lists {len(rot)} edges, degree is {g.degree(v)}")
        if len(set(rot)) != len(rot):
            raise EmbeddingError(f"rotation at {v} repeats an edge")
        for e in rot:
            if not 0 <= e < g.m or v not in s.edge_list[e]:
                raise EmbeddingError(f"edge {e} in rotation at {v} is not incident with {v}")


def make_scheme(
    g: SimpleGraph,
    rotation: Sequence[Sequence[int]],
    signature: Sequence[int] | None = None,
    edge_list: Sequence[tuple[int, int]] | None = None,
) -> EmbeddingScheme:
    edges = tuple(edge_list) if edge_list is not None else tuple(g.sorted_edges())
    sig = tuple(signature) if signature is not None else (1,) * len(edges)
    return EmbeddingScheme(g, edges, tuple(tuple(r) for r in rotation), sig)


def scheme_from_neighbor_rotation(
    g: SimpleGraph, neighbor_order: Sequence[Sequence[int]], negative: Iterable[tuple[int, int]] = ()
) -> EmbeddingScheme:
    """Scheme from cyclic neighbour orders; edges in ``negative`` get signature -1."""
    edges = tuple(g.sorted_edges())
    eid = {e: i for i, e in enumerate(edges)}
    rot = []
    for v, order in enumerate(neighbor_order):
        rot.append(tuple(eid[(v, w) if v < w else (w, v)] for w in order))
    neg = {(u, v) if u < v else (v, u) for u, v in negative}
    sig = tuple(-1 if e in neg else 1 for e in edges)
    return EmbeddingScheme(g, edges, tuple(rot), sig)


# -- face tracing ---------------------------------------------------------------


def _position_tables(s: EmbeddingScheme) -> list[dict[int, int]]:
    return [{e: i for i, e in enumerate(rot)} for rot in s.rotation]


def trace_face_corners(s: EmbeddingScheme) -> list[list[Corner]]:
    """Every face as its sequence of corners, one orientation per face, deterministic order."""
    pos = _position_tables(s)
    rot = s.rotation
    visited: set[tuple[int, int, int]] = set()
    faces = []
    for e in range(s.m):
        for arrive in (s.edge_list[e][1], s.edge_list[e][0]):
            for flip in (0, 1):
                start = (arrive, e, flip)
                if start in visited:
                    continue
                corners = []
                state = start
                while True:
                    x, e_in, phi = state
                    visited.add(state)
                    r = rot[x]
                    i = pos[x][e_in]
                    e_out = r[(i + 1) % len(r)] if phi == 0 else r[(i - 1) % len(r)]
                    corners.append(Corner(x, e_in, e_out, phi))
                    visited.add((x, e_out, 1 - phi))
                    nxt = s.other_end(e_out, x)
                    nphi = phi ^ (1 if s.signature[e_out] == -1 else 0)
                    state = (nxt, e_out, nphi)
                    if state == start:
                        break
                    if state in visited:
                        raise EmbeddingError("face tracing did not close; malformed rotation")
                faces.append(corners)
    return faces


def _walk_from_corners(corners: list[Corner]) -> FacialWalk:
    return FacialWalk(tuple(c.vertex for c in corners), tuple(c.e_out for c in corners))


def trace_faces(s: EmbeddingScheme) -> list[FacialWalk]:
    """Canonical facial walks sorted by length, then by vertex sequence."""
    walks = [_walk_from_corners(c).canonical() for c in trace_face_corners(s)]
    return sorted(walks, key=lambda w: (len(w), w.vertices, w.edges))


def face_count(s: EmbeddingScheme) -> int:
    if s.m == 0:
        return 1 if s.n == 1 else 0
    return len(trace_face_corners(s))


def euler_genus(s: EmbeddingScheme) -> int:
    """``2 - V + E - F``; the underlying graph must be connected."""
    if s.n == 0 or not s.graph.is_connected():
        raise EmbeddingError("Euler genus needs a connected graph")
    return 2 - s.n + s.m - face_count(s)


def is_orientable(s: EmbeddingScheme) -> bool:
    """True iff some choice of local orientations makes every signature positive."""
    side = [0] * s.n
    seen = [False] * s.n
    incident: list[list[int]] = [[] for _ in range(s.n)]
    for e, (u, v) in enumerate(s.edge_list):
        incident[u].append(e)
        incident[v].append(e)
    for root in range(s.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in incident[u]:
                w = s.other_end(e, u)
                want = side[u] ^ (1 if s.signature[e] == -1 else 0)
                if not seen[w]:
                    seen[w] = True
                    side[w] = want
                    queue.append(w)
                elif side[w] != want:
                    return False
    return True


def surface_name(s: EmbeddingScheme) -> str:
    gamma = euler_genus(s)
    if is_orientable(s):
        return {0: "sphere", 2: "torus"}.get(gamma, f"orientable genus {gamma // 2}")
    return {1: "projective plane", 2: "Klein bottle"}.get(gamma, f"nonorientable genus {gamma}")


def face_length_multiset(s: EmbeddingScheme) -> Counter:
    return Counter(len(w) for w in trace_faces(s))


def is_triangulation(s: EmbeddingScheme) -> bool:
    walks = trace_faces(s)
    return bool(walks) and all(len(w) == 3 and not w.has_repeated_vertex() for w in walks)


def is_eulerian(g: SimpleGraph) -> bool:
    return all(d % 2 == 0 for d in g.degrees())


def heawood_number(gamma: int) -> int:
    if gamma < 0:
        raise ValueError("Euler genus must be non-negative")
    # floor((7 + sqrt(x)) / 2) == (7 + isqrt(x)) // 2 for every integer x >= 0
    return (7 + math.isqrt(24 * gamma + 1)) // 2


# -- local moves ----------------------------------------------------------------


def switch_vertex(s: EmbeddingScheme, v: int) -> EmbeddingScheme:
    """Reverse the rotation at ``v`` and negate its edges' signatures; faces are unchanged."""
    rot = list(s.rotation)
    rot[v] = tuple(reversed(rot[v]))
    sig = list(s.signature)
    for e in s.rotation[v]:
        sig[e] = -sig[e]
    return EmbeddingScheme(s.graph, s.edge_list, tuple(rot), tuple(sig))


def normalize(s: EmbeddingScheme) -> EmbeddingScheme:
    """Switch vertices so every edge of a BFS spanning forest has signature +1."""
    rot = [list(r) for r in s.rotation]
    sig = list(s.signature)
    seen = [False] * s.n
    for root in range(s.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in sorted(rot[u]):
                w = s.other_end(e, u)
                if seen[w]:
                    continue
                seen[w] = True
                if sig[e] == -1:
                    rot[w].reverse()
                    for f in rot[w]:
                        sig[f] = -sig[f]
                queue.append(w)
    return EmbeddingScheme(s.graph, s.edge_list, tuple(tuple(r) for r in rot), tuple(sig))


# -- schemes from face lists ----------------------------------------------------


def scheme_from_faces(g: SimpleGraph, faces: Sequence[Sequence[int]]) -> EmbeddingScheme:
    """Rebuild a scheme whose facial walks are exactly ``faces`` (closed vertex sequences).

    Every edge must be traversed twice in total and the corners at each vertex
    must link its incident edges into a single cycle. Vertices of degree below
    three are not supported.
    """
    edges = tuple(g.sorted_edges())
    eid = {e: i for i, e in enumerate(edges)}

    def edge_of(u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        if key not in eid:
            raise EmbeddingError(f"face uses non-edge {key}")
        return eid[key]

    if any(g.degree(v) < 3 for v in range(g.n)):
        raise EmbeddingError("scheme_from_faces needs minimum degree 3")
    walks = []
    usage = Counter()
    for f in faces:
        k = len(f)
        ids = [edge_of(f[i], f[(i + 1) % k]) for i in range(k)]
        usage.update(ids)
        walks.append((list(f), ids))
    if any(usage[e] != 2 for e in range(len(edges))):
        raise EmbeddingError("every edge must be traversed exactly twice")

    links: list[dict[int, list[int]]] = [dict() for _ in range(g.n)]
    for verts, ids in walks:
        k = len(verts)
        for i in range(k):
            x = verts[i]
            a, b = ids[i - 1], ids[i]
            links[x].setdefault(a, []).append(b)
            links[x].setdefault(b, []).append(a)
    rotation = []
    for v in range(g.n):
        link = links[v]
        if len(link) != g.degree(v) or any(len(nb) != 2 for nb in link.values()):
            raise EmbeddingError(f"corners at {v} do not form a cycle")
        start = min(link)
        order = [start]
        prev, cur = None, start
        while True:
            a, b = link[cur]
            nxt = a if a != prev else b
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) != g.degree(v):
            raise EmbeddingError(f"link of {v} is not a single cycle")
        rotation.append(tuple(order))

    pos = [{e: i for i, e in enumerate(r)} for r in rotation]
    sig: list[int | None] = [None] * len(edges)
    for verts, ids in walks:
        k = len(verts)
        phis = []
        for i in range(k):
            x = verts[i]
            e_in, e_out = ids[i - 1], ids[i]
            d = len(rotation[x])
            phis.append(0 if (pos[x][e_in] + 1) % d == pos[x][e_out] else 1)
        for i in range(k):
            e = ids[i]
            want = -1 if phis[i] != phis[(i + 1) % k] else 1
            if sig[e] is None:
                sig[e] = want
            elif sig[e] != want:
                raise EmbeddingError(f"inconsistent signature for edge {edges[e]}")
    scheme = EmbeddingScheme(g, edges, tuple(rotation), tuple(int(x) for x in sig))
    want = Counter(_canonical_vertices(f) for f in faces)
    got = Counter(w.vertices for w in trace_faces(scheme))
    if want != got:
        raise EmbeddingError("reconstructed scheme does not reproduce the given faces")
    return scheme


def _canonical_vertices(f: Sequence[int]) -> tuple[int, ...]:
    k = len(f)
    options = []
    for seq in (tuple(f), tuple(reversed(f))):
        for r in range(k):
            options.append(seq[r:] + seq[:r])
    return min(options)


# -- file format ----------------------------------------------------------------


def format_scheme(s: EmbeddingScheme, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{s.n} {s.m}")
    out.extend(f"{u} {v}" for u, v in s.edge_list)
    out.append(f"E {s.m}")
    for i, (u, v) in enumerate(s.edge_list):
        out.append(f"{i}: {u} {v} {'+' if s.signature[i] == 1 else '-'}")
    out.append(f"R {s.n}")
    for v, rot in enumerate(s.rotation):
        out.append(f"{v}: " + " ".join(str(e) for e in rot) if rot else f"{v}:")
    return "\n".join(out) + "\n"


def parse_scheme(text: str, source: str | None = None, normalize_signs: bool = True) -> EmbeddingScheme:
    lines = list(_content_lines(text))
    g, _, used = parse_graph_lines(lines, source)
    rest = lines[used:]
    if not rest:
        raise ParseError("missing 'E' block", None, source)
    lineno, head = rest[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "E" or not parts[1].isdigit():
        raise ParseError(f"expected 'E <count>', got {head!r}", lineno, source)
    k = int(parts[1])
    if k != g.m:
        raise ParseError(f"E block announces {k} edges, graph has {g.m}", lineno, source)
    edge_list = []
    sig = []
    seen = set()
    for i in range(k):
        if 1 + i >= len(rest):
            raise ParseError("E block ended early", rest[-1][0], source)
        lineno, line = rest[1 + i]
        label, _, body = line.partition(":")
        toks = body.split()
        if not label.strip().isdigit() or int(label) != i:
            raise ParseError(f"edge lines must be numbered 0..{k - 1} in order", lineno, source)
        if len(toks) != 3 or toks[2] not in ("+", "-"):
            raise ParseError(f"expected 'e: u v +|-', got {line!r}", lineno, source)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"bad endpoint in {line!r}", lineno, source) from None
        key = (u, v) if u < v else (v, u)
        if key not in g.edges:
            raise ParseError(f"edge {u} {v} is not in the graph block", lineno, source)
        if key in seen:
            raise ParseError(f"edge {u} {v} listed twice", lineno, source)
        seen.add(key)
        edge_list.append(key)
        sig.append(1 if toks[2] == "+" else -1)
    rest = rest[1 + k :]
    if not rest:
        raise ParseError("missing 'R' block", None, source)
    lineno, head = rest[0]
    parts = head.split()
    if not parts or parts[0] != "R" or len(parts) > 2:
        raise ParseError(f"expected 'R', got {head!r}", lineno, source)
    rows = rest[1:]
    if len(rows) != g.n:
        where = rows[-1][0] if rows else lineno
        raise ParseError(f"R block needs {g.n} rotation lines, found {len(rows)}", where, source)
    rotation: list[tuple[int, ...] | None] = [None] * g.n
    for lineno, line in rows:
        label, _, body = line.partition(":")
        if not label.strip().isdigit():
            raise ParseError(f"expected 'v: e1 e2 ...', got {line!r}", lineno, source)
        v = int(label)
        if not 0 <= v < g.n or rotation[v] is not None:
            raise ParseError(f"rotation for vertex {v} out of range or repeated", lineno, source)
        try:
            rot = tuple(int(t) for t in body.split())
        except ValueError:
            raise ParseError(f"non-integer edge id in {line!r}", lineno, source) from None
        for e in rot:
            if not 0 <= e < k or v not in edge_list[e]:
                raise ParseError(f"edge {e} is not incident with vertex {v}", lineno, source)
        if len(set(rot)) != len(rot) or len(rot) != g.degree(v):
            raise ParseError(
                f"rotation at {v} must list each of its {g.degree(v)} edges once", lineno, source
            )
        rotation[v] = rot
    scheme = EmbeddingScheme(g, tuple(edge_list), tuple(rotation), tuple(sig))  # type: ignore[arg-type]
    return normalize(scheme) if normalize_signs else scheme


def load_scheme(path: str | Path, normalize_signs: bool = True) -> EmbeddingScheme:
    p = Path(path)
    return parse_scheme(p.read_text(), str(p), normalize_signs)


def save_scheme(s: EmbeddingScheme, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_scheme(s, comment))
