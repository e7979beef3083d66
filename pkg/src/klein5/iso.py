"""Subgraph isomorphism (not necessarily induced) and graph isomorphism.

Backtracking over pattern vertices in a connectivity-first order. Host
adjacency is kept as integer bitmasks so the candidate set for a pattern
vertex is one AND over the images of its already-placed neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import GraphError, SimpleGraph

MAX_ISO_VERTICES = 16


@dataclass(frozen=True)
class VertexMapping:
    """Injective map pattern vertex -> host vertex, stored as a tuple indexed by pattern vertex."""

    image: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.image[v]

    def __len__(self) -> int:
        return len(self.image)

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.image))

    def validate(self, pattern: SimpleGraph, host: SimpleGraph) -> bool:
        if len(self.image) != pattern.n or len(set(self.image)) != pattern.n:
            return False
        if any(not 0 <= h < host.n for h in self.image):
            return False
        return all(host.has_edge(self.image[u], self.image[v]) for u, v in pattern.edges)

    def format(self) -> str:
        return " ".join(f"{p}->{h}" for p, h in enumerate(self.image))


def _masks(g: SimpleGraph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _search_order(pattern: SimpleGraph) -> list[int]:
    """Highest degree first, then repeatedly the vertex with most placed neighbours."""
    order: list[int] = []
    placed = set()
    remaining = set(range(pattern.n))
    while remaining:
        best = max(
            remaining,
            key=lambda v: (
                sum(1 for w in pattern.neighbors(v) if w in placed),
                pattern.degree(v),
                -v,
            ),
        )
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


def _refine(g: SimpleGraph, h: SimpleGraph) -> tuple[list[int], list[int]]:
    """Joint colour refinement of two graphs; returns stable colour classes for each."""
    cg = [g.degree(v) for v in range(g.n)]
    ch = [h.degree(v) for v in range(h.n)]
    while True:
        sig_g = [(cg[v], tuple(sorted(cg[w] for w in g.neighbors(v)))) for v in range(g.n)]
        sig_h = [(ch[v], tuple(sorted(ch[w] for w in h.neighbors(v)))) for v in range(h.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig_g) | set(sig_h)))}
        ng = [palette[s] for s in sig_g]
        nh = [palette[s] for s in sig_h]
        if len(set(ng) | set(nh)) == len(set(cg) | set(ch)):
            return ng, nh
        cg, ch = ng, nh


def _backtrack(
    pattern: SimpleGraph,
    host: SimpleGraph,
    allowed: list[int],
) -> Iterator[tuple[int, ...]]:
    order = _search_order(pattern)
    hmask = _masks(host)
    pos = {v: i for i, v in enumerate(order)}
    # earlier-placed pattern neighbours of each order slot
    back = [[w for w in pattern.neighbors(v) if pos[w] < i] for i, v in enumerate(order)]
    image = [-1] * pattern.n
    full = (1 << host.n) - 1

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(image)
            return
        v = order[i]
        cand = allowed[v] & ~used & full
        for w in back[i]:
            cand &= hmask[image[w]]
            if not cand:
                return
        while cand:
            low = cand & -cand
            h = low.bit_length() - 1
            cand ^= low
            image[v] = h
            yield from rec(i + 1, used | low)
        image[v] = -1

    yield from rec(0, 0)


def _degree_allowed(pattern: SimpleGraph, host: SimpleGraph) -> list[int]:
    hdeg = host.degrees()
    allowed = []
    for v in range(pattern.n):
        d = pattern.degree(v)
        mask = 0
        for h in range(host.n):
            if hdeg[h] >= d:
                mask |= 1 << h
        allowed.append(mask)
    return allowed


def iter_subgraph_isomorphisms(
    pattern: SimpleGraph, host: SimpleGraph, distinct_images: bool = False
) -> Iterator[VertexMapping]:
    """All monomorphisms ``pattern -> host`` in deterministic order.

    With ``distinct_images`` only the first mapping onto each distinct image
    edge set is produced, i.e. one witness per copy of the pattern.
    """
    if pattern.n > host.n or pattern.m > host.m:
        return
    if pattern.n == 0:
        yield VertexMapping(())
        return
    seen: set[frozenset[tuple[int, int]]] = set()
    for img in _backtrack(pattern, host, _degree_allowed(pattern, host)):
        if distinct_images:
            key = frozenset(
                (img[u], img[v]) if img[u] < img[v] else (img[v], img[u]) for u, v in pattern.edges
            )
            if key in seen:
                continue
            seen.add(key)
        yield VertexMapping(img)


def subgraph_isomorphism(pattern: SimpleGraph, host: SimpleGraph) -> VertexMapping | None:
    """A witness that ``host`` has a subgraph isomorphic to ``pattern``, or ``None``."""
    return next(iter_subgraph_isomorphisms(pattern, host), None)


def count_copies(pattern: SimpleGraph, host: SimpleGraph) -> int:
    return sum(1 for _ in iter_subgraph_isomorphisms(pattern, host, distinct_images=True))


def find_isomorphism(g: SimpleGraph, h: SimpleGraph) -> VertexMapping | None:
    if max(g.n, h.n) > MAX_ISO_VERTICES:
        raise GraphError(f"isomorphism test limited to {MAX_ISO_VERTICES} vertices")
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg, ch = _refine(g, h)
    if sorted(cg) != sorted(ch):
        return None
    allowed = []
    for v in range(g.n):
        mask = 0
        for w in range(h.n):
            if ch[w] == cg[v]:
                mask |= 1 << w
        allowed.append(mask)
    # equal edge counts make every monomorphism an isomorphism
    img = next(_backtrack(g, h, allowed), None)
    return VertexMapping(img) if img is not None else None


def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    return find_isomorphism(g, h) is not None


def automorphisms(g: SimpleGraph) -> list[VertexMapping]:
    if g.n > MAX_ISO_VERTICES:
        raise GraphError(f"automorphism search limited to {MAX_ISO_VERTICES} vertices")
    cg, _ = _refine(g, g)
    allowed = []
    for v in range(g.n):
        allowed.append(sum(1 << w for w in range(g.n) if cg[w] == cg[v]))
    return [VertexMapping(img) for img in _backtrack(g, g, allowed)]
