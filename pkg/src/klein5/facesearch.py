"""Search for embeddings with prescribed faces.

An embedding of a connected graph in a closed surface is the same thing as a
family of closed walks that uses every edge exactly twice and whose corners
link the edges around each vertex into a single cycle. This module searches
for such families among candidate walks (typically short cycles of the graph
plus a few prescribed walks) and turns each hit into an
:class:`EmbeddingScheme`. It is used to build certificate data for small
graphs, not as a general embedding algorithm.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Sequence

from .embedding import EmbeddingError, EmbeddingScheme, is_orientable, scheme_from_faces
from .graph import SimpleGraph


def simple_cycles(g: SimpleGraph, length: int) -> list[tuple[int, ...]]:
    """All cycles of ``length`` as vertex tuples starting at their least vertex, each once."""
    out = []
    for s in range(g.n):
        stack = [(s, (s,))]
        while stack:
            v, walk = stack.pop()
            if len(walk) == length:
                if g.has_edge(v, s) and walk[1] < walk[-1]:
                    out.append(walk)
                continue
            for w in sorted(g.neighbors(v), reverse=True):
                if w > s and w not in walk:
                    stack.append((w, walk + (w,)))
    return sorted(out)


class _Search:
    def __init__(
        self,
        g: SimpleGraph,
        candidates: Sequence[Sequence[int]],
        counts: dict[int, int],
    ):
        self.g = g
        self.eid = {e: i for i, e in enumerate(g.sorted_edges())}
        self.deg = g.degrees()
        self.cands = []
        for walk in candidates:
            k = len(walk)
            edges = []
            for i in range(k):
                u, v = walk[i], walk[(i + 1) % k]
                edges.append(self.eid[(u, v) if u < v else (v, u)])
            corners = [(walk[i], edges[i - 1], edges[i]) for i in range(k)]
            self.cands.append((tuple(walk), tuple(edges), Counter(edges), corners))
        self.by_edge: list[list[int]] = [[] for _ in range(g.m)]
        for ci, (_, _, mult, _) in enumerate(self.cands):
            for e in mult:
                self.by_edge[e].append(ci)
        self.usage = [0] * g.m
        self.link: list[dict[int, list[int]]] = [dict() for _ in range(g.n)]
        self.left = dict(counts)
        self.chosen: list[int] = []
        self.banned: set[int] = set()

    # link bookkeeping: each incident edge has at most two link neighbours, and
    # a closed cycle is allowed only once it passes through every incident edge
    def _link_degree(self, x: int, a: int, pending: list[tuple[int, int, int]]) -> int:
        extra = sum((p == a) + (q == a) for (y, p, q) in pending if y == x)
        return len(self.link[x].get(a, ())) + extra

    def fits(self, ci: int) -> bool:
        if ci in self.banned:
            return False
        walk, edges, mult, corners = self.cands[ci]
        if self.left.get(len(walk), 0) <= 0:
            return False
        for e, k in mult.items():
            if self.usage[e] + k > 2:
                return False
        pending: list[tuple[int, int, int]] = []
        for x, a, b in corners:
            if a == b:
                return False
            if self._link_degree(x, a, pending) >= 2 or self._link_degree(x, b, pending) >= 2:
                return False
            pending.append((x, a, b))
        self._add_links(corners)
        ok = all(self._cycle_ok(x, a) for x, a, _ in corners)
        self._remove_links(corners)
        return ok

    def _cycle_ok(self, x: int, a: int) -> bool:
        """False iff the link component through ``a`` is a cycle missing some edge at ``x``."""
        link = self.link[x]
        prev, cur, count = None, a, 1
        while True:
            nbrs = link.get(cur, [])
            if len(nbrs) < 2:
                return True
            nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
            if nxt == a:
                return count == self.deg[x]
            prev, cur = cur, nxt
            count += 1
            if count > self.deg[x]:
                return False

    def _add_links(self, corners) -> None:
        for x, a, b in corners:
            self.link[x].setdefault(a, []).append(b)
            self.link[x].setdefault(b, []).append(a)

    def _remove_links(self, corners) -> None:
        for x, a, b in reversed(corners):
            self.link[x][a].remove(b)
            if not self.link[x][a]:
                del self.link[x][a]
            self.link[x][b].remove(a)
            if not self.link[x][b]:
                del self.link[x][b]

    def push(self, ci: int) -> None:
        walk, _, mult, corners = self.cands[ci]
        for e, k in mult.items():
            self.usage[e] += k
        self._add_links(corners)
        self.left[len(walk)] -= 1
        self.chosen.append(ci)

    def pop(self) -> None:
        ci = self.chosen.pop()
        walk, _, mult, corners = self.cands[ci]
        for e, k in mult.items():
            self.usage[e] -= k
        self._remove_links(corners)
        self.left[len(walk)] += 1

    def run(self) -> Iterator[list[tuple[int, ...]]]:
        if all(u == 2 for u in self.usage):
            if all(v == 0 for v in self.left.values()):
                yield [self.cands[ci][0] for ci in self.chosen]
            return
        best_e, best = -1, None
        for e in range(self.g.m):
            if self.usage[e] == 2:
                continue
            opts = [ci for ci in self.by_edge[e] if self.fits(ci)]
            if best is None or len(opts) < len(best):
                best_e, best = e, opts
                if not opts:
                    return
        assert best is not None
        # once a candidate has been tried for this edge, later sibling branches
        # exclude it, so each family is reached through one branch only
        tried = []
        for ci in best:
            self.push(ci)
            yield from self.run()
            self.pop()
            self.banned.add(ci)
            tried.append(ci)
        self.banned.difference_update(tried)


def search_face_sets(
    g: SimpleGraph,
    counts: dict[int, int],
    required: Iterable[Sequence[int]] = (),
    extra_candidates: Iterable[Sequence[int]] = (),
) -> Iterator[list[tuple[int, ...]]]:
    """Yield face families with ``counts[length]`` faces of each length.

    Candidates are all simple cycles of the requested lengths plus
    ``extra_candidates``; every walk in ``required`` is forced into the family.
    Each family is reported once.
    """
    lengths = sorted(counts)
    cands: list[tuple[int, ...]] = []
    for L in lengths:
        if counts[L] > 0:
            cands.extend(simple_cycles(g, L))
    req = [tuple(w) for w in required]
    cands.extend(tuple(w) for w in extra_candidates)
    search = _Search(g, cands + req, counts)
    base = len(cands)
    for i in range(len(req)):
        if not search.fits(base + i):
            return
        search.push(base + i)
    # required walks are already in; drop them from branching
    for e in range(g.m):
        search.by_edge[e] = [ci for ci in search.by_edge[e] if ci < base]
    yield from search.run()


def find_embedding(
    g: SimpleGraph,
    counts: dict[int, int],
    orientable: bool | None = None,
    required: Iterable[Sequence[int]] = (),
    extra_candidates: Iterable[Sequence[int]] = (),
    accept=None,
) -> EmbeddingScheme | None:
    """First scheme whose faces match ``counts`` (and ``orientable`` when given)."""
    for faces in search_face_sets(g, counts, required, extra_candidates):
        try:
            s = scheme_from_faces(g, faces)
        except EmbeddingError:
            continue
        if orientable is not None and is_orientable(s) != orientable:
            continue
        if accept is not None and not accept(s, faces):
            continue
        return s
    return None
