"""Topological K6 detection: six branch vertices joined by internally disjoint paths."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import SimpleGraph


@dataclass(frozen=True)
class SubdivisionWitness:
    branch: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]  # one path per branch pair, endpoints included

    def validate(self, g: SimpleGraph) -> bool:
        if len(set(self.branch)) != 6:
            return False
        want = {frozenset(p) for p in combinations(self.branch, 2)}
        got = set()
        interior: set[int] = set()
        for p in self.paths:
            if len(p) < 2 or len(set(p)) != len(p):
                return False
            if any(not g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)):
                return False
            inner = set(p[1:-1])
            if inner & set(self.branch) or inner & interior:
                return False
            interior |= inner
            got.add(frozenset((p[0], p[-1])))
        return got == want and len(self.paths) == 15


def _route(
    g: SimpleGraph,
    pairs: list[tuple[int, int]],
    free: set[int],
    done: list[tuple[int, ...]],
) -> list[tuple[int, ...]] | None:
    if not pairs:
        return list(done)
    a, b = pairs[0]
    # shortest paths first keeps interior vertices available for later pairs
    for path in _paths(g, a, b, free):
        inner = set(path[1:-1])
        done.append(path)
        found = _route(g, pairs[1:], free - inner, done)
        if found is not None:
            return found
        done.pop()
    return None


def _paths(g: SimpleGraph, a: int, b: int, free: set[int]):
    for length in range(2, len(free) + 2):
        yield from _paths_of_length(g, a, b, free, length)


def _paths_of_length(g: SimpleGraph, a: int, b: int, free: set[int], length: int):
    # vertex sequences a, w1, ..., w_{length-1}, b with interior in ``free``
    stack = [(a,)]
    while stack:
        p = stack.pop()
        if len(p) == length:
            if g.has_edge(p[-1], b):
                yield p + (b,)
            continue
        for w in sorted(g.neighbors(p[-1]), reverse=True):
            if w in free and w not in p:
                stack.append(p + (w,))


def contains_k6_subdivision(g: SimpleGraph) -> SubdivisionWitness | None:
    """A topological K6 in ``g`` or ``None``; branch sets are tried densest first."""
    cand = [v for v in range(g.n) if g.degree(v) >= 5]
    sets = sorted(
        combinations(cand, 6),
        key=lambda s: (-sum(1 for u, v in combinations(s, 2) if g.has_edge(u, v)), s),
    )
    for branch in sets:
        bset = set(branch)
        direct = []
        missing = []
        for u, v in combinations(branch, 2):
            (direct if g.has_edge(u, v) else missing).append((u, v))
        free = set(range(g.n)) - bset
        # each missing pair needs its own interior vertex
        if len(missing) > len(free):
            continue
        # a branch vertex needs one free neighbour per missing pair at it
        if any(
            sum(1 for p in missing if v in p) > len(g.neighbors(v) & free) for v in branch
        ):
            continue
        routed = _route(g, missing, free, [])
        if routed is not None:
            paths = [(u, v) for u, v in direct] + routed
            order = {frozenset((p[0], p[-1])): p for p in paths}
            ordered = tuple(order[frozenset(pr)] for pr in combinations(branch, 2))
            return SubdivisionWitness(tuple(branch), ordered)
    return None
