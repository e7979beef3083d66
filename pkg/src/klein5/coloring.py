"""Exact k-coloring, criticality and precoloring extension.

Colors are ``1..k``. The solver is a backtracking search that always branches
on the uncolored vertex of maximum saturation (number of distinct colors among
its neighbours), ties broken by degree and then by index, so results are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .graph import GraphError, ParseError, SimpleGraph, _content_lines, _ints


class ColoringError(GraphError):
    pass


@dataclass(frozen=True)
class Coloring:
    """A (partial or total) assignment of colors ``1..k``."""

    assignment: Mapping[int, int]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", dict(self.assignment))

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def get(self, v: int) -> int | None:
        return self.assignment.get(v)

    def is_total(self, g: SimpleGraph) -> bool:
        return all(v in self.assignment for v in range(g.n))

    def is_proper(self, g: SimpleGraph) -> bool:
        a = self.assignment
        if any(not 1 <= c <= self.k for c in a.values()):
            return False
        return all(not (u in a and v in a and a[u] == a[v]) for u, v in g.edges)

    def colors_used(self) -> set[int]:
        return set(self.assignment.values())

    def format(self) -> str:
        return " ".join(f"{v}:{c}" for v, c in sorted(self.assignment.items()))


def is_proper_coloring(g: SimpleGraph, assignment: Mapping[int, int], k: int | None = None) -> bool:
    if k is not None and any(not 1 <= c <= k for c in assignment.values()):
        return False
    return all(
        not (u in assignment and v in assignment and assignment[u] == assignment[v])
        for u, v in g.edges
    )


def _greedy_clique(g: SimpleGraph) -> list[int]:
    """A large clique by greedy growth from each vertex; used only as a lower bound."""
    best: list[int] = []
    for s in sorted(range(g.n), key=lambda v: -g.degree(v)):
        clique = [s]
        cand = set(g.neighbors(s))
        while cand:
            v = max(cand, key=lambda w: (len(cand & g.neighbors(w)), -w))
            clique.append(v)
            cand &= g.neighbors(v)
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def _solve(g: SimpleGraph, k: int, fixed: Mapping[int, int]) -> dict[int, int] | None:
    n = g.n
    adj = [tuple(g.neighbors(v)) for v in range(n)]
    color = [0] * n
    # seen[v][c]: number of colored neighbours of v with color c
    seen = [[0] * (k + 1) for _ in range(n)]
    sat = [0] * n
    degree = [len(a) for a in adj]

    def assign(v: int, c: int) -> None:
        color[v] = c
        for w in adj[v]:
            row = seen[w]
            if row[c] == 0:
                sat[w] += 1
            row[c] += 1

    def unassign(v: int) -> None:
        c = color[v]
        color[v] = 0
        for w in adj[v]:
            row = seen[w]
            row[c] -= 1
            if row[c] == 0:
                sat[w] -= 1

    for v, c in fixed.items():
        assign(v, c)
    uncolored = [v for v in range(n) if color[v] == 0]

    def pick() -> int:
        best = -1
        key = None
        for v in uncolored:
            if color[v]:
                continue
            kv = (sat[v], degree[v], -v)
            if key is None or kv > key:
                key, best = kv, v
        return best

    remaining = len(uncolored)
    # highest color used so far; new colors are opened in order to break symmetry
    # (only sound when nothing was fixed in advance)
    symmetric = not fixed

    def rec(left: int, top: int) -> bool:
        if left == 0:
            return True
        v = pick()
        if sat[v] >= k:
            return False
        row = seen[v]
        limit = min(k, top + 1) if symmetric else k
        for c in range(1, limit + 1):
            if row[c]:
                continue
            assign(v, c)
            if rec(left - 1, max(top, c)):
                return True
            unassign(v)
        return False

    if rec(remaining, 0):
        return {v: color[v] for v in range(n)}
    return None


def color(g: SimpleGraph, k: int) -> Coloring | None:
    """A proper coloring with at most ``k`` colors, or ``None`` if none exists."""
    if k < 0:
        raise ColoringError("k must be non-negative")
    if g.n == 0:
        return Coloring({}, k)
    if k == 0:
        return None
    if len(_greedy_clique(g)) > k:
        return None
    result = _solve(g, k, {})
    return Coloring(result, k) if result is not None else None


def is_colorable(g: SimpleGraph, k: int) -> bool:
    return color(g, k) is not None


def extend_precoloring(g: SimpleGraph, partial: Coloring) -> Coloring | None:
    """Extend a proper partial coloring to a total one with the same ``k``."""
    for v in partial.assignment:
        if not 0 <= v < g.n:
            raise ColoringError(f"precolored vertex {v} out of range")
    if not partial.is_proper(g):
        raise ColoringError("partial coloring is not proper")
    result = _solve(g, partial.k, partial.assignment)
    return Coloring(result, partial.k) if result is not None else None


def is_k_critical(g: SimpleGraph, k: int) -> bool:
    """True iff ``g`` is not (k-1)-colorable but every ``g - e`` is.

    For a graph without isolated vertices, deleting a vertex removes at least
    one edge, so edge-criticality covers every proper subgraph. Isolated
    vertices are rejected (a critical graph with k >= 2 has none).
    """
    if k < 1:
        raise ColoringError("k must be positive")
    if g.n == 0:
        return False
    if k == 1:
        return g.n == 1 and g.m == 0
    if any(g.degree(v) == 0 for v in range(g.n)):
        return False
    if is_colorable(g, k - 1):
        return False
    return all(is_colorable(g.remove_edge(u, v), k - 1) for u, v in g.sorted_edges())


def chromatic_number(g: SimpleGraph) -> int:
    k = 0
    while not is_colorable(g, k):
        k += 1
    return k


def parse_coloring(text: str, k: int, source: str | None = None) -> Coloring:
    """Read ``v c`` lines; color 0 leaves ``v`` uncolored. Comments and blank lines are ignored."""
    assignment: dict[int, int] = {}
    for lineno, line in _content_lines(text):
        v, c = _ints(line, lineno, 2, source)
        if v < 0:
            raise ParseError(f"negative vertex {v}", lineno, source)
        if v in assignment:
            raise ParseError(f"vertex {v} listed twice", lineno, source)
        if not 0 <= c <= k:
            raise ParseError(f"color {c} outside 0..{k}", lineno, source)
        if c:
            assignment[v] = c
    return Coloring(assignment, k)


def format_coloring(c: Coloring) -> str:
    return "".join(f"{v} {col}\n" for v, col in sorted(c.assignment.items()))

def classify_cycle_extension(inst, boundary: Coloring):
    """Extend a 5-coloring of a disk's outer cycle of length <= 7, or name why it cannot extend.

    Thin entry point; the work lives in :mod:`klein5.disk`.
    """
    from .disk import classify_cycle_extension as classify

    return classify(inst, boundary)
