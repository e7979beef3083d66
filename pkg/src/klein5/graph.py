"""Simple undirected graphs on vertices ``0..n-1`` and the text format used for them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Malformed graph input or a violated operation precondition."""


class ParseError(GraphError):
    """A file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable simple graph. Edges are stored as sorted pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(self.n)]
        normalized = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            normalized.add(_edge(u, v))
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        """Build a graph, rejecting loops and repeated pairs."""
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = _edge(u, v)
            if e in seen:
                raise GraphError(f"parallel edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.sorted_edges())

    # -- derived graphs -------------------------------------------------

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges | {_edge(u, v) for u, v in extra})

    def remove_edge(self, u: int, v: int) -> "SimpleGraph":
        e = _edge(u, v)
        if e not in self.edges:
            raise GraphError(f"no edge {e}")
        return SimpleGraph(self.n, self.edges - {e})

    def induced(self, keep: Iterable[int]) -> tuple["SimpleGraph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns the old labels in order."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        edges = {(index[u], index[v]) for u, v in self.edges if u in index and v in index}
        return SimpleGraph(len(order), frozenset(edges)), order

    def remove_vertices(self, drop: Iterable[int]) -> tuple["SimpleGraph", list[int]]:
        dropped = set(drop)
        return self.induced(v for v in range(self.n) if v not in dropped)

    def relabel(self, perm: list[int]) -> "SimpleGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``; ``perm`` must be a permutation."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        return SimpleGraph(self.n, frozenset(_edge(perm[u], perm[v]) for u, v in self.edges))

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(
            self.n,
            frozenset(e for e in combinations(range(self.n), 2) if e not in self.edges),
        )

    # -- structure ------------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __str__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"


# -- constructors -------------------------------------------------------


def empty(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset())


def complete(n: int) -> SimpleGraph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return SimpleGraph(n, frozenset(combinations(range(n), 2)))


def path(n: int) -> SimpleGraph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return SimpleGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return SimpleGraph(n, frozenset(_edge(i, (i + 1) % n) for i in range(n)))


def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    shift = g.n
    edges = set(g.edges) | {(u + shift, v + shift) for u, v in h.edges}
    return SimpleGraph(g.n + h.n, frozenset(edges))


def join(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """``g + h``: disjoint union plus every edge between the two parts."""
    union = disjoint_union(g, h)
    cross = {(u, g.n + v) for u in range(g.n) for v in range(h.n)}
    return SimpleGraph(union.n, union.edges | cross)


def join_decomposition(g: SimpleGraph) -> tuple[SimpleGraph, SimpleGraph] | None:
    """Split ``g`` as ``A + B`` when its complement is disconnected.

    ``A`` is induced by the complement component containing vertex 0 and ``B``
    by all remaining vertices; both are relabelled in increasing order.
    """
    if g.n < 2:
        return None
    comps = g.complement().components()
    if len(comps) < 2:
        return None
    first = comps[0]
    a, _ = g.induced(first)
    b, _ = g.remove_vertices(first)
    return a, b


def identify_pair(g: SimpleGraph, v0: int, v1: int, v2: int) -> tuple[SimpleGraph, list[int]]:
    """Contract ``v0v1`` and ``v0v2`` into one vertex, dropping the other edges at ``v0``.

    ``v1`` and ``v2`` must be non-adjacent neighbours of ``v0``. The merged vertex
    takes the smallest index of the result; the remaining vertices keep their
    relative order. Returns ``(graph, origin)`` where ``origin[i]`` is the old
    vertex behind new vertex ``i`` (``-1`` for the merged vertex).
    """
    for v in (v0, v1, v2):
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    if len({v0, v1, v2}) != 3:
        raise GraphError("v0, v1, v2 must be distinct")
    if not g.has_edge(v0, v1) or not g.has_edge(v0, v2):
        raise GraphError("v1 and v2 must both be neighbours of v0")
    if g.has_edge(v1, v2):
        raise GraphError("v1 and v2 must be non-adjacent")
    merged = {v0, v1, v2}
    rest = [v for v in range(g.n) if v not in merged]
    index = {v: i + 1 for i, v in enumerate(rest)}
    edges = set()
    for u, v in g.edges:
        if u in merged and v in merged:
            continue
        if u == v0 or v == v0:
            continue
        a = 0 if u in merged else index[u]
        b = 0 if v in merged else index[v]
        edges.add(_edge(a, b))
    return SimpleGraph(len(rest) + 1, frozenset(edges)), [-1] + rest


def lift_identified_coloring(
    g: SimpleGraph, v0: int, v1: int, v2: int, origin: list[int], coloring: dict[int, int], k: int = 5
) -> dict[int, int] | None:
    """Pull a coloring of ``identify_pair(g, v0, v1, v2)`` back to ``g``.

    ``v1`` and ``v2`` take the merged vertex's color; ``v0`` is colored last.
    Returns ``None`` only if ``v0`` sees all ``k`` colors, which cannot happen
    when ``deg(v0) <= k``.
    """
    lifted = {}
    for new, old in enumerate(origin):
        if old == -1:
            lifted[v1] = lifted[v2] = coloring[new]
        else:
            lifted[old] = coloring[new]
    used = {lifted[w] for w in g.neighbors(v0)}
    free = [c for c in range(1, k + 1) if c not in used]
    if not free:
        return None
    lifted[v0] = free[0]
    return lifted


# -- text format ---------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(line: str, lineno: int, count: int, source: str | None) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {line!r}", lineno, source)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer token in {line!r}", lineno, source) from None


def parse_graph_lines(
    lines: list[tuple[int, str]], source: str | None = None
) -> tuple[SimpleGraph, list[tuple[int, int]], int]:
    """Parse a graph block from pre-stripped ``(lineno, text)`` pairs.

    Returns the graph, the edges in file order and the number of lines consumed.
    """
    if not lines:
        raise ParseError("empty graph file", None, source)
    lineno, header = lines[0]
    n, m = _ints(header, lineno, 2, source)
    if n < 0 or m < 0:
        raise ParseError("negative vertex or edge count", lineno, source)
    if len(lines) < m + 1:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", lines[-1][0], source)
    seen: set[tuple[int, int]] = set()
    order = []
    for lineno, line in lines[1 : m + 1]:
        u, v = _ints(line, lineno, 2, source)
        if not (0 <= u < v < n):
            raise ParseError(f"edge '{u} {v}' must satisfy 0 <= u < v < {n}", lineno, source)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge '{u} {v}'", lineno, source)
        seen.add((u, v))
        order.append((u, v))
    return SimpleGraph(n, frozenset(seen)), order, m + 1


def parse_graph(text: str, source: str | None = None) -> SimpleGraph:
    lines = list(_content_lines(text))
    g, _, used = parse_graph_lines(lines, source)
    if used != len(lines):
        raise ParseError("trailing content after edge list", lines[used][0], source)
    return g


def format_graph(g: SimpleGraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def load_graph(path: str | Path) -> SimpleGraph:
    p = Path(path)
    return parse_graph(p.read_text(), str(p))


def save_graph(g: SimpleGraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment))
