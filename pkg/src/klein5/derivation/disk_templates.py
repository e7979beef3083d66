"""Derive the 7-cycle obstruction templates used by :mod:`klein5.disk`.

Only the colors an interior vertex sees on the outer cycle matter for
extending a boundary coloring, so a disk instance reduces to a
*configuration*: a graph on the interior vertices plus, for each of them,
the set of boundary colors it sees. The coloring fails to extend exactly when
this list-coloring problem (lists = colors not seen) has no solution.

The oracle

1. enumerates every minimal non-colorable configuration with at most
   ``rmax`` interior vertices (removing any interior edge or any seen color
   makes it colorable),
2. discards the shapes covered by the first three cases (an adjacent pair
   seeing the same four colors, a triangle seeing the same three),
3. for every proper coloring of a cycle of length 4..7 (up to renaming
   colors), tries every way of realizing the remaining configurations by
   edges to boundary vertices of the right colors, keeping those with a plane
   drawing inside the cycle.

What survives must sit on a 7-cycle whose coloring has two coincident pairs
of one of the shapes ``{x5, x2|x3} + {x4, x6|x7}`` or ``{x2, x6} + {x3, x7}``;
anything else is reported as an error. Survivors are renumbered into those
shapes and written one per line.

Run ``python -m klein5.derivation.disk_templates`` to print the templates,
``--write`` to store them in the package data, ``--check`` to compare.
"""

from __future__ import annotations

import argparse
import sys
from itertools import combinations, permutations, product

from ..disk import Template, is_disk_planar, templates_path
from ..graph import SimpleGraph

IV_PATTERNS = tuple(
    frozenset((frozenset((5, a)), frozenset((4, b)))) for a in (2, 3) for b in (6, 7)
)
VVI_PATTERN = frozenset((frozenset((2, 6)), frozenset((3, 7))))


class TemplateDerivationError(RuntimeError):
    pass


def _list_colorable(r: int, adj: list[set[int]], lists: list[frozenset[int]]) -> bool:
    order = sorted(range(r), key=lambda v: len(lists[v]))
    color = [-1] * r

    def rec(i: int) -> bool:
        if i == r:
            return True
        v = order[i]
        for c in lists[v]:
            if all(color[w] != c for w in adj[v]):
                color[v] = c
                if rec(i + 1):
                    return True
        color[v] = -1
        return False

    return rec(0)


def _connected(r: int, edges: tuple[tuple[int, int], ...]) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return len(seen) == r


def _graphs(r: int) -> list[tuple[tuple[int, int], ...]]:
    """Connected graphs on ``0..r-1``, one per isomorphism class."""
    pairs = list(combinations(range(r), 2))
    out = {}
    for mask in range(1 << len(pairs)):
        edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        if r > 1 and not _connected(r, edges):
            continue
        key = min(
            tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
            for perm in permutations(range(r))
        )
        out.setdefault(key, key)
    return sorted(out)


Config = tuple[tuple[frozenset[int], ...], tuple[tuple[int, int], ...]]


def _canonical(seen: tuple[frozenset[int], ...], edges: tuple[tuple[int, int], ...]) -> tuple:
    r = len(seen)
    best = None
    for perm in permutations(range(r)):
        inv = [0] * r
        for i, p in enumerate(perm):
            inv[p] = i
        s = tuple(tuple(sorted(seen[inv[i]])) for i in range(r))
        e = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        key = (s, e)
        if best is None or key < best:
            best = key
    return best


def minimal_configurations(q: int = 5, rmax: int = 4) -> list[Config]:
    """Minimal non-colorable configurations whose seen colors lie in ``0..q-1``."""
    colors = range(5)
    found: dict[tuple, Config] = {}
    for r in range(1, rmax + 1):
        for edges in _graphs(r):
            adj = [set() for _ in range(r)]
            for a, b in edges:
                adj[a].add(b)
                adj[b].add(a)
            options = []
            for v in range(r):
                lo = max(0, 5 - len(adj[v]))
                opts = [
                    frozenset(s)
                    for size in range(lo, min(4, q) + 1)
                    for s in combinations(range(q), size)
                ]
                options.append(opts)
            for seen in product(*options):
                lists = [frozenset(colors) - s for s in seen]
                if _list_colorable(r, adj, lists):
                    continue
                if not _is_minimal(r, edges, seen):
                    continue
                key = _canonical(seen, edges)
                found.setdefault(key, (tuple(seen), edges))
    return [found[k] for k in sorted(found)]


def _is_minimal(r: int, edges, seen) -> bool:
    colors = frozenset(range(5))
    for drop in edges:
        adj = [set() for _ in range(r)]
        for a, b in edges:
            if (a, b) != drop:
                adj[a].add(b)
                adj[b].add(a)
        if not _list_colorable(r, adj, [colors - s for s in seen]):
            return False
    adj = [set() for _ in range(r)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for v in range(r):
        for c in seen[v]:
            lists = [colors - s for s in seen]
            lists[v] = lists[v] | {c}
            if not _list_colorable(r, adj, lists):
                return False
    return True


def covered_by_basic_cases(cfg: Config) -> bool:
    seen, edges = cfg
    r = len(seen)
    if r == 2 and len(edges) == 1 and len(seen[0]) == 4 and seen[0] == seen[1]:
        return True
    if r == 3 and len(edges) == 3 and len(seen[0]) == 3 and seen[0] == seen[1] == seen[2]:
        return True
    return False


def _rename(coloring: tuple[int, ...]) -> tuple[int, ...]:
    names: dict[int, int] = {}
    return tuple(names.setdefault(c, len(names)) for c in coloring)


def cycle_colorings(k: int, up_to_symmetry: bool = False) -> list[tuple[int, ...]]:
    """Proper colorings of C_k with at most five colors, colors named by first appearance.

    With ``up_to_symmetry`` only one coloring per orbit under rotations and
    reflections of the cycle is kept.
    """
    if up_to_symmetry:
        reps = {}
        for col in cycle_colorings(k):
            images = []
            for seq in (col, col[::-1]):
                for r in range(k):
                    images.append(_rename(seq[r:] + seq[:r]))
            reps.setdefault(min(images), min(images))
        return sorted(reps)
    out = []

    def rec(prefix: tuple[int, ...], top: int) -> None:
        if len(prefix) == k:
            if prefix[-1] != prefix[0]:
                out.append(prefix)
            return
        for c in range(min(top + 1, 4) + 1):
            if prefix and c == prefix[-1]:
                continue
            rec(prefix + (c,), max(top, c))

    rec((0,), 0)
    return out


def realizations(cfg: Config, coloring: tuple[int, ...]):
    """Plane realizations of ``cfg`` on the colored cycle: one boundary neighbour per seen color."""
    seen, edges = cfg
    k = len(coloring)
    r = len(seen)
    positions = {c: [i for i in range(k) if coloring[i] == c] for c in set(coloring)}
    if any(c not in positions for s in seen for c in s):
        return
    # Euler bound for the graph with an apex over the cycle: E <= 3V - 6
    if 2 * k + sum(len(s) for s in seen) + len(edges) > 3 * (k + r + 1) - 6:
        return
    choices = []
    for s in seen:
        per_color = [positions[c] for c in sorted(s)]
        choices.append([frozenset(p) for p in product(*per_color)])
    for nbrs in product(*choices):
        if not _regions_ok(nbrs, edges, k):
            continue
        g_edges = {(i, (i + 1) % k) if i < (i + 1) % k else ((i + 1) % k, i) for i in range(k)}
        for v, ns in enumerate(nbrs):
            for p in ns:
                g_edges.add((p, k + v))
        for a, b in edges:
            g_edges.add((k + a, k + b))
        g = SimpleGraph(k + r, frozenset(g_edges))
        if is_disk_planar(g, list(range(k))):
            yield nbrs


def _gaps(spokes: list[int], targets: frozenset[int], k: int) -> set[int]:
    """Indices i such that ``targets`` lies on the closed arc from spokes[i] to spokes[i+1]."""
    out = set()
    m = len(spokes)
    for i in range(m):
        a, b = spokes[i], spokes[(i + 1) % m]
        span = (b - a) % k or k
        if all((t - a) % k <= span for t in targets):
            out.add(i)
    return out


def _regions_ok(nbrs, edges, k: int) -> bool:
    """Necessary condition for a plane drawing inside the cycle.

    The spokes of an interior vertex ``u`` cut the disk into regions, one per
    gap between consecutive boundary neighbours. Every connected group of the
    other interior vertices lies in a single region, so all its boundary
    neighbours sit on that region's arc.
    """
    r = len(nbrs)
    for u in range(r):
        spokes = sorted(nbrs[u])
        if len(spokes) < 2:
            continue
        rest = [w for w in range(r) if w != u]
        # components of the interior graph without u
        comp = {w: w for w in rest}

        def find(x: int) -> int:
            while comp[x] != x:
                x = comp[x]
            return x

        for a, b in edges:
            if u not in (a, b):
                comp[find(a)] = find(b)
        groups: dict[int, set[int]] = {}
        for w in rest:
            groups.setdefault(find(w), set()).add(w)
        for members in groups.values():
            targets = frozenset().union(*(nbrs[w] for w in members))
            if not _gaps(spokes, targets, k):
                return False
    return True


def _dihedral(k: int):
    for flip in (False, True):
        for shift in range(k):
            # position p (1-based) goes to sigma(p)
            if flip:
                yield lambda p, s=shift: ((s - (p - 1)) % k) + 1
            else:
                yield lambda p, s=shift: ((p - 1 + s) % k) + 1


def _pattern(coloring: tuple[int, ...]) -> frozenset[frozenset[int]]:
    k = len(coloring)
    return frozenset(
        frozenset((i + 1, j + 1)) for i, j in combinations(range(k), 2) if coloring[i] == coloring[j]
    )


def _template_key(t: Template) -> tuple:
    r = t.r
    best = None
    for perm in permutations(range(r)):
        inv = [0] * r
        for i, p in enumerate(perm):
            inv[p] = i
        nb = tuple(tuple(sorted(t.cycle_neighbors[inv[i]])) for i in range(r))
        ed = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in t.interior_edges))
        key = (nb, ed)
        if best is None or key < best:
            best = key
    return (t.case, tuple(sorted(tuple(sorted(p)) for p in t.pairs)), best)


def _canonical_template(t: Template) -> Template:
    _, _, (nb, ed) = _template_key(t)
    return Template(t.case, t.pairs, tuple(frozenset(x) for x in nb), frozenset(ed))


def case_of(pairs: frozenset[frozenset[int]], nbrs, edges) -> str:
    """Case label; the two four-vertex shapes are told apart by how the four-spoke vertex attaches.

    ``v``: the vertex with four boundary neighbours has one interior neighbour;
    ``vi``: it has two or more.
    """
    if pairs in IV_PATTERNS:
        return "iv"
    hub = max(range(len(nbrs)), key=lambda i: len(nbrs[i]))
    degree = sum(1 for e in edges if hub in e)
    return "v" if degree == 1 else "vi"


def derive_templates(rmax: int = 4, lengths=range(4, 8)) -> list[Template]:
    configs = [c for c in minimal_configurations(5, rmax) if not covered_by_basic_cases(c)]
    found: dict[tuple, Template] = {}
    for k in lengths:
        for coloring in cycle_colorings(k, up_to_symmetry=True):
            for cfg in configs:
                for nbrs in realizations(cfg, coloring):
                    pattern = _pattern(coloring)
                    placed = None
                    for sigma in _dihedral(k):
                        moved = frozenset(frozenset(sigma(p) for p in pair) for pair in pattern)
                        if k == 7 and (moved in IV_PATTERNS or moved == VVI_PATTERN):
                            placed = (moved, tuple(frozenset(sigma(p + 1) for p in ns) for ns in nbrs))
                            break
                    if placed is None:
                        raise TemplateDerivationError(
                            f"non-extendable configuration on a {k}-cycle colored {coloring} "
                            f"outside the expected patterns: {cfg}"
                        )
                    moved, nb = placed
                    t = Template(case_of(moved, nb, cfg[1]), moved, nb, frozenset(cfg[1]))
                    t = _canonical_template(t)
                    found.setdefault(_template_key(t), t)
    return [found[k] for k in sorted(found)]


def render(templates: list[Template]) -> str:
    lines = [
        "# Obstruction templates for 7-cycle precoloring extension.",
        "# case | coincident boundary positions | interior vertex: boundary neighbours | interior edges",
        "# generated by klein5.derivation.disk_templates",
    ]
    lines.extend(t.format() for t in templates)
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="python -m klein5.derivation.disk_templates")
    ap.add_argument("--rmax", type=int, default=4, help="largest number of interior vertices")
    ap.add_argument("--write", action="store_true")
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    text = render(derive_templates(args.rmax))
    path = templates_path()
    if args.check:
        same = path.is_file() and path.read_text() == text
        print(f"checked: {path} {'matches' if same else 'differs'}")
        return 0 if same else 1
    if args.write:
        path.write_text(text)
        print(f"wrote: {path}")
        return 0
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
