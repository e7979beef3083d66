"""Decide 5-colorability of graphs drawn in the Klein bottle or the torus.

A graph in the Klein bottle is 5-colorable exactly when it has no subgraph
isomorphic to one of the nine catalog obstructions (four for the torus).
:func:`decide_five_colorable` scans the catalog patterns and, unless asked to
be fast, runs the exact solver as an independent check. When the solver
fails but no pattern matches, the input cannot lie in the claimed surface,
and the verdict says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .coloring import Coloring, color
from .embedding import EmbeddingScheme, euler_genus, is_eulerian, is_orientable, is_triangulation
from .graph import GraphError, SimpleGraph
from .iso import VertexMapping, subgraph_isomorphism
from .obstructions import SURFACES, CatalogEntry, load_catalog


class DecisionError(GraphError):
    """Internal inconsistency: a catalog pattern matched but the solver found a 5-coloring."""


class PreconditionError(GraphError):
    def __init__(self, failures: Sequence[str]):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


@dataclass(frozen=True)
class ObstructionWitness:
    name: str
    mapping: VertexMapping

    def validate(self, host: SimpleGraph, surface: str = "klein") -> bool:
        pattern = _pattern(self.name, surface)
        return pattern is not None and self.mapping.validate(pattern.graph, host)


@dataclass(frozen=True)
class Colorable:
    """A 5-colorable verdict. In fast mode the coloring is produced on demand by :meth:`materialize`."""

    coloring: Coloring | None
    graph: SimpleGraph | None = field(default=None, repr=False, compare=False)

    kind = "colorable"
    exit_code = 0

    def materialize(self) -> Coloring:
        if self.coloring is not None:
            return self.coloring
        if self.graph is None:
            raise DecisionError("no graph attached to build a coloring from")
        found = color(self.graph, 5)
        if found is None:
            raise DecisionError("no obstruction matched but the graph is not 5-colorable")
        return found


@dataclass(frozen=True)
class Obstructed:
    witness: ObstructionWitness

    kind = "obstructed"
    exit_code = 1


@dataclass(frozen=True)
class NotEmbeddable:
    explanation: str

    kind = "not-embeddable"
    exit_code = 3


Verdict = Union[Colorable, Obstructed, NotEmbeddable]


def _pattern(name: str, surface: str) -> CatalogEntry | None:
    for e in load_catalog(surface):
        if e.name == name:
            return e
    return None


def scan_order(surface: str = "klein") -> list[CatalogEntry]:
    """Catalog patterns by ascending size (vertices, then edges); ties keep catalog order."""
    entries = load_catalog(surface)
    return sorted(entries, key=lambda e: (e.graph.n, e.graph.m))


def find_obstruction(g: SimpleGraph, surface: str = "klein") -> ObstructionWitness | None:
    """First catalog pattern contained in ``g``, in scan order."""
    for entry in scan_order(surface):
        if entry.graph.n > g.n or entry.graph.m > g.m:
            continue
        mapping = subgraph_isomorphism(entry.graph, g)
        if mapping is not None:
            return ObstructionWitness(entry.name, mapping)
    return None


def embeds_in_surface(s: EmbeddingScheme, surface: str) -> bool:
    """Whether the scheme's surface lies inside ``surface`` (so the graph is drawable there)."""
    gamma = euler_genus(s)
    if surface == "klein":
        return gamma <= 1 or (gamma == 2 and not is_orientable(s))
    if surface == "torus":
        return gamma == 0 or (gamma == 2 and is_orientable(s))
    raise GraphError(f"unknown surface {surface!r}")


def decide_five_colorable(
    g: SimpleGraph,
    surface: str = "klein",
    fast: bool = False,
    scheme: EmbeddingScheme | None = None,
) -> Verdict:
    """Obstruction scan plus solver cross-check.

    ``scheme`` optionally certifies that ``g`` lies in ``surface``; it is
    checked, not trusted. With ``fast`` the solver is skipped and a colorable
    verdict carries no coloring until :meth:`Colorable.materialize` is called.
    """
    if surface not in SURFACES:
        raise GraphError(f"unknown surface {surface!r}; expected klein or torus")
    if scheme is not None:
        if scheme.graph != g:
            raise PreconditionError(["embedding is for a different graph"])
        if not embeds_in_surface(scheme, surface):
            raise PreconditionError([f"embedding does not lie in the {surface}"])
    witness = find_obstruction(g, surface)
    if fast:
        if witness is not None:
            return Obstructed(witness)
        return Colorable(None, g)
    coloring = color(g, 5)
    if witness is not None:
        if coloring is not None:
            raise DecisionError(
                f"pattern {witness.name} matched at {witness.mapping.format()} "
                f"but the solver found a 5-coloring {coloring.format()}"
            )
        return Obstructed(witness)
    if coloring is not None:
        return Colorable(coloring, g)
    where = "the Klein bottle" if surface == "klein" else "the torus"
    return NotEmbeddable(
        f"not 5-colorable yet contains none of the {surface} obstructions, "
        f"so it cannot be drawn in {where}"
    )


def decide_eulerian_triangulation(s: EmbeddingScheme) -> Verdict:
    """K6-only scan for an Eulerian triangulation of the Klein bottle.

    The surface must be nonorientable: the torus has 6-regular
    triangulations without K6 that still need six colors (T11).
    """
    failures = []
    if not is_triangulation(s):
        failures.append("not a triangulation")
    if not is_eulerian(s.graph):
        failures.append("some vertex has odd degree")
    try:
        gamma = euler_genus(s)
    except GraphError as exc:
        failures.append(str(exc))
    else:
        if gamma != 2:
            failures.append(f"Euler genus is {gamma}, not 2")
        elif is_orientable(s):
            failures.append("surface is the torus, not the Klein bottle")
    if failures:
        raise PreconditionError(failures)
    k6 = _pattern("K6", "klein")
    assert k6 is not None
    mapping = subgraph_isomorphism(k6.graph, s.graph)
    if mapping is not None:
        return Obstructed(ObstructionWitness("K6", mapping))
    coloring = color(s.graph, 5)
    if coloring is None:
        raise DecisionError("Eulerian Klein triangulation without K6 is not 5-colorable")
    return Colorable(coloring, s.graph)
