"""Command-line interface: ``klein5 <command> ...``.

Reports are ``key: value`` lines on standard output. Exit codes: 0 colorable
or success, 1 not colorable or obstructed, 2 usage or data error, 3 the input
is not 5-colorable yet has no catalog obstruction (so it cannot lie in the
claimed surface).
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Callable, Sequence, TextIO

from . import __version__
from .coloring import Coloring, color, extend_precoloring, is_k_critical, parse_coloring
from .decide import Colorable, NotEmbeddable, Obstructed, decide_five_colorable
from .disk import DiskInstance, classify_cycle_extension
from .embedding import (
    EmbeddingScheme,
    euler_genus,
    face_count,
    format_scheme,
    is_orientable,
    load_scheme,
    surface_name,
    trace_faces,
)
from .generator import random_instance
from .graph import GraphError, SimpleGraph, format_graph, load_graph, save_graph
from .obstructions import KLEIN_NAMES, TORUS_NAMES, SURFACES, load_catalog, verify_catalog

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_NOT_EMBEDDABLE = 3


class UsageError(GraphError):
    pass


def _emit(out: TextIO, key: str, value: object) -> None:
    out.write(f"{key}: {value}\n")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{what} expects comma-separated integers, got {text!r}") from None


def _multiset(counts: Counter) -> str:
    return " ".join(f"{length}^{counts[length]}" for length in sorted(counts))


# -- commands ---------------------------------------------------------------------


def cmd_decide(args: argparse.Namespace, out: TextIO) -> int:
    g = load_graph(args.file)
    scheme = load_scheme(args.embedding) if args.embedding else None
    verdict = decide_five_colorable(g, args.surface, fast=args.fast, scheme=scheme)
    _emit(out, "surface", args.surface)
    _emit(out, "vertices", g.n)
    _emit(out, "edges", g.m)
    _emit(out, "verdict", verdict.kind)
    if isinstance(verdict, Obstructed):
        _emit(out, "obstruction", verdict.witness.name)
        _emit(out, "mapping", verdict.witness.mapping.format())
    elif isinstance(verdict, Colorable):
        _emit(out, "coloring", verdict.materialize().format())
    elif isinstance(verdict, NotEmbeddable):
        _emit(out, "explanation", verdict.explanation)
    return verdict.exit_code


def cmd_color(args: argparse.Namespace, out: TextIO) -> int:
    g = load_graph(args.file)
    c = color(g, args.k)
    _emit(out, "k", args.k)
    _emit(out, "colorable", _yes(c is not None))
    if c is not None:
        _emit(out, "coloring", c.format())
        return EXIT_OK
    return EXIT_NO


def cmd_critical(args: argparse.Namespace, out: TextIO) -> int:
    g = load_graph(args.file)
    crit = is_k_critical(g, args.k)
    _emit(out, "k", args.k)
    _emit(out, "critical", _yes(crit))
    return EXIT_OK if crit else EXIT_NO


def cmd_catalog(args: argparse.Namespace, out: TextIO) -> int:
    surface = args.surface
    if args.action == "list":
        for e in load_catalog(surface, verify=False):
            _emit(out, e.name, f"vertices={e.graph.n} edges={e.graph.m} embeddings={len(e.embeddings)}")
        return EXIT_OK
    if args.action == "verify":
        entries = load_catalog(surface, verify=False)
        report = verify_catalog(entries, surface)
        for e in entries:
            rows = report.results.get(e.name, [])
            bad = [c for c, ok, _ in rows if not ok]
            _emit(out, e.name, "ok" if not bad else "FAILED " + ",".join(bad))
        _emit(out, "entries", len(entries))
        _emit(out, "verified", _yes(report.ok))
        return EXIT_OK if report.ok else EXIT_ERROR
    # export
    if not args.name:
        raise UsageError("catalog export needs a NAME")
    names = KLEIN_NAMES if surface == "klein" else TORUS_NAMES
    if args.name not in names:
        raise UsageError(f"no {surface} catalog entry named {args.name!r}; choose from {', '.join(names)}")
    entry = next(e for e in load_catalog(surface) if e.name == args.name)
    if args.embedding:
        if not entry.embeddings:
            raise UsageError(f"{args.name} has no embedding attached")
        text = format_scheme(entry.embeddings[0], f"{args.name} ({surface})")
    else:
        text = format_graph(entry.graph, f"{args.name} ({surface} obstruction)")
    if args.out:
        Path(args.out).write_text(text)
        _emit(out, "wrote", args.out)
    else:
        out.write(text)
    return EXIT_OK


def _describe_scheme(s: EmbeddingScheme, out: TextIO, list_faces: bool = True) -> None:
    walks = trace_faces(s)
    _emit(out, "vertices", s.n)
    _emit(out, "edges", s.m)
    _emit(out, "faces", face_count(s))
    _emit(out, "euler-genus", euler_genus(s))
    _emit(out, "orientable", _yes(is_orientable(s)))
    _emit(out, "surface", surface_name(s))
    _emit(out, "face-lengths", _multiset(Counter(len(w) for w in walks)))
    if list_faces:
        for w in walks:
            _emit(out, "face", w.format())


def cmd_faces(args: argparse.Namespace, out: TextIO) -> int:
    _describe_scheme(load_scheme(args.file), out)
    return EXIT_OK


def cmd_extend(args: argparse.Namespace, out: TextIO) -> int:
    g = load_graph(args.file)
    outer = _int_list(args.outer, "outer")
    if args.colors_file:
        given = parse_coloring(Path(args.colors_file).read_text(), 5, args.colors_file).assignment
        missing = [v for v in outer if v not in given]
        if missing:
            raise UsageError(f"no color given for outer vertices {missing}")
        colors = {v: given[v] for v in outer}
    else:
        if args.colors is None:
            raise UsageError("give --colors or --colors-file")
        values = _int_list(args.colors, "colors")
        if len(values) != len(outer):
            raise UsageError(f"--outer lists {len(outer)} vertices but --colors gives {len(values)} colors")
        colors = dict(zip(outer, values))
    inst = DiskInstance(g, tuple(outer))
    verdict = classify_cycle_extension(inst, Coloring(colors, 5))
    _emit(out, "cycle-length", inst.k)
    _emit(out, "extendable", _yes(verdict.extendable))
    if verdict.extendable:
        assert verdict.coloring is not None
        _emit(out, "coloring", verdict.coloring.format())
        return EXIT_OK
    _emit(out, "case", verdict.case)
    _emit(out, "witness", " ".join(map(str, verdict.witness)))
    if verdict.numbering:
        _emit(out, "numbering", " ".join(map(str, verdict.numbering)))
    return EXIT_NO


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    g, s = random_instance(args.seed, args.steps, args.max_vertices)
    prefix = Path(args.out)
    if prefix.parent and not prefix.parent.exists():
        raise UsageError(f"directory {prefix.parent} does not exist")
    gpath = prefix.with_name(prefix.name + ".graph")
    epath = prefix.with_name(prefix.name + ".emb")
    note = f"random instance seed={args.seed} steps={args.steps}"
    save_graph(g, gpath, note)
    epath.write_text(format_scheme(s, note))
    _emit(out, "graph", gpath)
    _emit(out, "embedding", epath)
    _describe_scheme(s, out, list_faces=False)
    return EXIT_OK


# -- parser table ------------------------------------------------------------------


def _setup_decide(p: argparse.ArgumentParser) -> None:
    p.add_argument("--surface", choices=SURFACES, default="klein")
    p.add_argument("--fast", action="store_true", help="skip the solver cross-check")
    p.add_argument("--embedding", metavar="EMBFILE", help="embedding certificate to check first")
    p.add_argument("file", metavar="FILE")


def _setup_k(p: argparse.ArgumentParser) -> None:
    p.add_argument("-k", type=int, required=True, help="number of colors")
    p.add_argument("file", metavar="FILE")


def _setup_catalog(p: argparse.ArgumentParser) -> None:
    p.add_argument("action", choices=("list", "verify", "export"))
    p.add_argument("name", nargs="?", metavar="NAME")
    p.add_argument("--surface", choices=SURFACES, default="klein")
    p.add_argument("--embedding", action="store_true", help="export the embedding instead of the graph")
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of standard output")


def _setup_faces(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", metavar="EMBFILE")


def _setup_extend(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", metavar="FILE")
    p.add_argument("--outer", required=True, help="outer cycle vertices in order, comma-separated")
    p.add_argument("--colors", help="colors 1..5 of the outer vertices, comma-separated")
    p.add_argument("--colors-file", metavar="PATH", help="file of 'v c' lines instead of --colors")


def _setup_gen(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PREFIX", help="writes PREFIX.graph and PREFIX.emb")
    p.add_argument("--max-vertices", type=int, default=14)


Command = tuple[str, str, Callable[[argparse.ArgumentParser], None], Callable[[argparse.Namespace, TextIO], int]]

COMMANDS: tuple[Command, ...] = (
    ("decide", "decide 5-colorability of a graph in the Klein bottle or torus", _setup_decide, cmd_decide),
    ("color", "find a k-coloring", _setup_k, cmd_color),
    ("critical", "test whether a graph is k-critical", _setup_k, cmd_critical),
    ("catalog", "list, verify or export the obstruction catalog", _setup_catalog, cmd_catalog),
    ("faces", "trace the faces of an embedding file", _setup_faces, cmd_faces),
    ("extend", "extend a 5-coloring of a disk's outer cycle (length <= 7)", _setup_extend, cmd_extend),
    ("gen", "write a random Klein-bottle instance", _setup_gen, cmd_gen),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klein5", description="5-colorability of graphs in the Klein bottle and the torus."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, help_text, setup, handler in COMMANDS:
        p = sub.add_parser(name, help=help_text, description=help_text)
        setup(p)
        p.set_defaults(handler=handler)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.handler(args, out)
    except (GraphError, OSError) as exc:
        err.write(f"klein5 {args.command}: error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
