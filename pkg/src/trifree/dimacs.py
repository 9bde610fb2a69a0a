"""DIMACS edge-format reading and writing (1-indexed on disk)."""

from __future__ import annotations

import io
from typing import TextIO

from .graph import Graph


class DimacsError(ValueError):
    pass


def parse_dimacs(text: str) -> Graph:
    n = None
    declared_m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: expected 'p edge N M'")
            n, declared_m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: expected 'e U V'")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop")
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise DimacsError("missing problem line")
    g = Graph.from_edges(n, edges)
    if g.m != declared_m:
        raise DimacsError(f"problem line declares {declared_m} edges, found {g.m} distinct")
    return g


def read_dimacs(source: str | TextIO) -> Graph:
    if isinstance(source, str):
        with open(source) as fh:
            return parse_dimacs(fh.read())
    return parse_dimacs(source.read())


def format_dimacs(g: Graph, comments: list[str] | None = None) -> str:
    buf = io.StringIO()
    for c in comments or []:
        buf.write(f"c {c}\n")
    buf.write(f"p edge {g.n} {g.m}\n")
    for u, v in g.edges():
        buf.write(f"e {u + 1} {v + 1}\n")
    return buf.getvalue()


def write_dimacs(g: Graph, path: str, comments: list[str] | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_dimacs(g, comments))
