"""File formats: plain edge lists, JSON records, DOT export.

Edge lists are one ``u v`` pair per line; blank lines and ``#`` comments
are ignored; the vertex count is one more than the largest id unless a
``# vertices: n`` header raises it.  JSON records are self-describing
and can carry a partition and named edge-set annotations.  DOT output is
write-only, for eyeballing gadgets.
"""

from __future__ import annotations

import json
from typing import IO, Iterable

from .errors import ParseError
from .graphs import Graph, norm_edge
from .partitions import Partition


def read_edge_list(stream: IO[str]) -> Graph:
    edges: list[tuple[int, int]] = []
    n = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)
        if len(line) == 2 and "vertices:" in line[1]:
            try:
                n = max(n, int(line[1].split("vertices:", 1)[1]))
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad vertices header") from exc
        text = line[0].strip()
        if not text:
            continue
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {text!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer vertex") from exc
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        edges.append((u, v))
        n = max(n, u + 1, v + 1)
    try:
        return Graph(n, edges)
    except Exception as exc:
        raise ParseError(str(exc)) from exc


def write_edge_list(g: Graph, stream: IO[str]) -> None:
    stream.write(f"# vertices: {g.n}\n")
    for u, v in sorted(g.edges):
        stream.write(f"{u} {v}\n")


def graph_to_record(
    g: Graph,
    partition: Partition | None = None,
    annotations: dict[str, Iterable[tuple[int, int]]] | None = None,
) -> dict:
    rec: dict = {
        "vertex_count": g.n,
        "edges": [list(e) for e in sorted(g.edges)],
    }
    if partition is not None:
        rec["partition"] = [sorted(p) for p in partition.parts]
    if annotations:
        rec["annotations"] = {
            name: [list(norm_edge(u, v)) for u, v in sorted(es)]
            for name, es in annotations.items()
        }
    return rec


def record_to_graph(rec: dict) -> tuple[Graph, Partition | None]:
    try:
        n = int(rec["vertex_count"])
        edges = [(int(u), int(v)) for u, v in rec["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed record: {exc}") from exc
    try:
        g = Graph(n, edges)
    except Exception as exc:
        raise ParseError(str(exc)) from exc
    part = None
    if "partition" in rec:
        part = Partition(tuple(frozenset(p) for p in rec["partition"]))
        covered = part.ground()
        if len(covered) != sum(len(p) for p in part.parts):
            raise ParseError("partition parts overlap")
    return g, part


def read_json(stream: IO[str]) -> tuple[Graph, Partition | None]:
    try:
        rec = json.load(stream)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    return record_to_graph(rec)


def write_json(
    g: Graph,
    stream: IO[str],
    partition: Partition | None = None,
    annotations: dict[str, Iterable[tuple[int, int]]] | None = None,
) -> None:
    json.dump(graph_to_record(g, partition, annotations), stream, indent=1)
    stream.write("\n")


def write_dot(
    g: Graph,
    stream: IO[str],
    highlight: Iterable[tuple[int, int]] = (),
    name: str = "G",
) -> None:
    """DOT export (write-only format)."""
    hot = {norm_edge(u, v) for u, v in highlight}
    stream.write(f"graph {name} {{\n")
    for v in range(g.n):
        stream.write(f"  {v};\n")
    for u, v in sorted(g.edges):
        attr = " [color=red]" if (u, v) in hot else ""
        stream.write(f"  {u} -- {v}{attr};\n")
    stream.write("}\n")
