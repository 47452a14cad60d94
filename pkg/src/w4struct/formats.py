"""Line-oriented graph text format.

::

    # comment lines start with '#'
    n m
    u v        (exactly m edge lines, one per parallel copy)

The writer emits canonical edge order and a trailing newline; the reader
accepts edges in any order and endpoints in either order.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path
from typing import TextIO

from .multigraph import GraphError, Multigraph

# far beyond what the exact engines handle; guards against absurd headers
MAX_VERTICES = 1_000_000
_INT = re.compile(r"[+-]?[0-9]+")


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(text: str, lineno: int, count: int) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise GraphFormatError(f"expected {count} integers, got {len(parts)}", lineno)
    # int() would also take '1_000' and non-ASCII digits
    if not all(_INT.fullmatch(p) for p in parts):
        raise GraphFormatError(f"not an integer in {text.strip()!r}", lineno)
    return [int(p) for p in parts]


def parse_graph(text: str) -> Multigraph:
    data = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        data.append((lineno, line))
    if not data:
        raise GraphFormatError("missing 'n m' header")
    lineno, header = data[0]
    n, m = _ints(header, lineno, 2)
    if n < 0 or m < 0:
        raise GraphFormatError("n and m must be non-negative", lineno)
    if n > MAX_VERTICES:
        raise GraphFormatError(f"n={n} exceeds the supported maximum {MAX_VERTICES}", lineno)
    body = data[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else None
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}", where)
    edges = []
    for lineno, line in body:
        u, v = _ints(line, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError("self-loops are not allowed", lineno)
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def format_graph(g: Multigraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path, stdin: TextIO | None = None) -> Multigraph:
    """Read a graph file; ``"-"`` reads standard input."""
    if str(path) == "-":
        return parse_graph((stdin or sys.stdin).read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"{path}: not valid UTF-8") from exc
    return parse_graph(text)


def write_graph(g: Multigraph, path: str | Path, stdout: TextIO | None = None) -> None:
    if str(path) == "-":
        (stdout or sys.stdout).write(format_graph(g))
    else:
        Path(path).write_text(format_graph(g), encoding="utf-8")
