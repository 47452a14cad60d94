"""Deterministic constructors for the graph families used throughout the package."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .multigraph import GraphError, Multigraph

# Bumped whenever random_multigraph's draw sequence changes.
RANDOM_MODEL_VERSION = 1


def path(n: int) -> Multigraph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Multigraph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def wheel(spokes: int) -> Multigraph:
    """Cycle on ``spokes`` rim vertices ``0..spokes-1`` plus hub ``spokes``."""
    if spokes < 3:
        raise GraphError("wheel needs at least 3 spokes")
    rim = [(i, (i + 1) % spokes) for i in range(spokes)]
    return Multigraph(spokes + 1, tuple(rim + [(i, spokes) for i in range(spokes)]))


def grid(r: int) -> Multigraph:
    """The r x r grid; vertex (i, j) has id ``i * r + j``."""
    if r < 1:
        raise GraphError("grid needs r >= 1")
    edges = []
    for i in range(r):
        for j in range(r):
            if j + 1 < r:
                edges.append((i * r + j, i * r + j + 1))
            if i + 1 < r:
                edges.append((i * r + j, (i + 1) * r + j))
    return Multigraph(r * r, tuple(edges))


def doubled_cycle(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("doubled cycle needs n >= 3")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n) for _ in range(2)))


@dataclass(frozen=True)
class Wall:
    graph: Multigraph
    coords: tuple[tuple[int, int], ...]  # 1-based (row, column) of each vertex id


def wall_with_coords(r: int) -> Wall:
    """Elementary wall of height ``r``.

    Rows ``i in 1..r+1`` and columns ``j in 1..2r+2``; ``(i, j)`` is joined to
    ``(i, j±1)`` and to ``(i + (-1)**(i+j), j)``.  Degree-1 vertices are then
    dropped and the ids compacted in row-major order.
    """
    if r < 2:
        raise GraphError("wall needs height r >= 2")
    rows, cols = r + 1, 2 * r + 2
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
    edges = set()
    for i, j in cells:
        if j < cols:
            edges.add(((i, j), (i, j + 1)))
        i2 = i + (-1) ** (i + j)
        if 1 <= i2 <= rows:
            edges.add(tuple(sorted([(i, j), (i2, j)])))
    degree = {c: 0 for c in cells}
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    kept = [c for c in cells if degree[c] != 1]
    ids = {c: k for k, c in enumerate(kept)}
    g = Multigraph(len(kept), tuple((ids[a], ids[b]) for a, b in edges if a in ids and b in ids))
    return Wall(g, tuple(kept))


def wall(r: int) -> Multigraph:
    return wall_with_coords(r).graph


def subdivided_wall(r: int, subdivision: Mapping[int, int] | int = 1) -> Multigraph:
    """Wall of height ``r`` with edge ``e`` replaced by a path of ``subdivision[e]`` edges.

    An integer applies the same length to every edge; missing keys mean 1.
    """
    base = wall(r)
    edges = []
    n = base.n
    for idx, (u, v) in enumerate(base.edges):
        length = subdivision if isinstance(subdivision, int) else subdivision.get(idx, 1)
        if length < 1:
            raise GraphError("subdivision lengths must be >= 1")
        chain = [u] + list(range(n, n + length - 1)) + [v]
        n += length - 1
        edges.extend(zip(chain, chain[1:]))
    return Multigraph(n, tuple(edges))


def random_multigraph(n: int, m: int, max_multiplicity: int, seed: int, connected: bool = False) -> Multigraph:
    """Seeded random loop-free multigraph.

    Draw sequence (version 1): ``random.Random(seed)``; each edge draws an
    unordered pair with ``rng.sample(range(n), 2)`` and is rejected if that
    pair is already at ``max_multiplicity``.  With ``connected=True`` the
    first ``n - 1`` edges form a random tree (vertex ``k`` joins
    ``rng.randrange(k)`` for ``k = 1..n-1``), and the remaining edges follow
    the rule above.
    """
    if n < 0 or m < 0 or max_multiplicity < 1:
        raise GraphError("n, m must be >= 0 and max_multiplicity >= 1")
    capacity = max_multiplicity * n * (n - 1) // 2
    if m > capacity:
        raise GraphError(f"m={m} exceeds the {capacity} edges admissible without loops")
    if connected and n > 0 and m < n - 1:
        raise GraphError("a connected graph needs m >= n - 1")
    rng = random.Random(seed)
    counts: dict[tuple[int, int], int] = {}
    edges = []

    def put(u: int, v: int) -> None:
        key = (min(u, v), max(u, v))
        counts[key] = counts.get(key, 0) + 1
        edges.append(key)

    if connected:
        for k in range(1, n):
            put(k, rng.randrange(k))
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        if counts.get((min(u, v), max(u, v)), 0) < max_multiplicity:
            put(u, v)
    return Multigraph(n, tuple(edges))


FAMILIES = {
    "wheel": wheel,
    "grid": grid,
    "wall": wall,
    "doubled-cycle": doubled_cycle,
    "cycle": cycle,
    "path": path,
    "complete": complete,
}
