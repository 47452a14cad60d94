"""Important (X, Y) edge separators.

A separator ``S`` with X-reachable set ``R`` is important when it is
inclusion-wise minimal and no separator of at most ``|S|`` edges has a
reachable set strictly containing ``R``.  Enumeration follows the classical
branching on an edge of the furthest minimum cut, which visits at most
``4**k`` leaves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .flows import ResidualNetwork, _check_terminals
from .multigraph import Multigraph


@dataclass(frozen=True)
class ImportantSeparator:
    edges: tuple[int, ...]
    reachable: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_text(self) -> str:
        return "\n".join([
            f"{self.size} {len(self.reachable)}",
            " ".join(map(str, self.edges)),
            " ".join(map(str, self.reachable)),
        ])

    def to_json(self) -> dict:
        return {"size": self.size, "edges": list(self.edges), "reachable": list(self.reachable)}


def reachable(g: Multigraph, sources: Iterable[int], removed: Iterable[int] = ()) -> set[int]:
    skip = set(removed)
    seen = set(sources)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for e in g.incidence[u]:
            if e in skip:
                continue
            w = g.other(e, u)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _furthest_min_cut(g: Multigraph, removed: frozenset[int], x: set[int], y: list[int],
                      limit: int) -> tuple[int, set[int]]:
    """Flow value (capped at ``limit``) and the furthest minimum-cut source side."""
    net = ResidualNetwork(g, removed)
    value = net.augment(sorted(x), y, limit)
    if value >= limit:
        return value, set()
    to_y = net.sink_reaching(y)
    near = reachable(g, x, removed)
    return value, {v for v in near if v not in to_y}


def is_important(g: Multigraph, x: Iterable[int], y: Iterable[int], edges: Iterable[int]) -> bool:
    """Check the definition directly using flows (no enumeration of rivals)."""
    x_set, y_set = _check_terminals(g, x, y)
    s = frozenset(edges)
    r = reachable(g, x_set, s)
    if r & set(y_set):
        return False
    boundary = {i for i, (u, v) in enumerate(g.edges) if (u in r) != (v in r)}
    if boundary != s:
        return False
    # each removed edge must be needed: its far end has to reach Y
    for e in s:
        u, v = g.edges[e]
        far = v if u in r else u
        if not (reachable(g, [far], s) & set(y_set)):
            return False
    value, far_side = _furthest_min_cut(g, frozenset(), r, y_set, len(s) + 1)
    return value == len(s) and far_side == r


def enumerate_important_separators(g: Multigraph, x: Iterable[int], y: Iterable[int],
                                   k: int) -> list[ImportantSeparator]:
    """All important (x, y)-edge-separators with at most ``k`` edges.

    Sorted by (size, edge list).  When ``x`` and ``y`` are already
    disconnected the empty separator is the only one.
    """
    x_set, y_set = _check_terminals(g, x, y)
    y_mark = set(y_set)
    candidates: set[frozenset[int]] = set()

    def branch(removed: frozenset[int], source: set[int], budget: int) -> None:
        value, far = _furthest_min_cut(g, removed, source, y_set, budget + 1)
        if value > budget:
            return
        if value == 0:
            candidates.add(removed)
            return
        e = min(i for i, (u, v) in enumerate(g.edges)
                if i not in removed and (u in far) != (v in far))
        u, v = g.edges[e]
        w = v if u in far else u
        branch(removed | {e}, far, budget - 1)
        if w not in y_mark:
            branch(removed, far | {w}, budget)

    if k >= 0:
        branch(frozenset(), set(x_set), k)
    out = []
    for s in candidates:
        if is_important(g, x_set, y_set, s):
            out.append(ImportantSeparator(tuple(sorted(s)), tuple(sorted(reachable(g, x_set, s)))))
    out.sort(key=lambda sep: (sep.size, sep.edges))
    return out
