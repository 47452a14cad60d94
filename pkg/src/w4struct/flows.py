"""Edge-disjoint flows between vertex sets, minimum cuts and internal cuts.

Flows use unit-capacity augmenting paths.  Every undirected edge behaves as a
pair of opposite arcs sharing one unit of capacity, and multi-terminal sets are
handled by starting the search from all sources at once (an implicit super
source), so no virtual arc ever shows up in a reported cut or path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .multigraph import GraphError, Multigraph


@dataclass(frozen=True)
class EdgeCut:
    """A set of edges together with one side of the split it induces.

    ``side`` holds the vertices of the side that does not contain the
    component's smallest vertex (for internal cuts) or the source side (for
    :func:`min_edge_cut`).
    """

    edges: tuple[int, ...]
    side: tuple[int, ...]
    minimal: bool = False
    internal: bool = False

    @property
    def order(self) -> int:
        return len(self.edges)

    def to_text(self) -> str:
        return "\n".join([
            f"{self.order} {len(self.side)}",
            " ".join(map(str, self.edges)),
            " ".join(map(str, self.side)),
        ])

    def to_json(self) -> dict:
        return {"order": self.order, "edges": list(self.edges), "side": list(self.side),
                "minimal": self.minimal, "internal": self.internal}


class ResidualNetwork:
    """Residual capacities of an undirected multigraph, as a dense matrix.

    Only pairs listed in ``nbrs`` carry capacity.  ``removed`` edges are left
    out of the network.
    """

    def __init__(self, g: Multigraph, removed: Iterable[int] = ()) -> None:
        n = g.n
        self.n = n
        self.g = g
        cap = [[0] * n for _ in range(n)]
        skip = set(removed)
        for i, (u, v) in enumerate(g.edges):
            if i in skip:
                continue
            cap[u][v] += 1
            cap[v][u] += 1
        self.base = [row[:] for row in cap]
        self.res = cap
        self.nbrs = [[w for w in range(n) if cap[v][w]] for v in range(n)]
        self.value = 0

    def augment(self, sources: Sequence[int], sinks: Sequence[int], limit: int | None = None) -> int:
        """Push unit flow from ``sources`` to ``sinks`` until none fits or ``limit`` is hit."""
        n = self.n
        res, nbrs = self.res, self.nbrs
        is_sink = [False] * n
        for t in sinks:
            is_sink[t] = True
        while limit is None or self.value < limit:
            parent = [-2] * n
            queue = deque()
            for s in sources:
                parent[s] = -1
                queue.append(s)
            hit = -1
            while queue and hit < 0:
                u = queue.popleft()
                for w in nbrs[u]:
                    if parent[w] == -2 and res[u][w] > 0:
                        parent[w] = u
                        if is_sink[w]:
                            hit = w
                            break
                        queue.append(w)
            if hit < 0:
                break
            w = hit
            while parent[w] != -1:
                u = parent[w]
                res[u][w] -= 1
                res[w][u] += 1
                w = u
            self.value += 1
        return self.value

    def source_side(self, sources: Iterable[int]) -> set[int]:
        """Vertices reachable from ``sources`` in the residual network."""
        seen = set(sources)
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in self.nbrs[u]:
                if w not in seen and self.res[u][w] > 0:
                    seen.add(w)
                    queue.append(w)
        return seen

    def sink_reaching(self, sinks: Iterable[int]) -> set[int]:
        """Vertices that can still send flow into ``sinks`` in the residual network."""
        seen = set(sinks)
        queue = deque(seen)
        while queue:
            w = queue.popleft()
            for u in self.nbrs[w]:
                if u not in seen and self.res[u][w] > 0:
                    seen.add(u)
                    queue.append(u)
        return seen

    def net_flow(self, u: int, w: int) -> int:
        return (self.res[w][u] - self.res[u][w]) // 2


def _check_terminals(g: Multigraph, a: Iterable[int], b: Iterable[int]) -> tuple[list[int], list[int]]:
    a_set, b_set = sorted(set(a)), sorted(set(b))
    if not a_set or not b_set:
        raise GraphError("terminal sets must be non-empty")
    for v in a_set + b_set:
        g._check_vertex(v)
    if set(a_set) & set(b_set):
        raise GraphError("terminal sets must be disjoint")
    return a_set, b_set


def edge_connectivity(g: Multigraph, a: Iterable[int], b: Iterable[int], limit: int | None = None) -> int:
    """Maximum number of edge-disjoint paths from ``a`` to ``b`` (capped at ``limit``)."""
    a_set, b_set = _check_terminals(g, a, b)
    return ResidualNetwork(g).augment(a_set, b_set, limit)


def _decompose_paths(net: ResidualNetwork, sources: list[int], sinks: list[int]) -> list[list[int]]:
    g = net.g
    n = g.n
    flow = [[max(net.net_flow(u, w), 0) for w in range(n)] for u in range(n)]
    is_sink = set(sinks)
    # hand out concrete parallel copies per vertex pair
    copies: dict[tuple[int, int], list[int]] = {}
    for i, (u, v) in enumerate(g.edges):
        copies.setdefault((u, v), []).append(i)
    paths = []
    for s in sources:
        while any(flow[s][w] > 0 for w in range(n)):
            walk = [s]
            pos = {s: 0}
            u = s
            while u not in is_sink:
                w = next(x for x in range(n) if flow[u][x] > 0)
                flow[u][w] -= 1
                if w in pos:
                    # a flow cycle carries nothing from s; discard it
                    cut = pos[w]
                    for x in walk[cut + 1:]:
                        del pos[x]
                    walk = walk[: cut + 1]
                    u = w
                    continue
                pos[w] = len(walk)
                walk.append(w)
                u = w
            edge_path = []
            for x, y in zip(walk, walk[1:]):
                edge_path.append(copies[(min(x, y), max(x, y))].pop())
            paths.append(edge_path)
    return paths


def max_edge_flow(g: Multigraph, a: Iterable[int], b: Iterable[int]) -> tuple[int, list[list[int]]]:
    """Maximum edge-disjoint ``a``–``b`` path packing.

    Returns ``(value, paths)`` where each path is a list of edge indices
    running from a vertex of ``a`` to a vertex of ``b``.
    """
    a_set, b_set = _check_terminals(g, a, b)
    net = ResidualNetwork(g)
    value = net.augment(a_set, b_set)
    return value, _decompose_paths(net, a_set, b_set)


def is_minimal_cut(g: Multigraph, edges: Iterable[int]) -> bool:
    """True iff removing ``edges`` adds exactly one component and every edge crosses it."""
    f = sorted(set(edges))
    if not f:
        return False
    before = g.components()
    after = g.components(removed=f)
    if len(after) != len(before) + 1:
        return False
    label = {}
    for k, comp in enumerate(after):
        for v in comp:
            label[v] = k
    return all(label[g.edges[e][0]] != label[g.edges[e][1]] for e in f)


def _make_cut(g: Multigraph, edges: Sequence[int], side: Iterable[int]) -> EdgeCut:
    minimal = is_minimal_cut(g, edges)
    side_t = tuple(sorted(side))
    internal = False
    if minimal:
        u, _ = g.edges[edges[0]]
        comp = next(c for c in g.components() if u in c)
        internal = len(side_t) >= 2 and len(comp) - len(side_t) >= 2
    return EdgeCut(tuple(sorted(edges)), side_t, minimal, internal)


def min_edge_cut(g: Multigraph, a: Iterable[int], b: Iterable[int]) -> EdgeCut:
    """Minimum edge cut between ``a`` and ``b``; its side is the source side.

    The source side is the set reachable from ``a`` after a maximum flow (the
    cut closest to ``a``).  Raises :class:`GraphError` when ``a`` and ``b``
    are already separated.
    """
    a_set, b_set = _check_terminals(g, a, b)
    net = ResidualNetwork(g)
    if net.augment(a_set, b_set) == 0:
        raise GraphError("terminal sets are already separated (order-0 cut)")
    side = net.source_side(a_set)
    edges = [i for i, (u, v) in enumerate(g.edges) if (u in side) != (v in side)]
    return _make_cut(g, edges, side)


def enumerate_internal_cuts(g: Multigraph, max_order: int) -> list[EdgeCut]:
    """All internal edge cuts of order at most ``max_order``, sorted by (order, edges).

    A minimal cut never separates two parallel copies, so the search runs
    over whole parallel bundles.  Each component is treated on its own.
    """
    found: list[EdgeCut] = []
    if max_order < 1:
        return found
    for comp in g.components():
        if len(comp) < 4:
            continue
        members = set(comp)
        bundles: dict[tuple[int, int], list[int]] = {}
        for i, (u, v) in enumerate(g.edges):
            if u in members:
                bundles.setdefault((u, v), []).append(i)
        items = [b for b in sorted(bundles.values()) if len(b) <= max_order]
        root = comp[0]
        seen_small: list[frozenset[int]] = []
        for size in range(1, len(items) + 1):
            any_fit = False
            for combo in combinations(range(len(items)), size):
                total = sum(len(items[i]) for i in combo)
                if total > max_order:
                    continue
                any_fit = True
                key = frozenset(combo)
                if any(s <= key for s in seen_small):
                    continue  # contains a smaller cut, so cannot be minimal
                removed = [e for i in combo for e in items[i]]
                parts = [c for c in g.components(removed=removed) if c[0] in members]
                if len(parts) < 2:
                    continue
                seen_small.append(key)
                if len(parts) != 2:
                    continue
                side_a, side_b = parts
                if len(side_a) < 2 or len(side_b) < 2:
                    continue
                in_a = set(side_a)
                if not all((g.edges[e][0] in in_a) != (g.edges[e][1] in in_a) for e in removed):
                    continue
                side = side_b if root in in_a else side_a
                found.append(EdgeCut(tuple(sorted(removed)), tuple(side), True, True))
            if not any_fit:
                break
    found.sort(key=lambda c: (c.order, c.edges))
    return found


def is_internally_k_edge_connected(g: Multigraph, k: int) -> bool:
    return not enumerate_internal_cuts(g, k - 1)
