"""Loop-free undirected multigraphs with individually addressable parallel edges.

A :class:`Multigraph` is an immutable value.  Vertices are the integers
``0..n-1``; edges are kept in canonical order (sorted by endpoint pair), and
an edge's position in that order is its index.  Parallel copies of an edge are
separate entries, so paths and cuts can refer to each copy on its own.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid vertex or edge reference, or a malformed graph."""


class IsomorphismBudgetExceeded(RuntimeError):
    pass


def _normalize(n: int, edges: Iterable[Sequence[int]]) -> list[Edge]:
    out = []
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        out.append((u, v) if u < v else (v, u))
    return out


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        object.__setattr__(self, "edges", tuple(sorted(_normalize(self.n, self.edges))))

    @classmethod
    def build(cls, n: int, edges: Sequence[Sequence[int]]) -> tuple["Multigraph", list[int]]:
        """Build a graph and report where each input edge landed.

        Returns ``(graph, index_of)`` with ``index_of[i]`` the canonical index
        of ``edges[i]``.  Ties between parallel copies keep input order.
        """
        norm = _normalize(n, edges)
        order = sorted(range(len(norm)), key=lambda i: norm[i])
        index_of = [0] * len(norm)
        for pos, i in enumerate(order):
            index_of[i] = pos
        return cls(n, tuple(norm)), index_of

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def _check_edge(self, e: int) -> None:
        if not (0 <= e < len(self.edges)):
            raise GraphError(f"edge index {e} out of range for m={len(self.edges)}")

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    @cached_property
    def multiplicity(self) -> dict[Edge, int]:
        return dict(Counter(self.edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Distinct neighbours of every vertex, sorted."""
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(tuple(sorted(s)) for s in nbrs)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.degrees[v]

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def mult(self, u: int, v: int) -> int:
        return self.multiplicity.get((u, v) if u < v else (v, u), 0)

    def other(self, e: int, v: int) -> int:
        """The endpoint of edge ``e`` that is not ``v``."""
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def boundary(self, s: Iterable[int]) -> int:
        """Number of edges with exactly one endpoint in ``s``."""
        members = set(s)
        for v in members:
            self._check_vertex(v)
        if not members or len(members) == self.n:
            raise GraphError("boundary needs a non-empty proper vertex subset")
        return sum((u in members) != (v in members) for u, v in self.edges)

    def cut_edges(self, s: Iterable[int]) -> tuple[int, ...]:
        members = set(s)
        return tuple(i for i, (u, v) in enumerate(self.edges) if (u in members) != (v in members))

    # -- connectivity --------------------------------------------------

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components (optionally ignoring edges in ``removed``).

        Components are sorted lists, ordered by their smallest vertex.
        """
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        skip = set(removed)
        for i, (u, v) in enumerate(self.edges):
            if i in skip:
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values(), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- derived graphs ------------------------------------------------

    def delete_edges(self, f: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Remove the edges in ``f``; returns the graph and an old→new index map."""
        drop = set(f)
        for e in drop:
            self._check_edge(e)
        keep = [i for i in range(self.m) if i not in drop]
        index_map = {old: new for new, old in enumerate(keep)}
        return Multigraph(self.n, tuple(self.edges[i] for i in keep)), index_map

    def delete_vertices(self, s: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Remove vertices and their incident edges; ids are compacted.

        Returns the graph and the old→new vertex map of surviving vertices.
        """
        drop = set(s)
        for v in drop:
            self._check_vertex(v)
        return self.induced_subgraph(v for v in range(self.n) if v not in drop)

    def delete_vertex(self, v: int) -> tuple["Multigraph", dict[int, int]]:
        return self.delete_vertices([v])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        vmap = {old: new for new, old in enumerate(keep)}
        edges = tuple((vmap[u], vmap[v]) for u, v in self.edges if u in vmap and v in vmap)
        return Multigraph(len(keep), edges), vmap

    def add_edges(self, extra: Iterable[Sequence[int]]) -> "Multigraph":
        return Multigraph(self.n, self.edges + tuple(tuple(p) for p in extra))

    def lift(self, e1: int, e2: int) -> "Multigraph":
        """Replace two edges ``wx`` and ``wy`` sharing exactly one vertex by ``xy``."""
        self._check_edge(e1)
        self._check_edge(e2)
        if e1 == e2:
            raise GraphError("cannot lift an edge with itself")
        common = set(self.edges[e1]) & set(self.edges[e2])
        if len(common) != 1:
            raise GraphError(f"edges {e1} and {e2} do not share exactly one endpoint")
        (w,) = common
        x, y = self.other(e1, w), self.other(e2, w)
        rest = [self.edges[i] for i in range(self.m) if i not in (e1, e2)]
        return Multigraph(self.n, tuple(rest) + ((x, y),))

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Rename vertex ``v`` to ``perm[v]``; ``perm`` must be a permutation."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of the vertex ids")
        return Multigraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def simple(self) -> "Multigraph":
        """Underlying simple graph (parallel edges collapsed)."""
        return Multigraph(self.n, tuple(sorted(set(self.edges))))

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        shift = self.n
        return Multigraph(self.n + other.n, self.edges + tuple((u + shift, v + shift) for u, v in other.edges))


# -- isomorphism -------------------------------------------------------


def _refine(graphs: Sequence[Multigraph]) -> list[list[int]]:
    """Joint colour refinement on several graphs, so colours are comparable."""
    colors = [[g.degrees[v] for v in range(g.n)] for g in graphs]
    n_classes = -1
    while True:
        sig: dict[tuple, int] = {}
        new = []
        for g, col in zip(graphs, colors):
            row = []
            for v in range(g.n):
                nb = sorted((col[w], g.mult(v, w)) for w in g.adjacency[v])
                key = (col[v], tuple(nb))
                row.append(sig.setdefault(key, len(sig)))
            new.append(row)
        if len(sig) == n_classes:
            return new
        n_classes = len(sig)
        colors = new


def find_isomorphism(g1: Multigraph, g2: Multigraph, node_budget: int = 10**6) -> list[int] | None:
    """A multiplicity-preserving bijection ``V(g1) -> V(g2)``, or ``None``.

    Exact; colour refinement prunes the backtracking.  Raises
    :class:`IsomorphismBudgetExceeded` if more than ``node_budget`` search
    nodes are needed (never happens for graphs with at most 12 vertices in
    practice).
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    if sorted(g1.degrees) != sorted(g2.degrees):
        return None
    if sorted(g1.multiplicity.values()) != sorted(g2.multiplicity.values()):
        return None
    c1, c2 = _refine([g1, g2])
    if Counter(c1) != Counter(c2):
        return None
    n = g1.n
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)
    # small classes first, then stay close to already-placed vertices
    order: list[int] = []
    placed = set()
    remaining = sorted(range(n), key=lambda v: (len(by_color[c1[v]]), v))
    while remaining:
        best = None
        for v in remaining:
            touch = sum(1 for w in g1.adjacency[v] if w in placed)
            key = (-touch, len(by_color[c1[v]]), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        order.append(v)
        placed.add(v)
        remaining.remove(v)

    image = [-1] * n
    used = [False] * n
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        for cand in by_color[c1[v]]:
            if used[cand]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise IsomorphismBudgetExceeded(f"isomorphism search exceeded {node_budget} nodes")
            ok = True
            for j in range(i):
                w = order[j]
                if g1.mult(v, w) != g2.mult(cand, image[w]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = cand
            used[cand] = True
            if extend(i + 1):
                return True
            used[cand] = False
            image[v] = -1
        return False

    return list(image) if extend(0) else None


def is_isomorphic(g1: Multigraph, g2: Multigraph, node_budget: int = 10**6) -> bool:
    return find_isomorphism(g1, g2, node_budget) is not None
