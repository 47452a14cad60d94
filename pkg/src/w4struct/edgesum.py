"""Edge-sums: composing two graphs along a bijection of hub stubs, and the inverse split.

The t-edge-sum of ``(g1, v1)`` and ``(g2, v2)`` deletes the two hubs (each of
degree t) and, for every matched stub pair ``(x v1, y v2)``, adds an edge
``xy``.  :func:`decompose` splits a graph along internal cuts of order at most
3 until every piece is prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .flows import EdgeCut, enumerate_internal_cuts, is_minimal_cut
from .formats import format_graph, parse_graph
from .multigraph import GraphError, Multigraph

Pairing = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Composition:
    graph: Multigraph
    left_map: dict[int, int]   # g1 vertex (not v1) -> composed vertex
    right_map: dict[int, int]  # g2 vertex (not v2) -> composed vertex
    stub_edges: tuple[int, ...]  # composed edge index for each pi pair, in pi order


def _check_pairing(g1: Multigraph, v1: int, g2: Multigraph, v2: int, pi: Sequence[Sequence[int]]) -> Pairing:
    g1._check_vertex(v1)
    g2._check_vertex(v2)
    t = len(pi)
    if t < 1:
        raise GraphError("an edge-sum needs t >= 1")
    if g1.degree(v1) != t or g2.degree(v2) != t:
        raise GraphError(f"hub degrees ({g1.degree(v1)}, {g2.degree(v2)}) do not match |pi| = {t}")
    pairs = tuple((int(a), int(b)) for a, b in pi)
    left = sorted(a for a, _ in pairs)
    right = sorted(b for _, b in pairs)
    if left != sorted(g1.incidence[v1]) or right != sorted(g2.incidence[v2]):
        raise GraphError("pi is not a bijection between the hub incidence lists")
    return pairs


def compose_with_maps(g1: Multigraph, v1: int, g2: Multigraph, v2: int,
                      pi: Sequence[Sequence[int]]) -> Composition:
    pairs = _check_pairing(g1, v1, g2, v2, pi)
    left_map = {}
    for v in range(g1.n):
        if v != v1:
            left_map[v] = len(left_map)
    offset = len(left_map)
    right_map = {}
    for v in range(g2.n):
        if v != v2:
            right_map[v] = offset + len(right_map)
    edges = []
    for u, v in g1.edges:
        if v1 not in (u, v):
            edges.append((left_map[u], left_map[v]))
    for u, v in g2.edges:
        if v2 not in (u, v):
            edges.append((right_map[u], right_map[v]))
    first_stub = len(edges)
    for a, b in pairs:
        x, y = g1.other(a, v1), g2.other(b, v2)
        edges.append((left_map[x], right_map[y]))
    graph, index_of = Multigraph.build(offset + len(right_map), edges)
    stubs = tuple(index_of[first_stub + i] for i in range(len(pairs)))
    return Composition(graph, left_map, right_map, stubs)


def compose(g1: Multigraph, v1: int, g2: Multigraph, v2: int, pi: Sequence[Sequence[int]]) -> Multigraph:
    """The edge-sum of ``(g1, v1)`` and ``(g2, v2)`` along ``pi``.

    ``pi`` lists ``(g1-edge, g2-edge)`` pairs of stub indices.  Vertices of
    ``g1 - v1`` come first, in order, followed by those of ``g2 - v2``.
    """
    return compose_with_maps(g1, v1, g2, v2, pi).graph


@dataclass(frozen=True)
class EdgeSumSplit:
    """One split of a graph; enough to undo it exactly.

    ``left_vertices[i]`` is the parent vertex that became vertex ``i`` of the
    left part (likewise on the right).  Each part's hub is its last vertex.
    """

    t: int
    cut_edges: tuple[int, ...]
    pi: Pairing
    v1: int
    v2: int
    left_vertices: tuple[int, ...]
    right_vertices: tuple[int, ...]

    @property
    def internal(self) -> bool:
        return len(self.left_vertices) >= 2 and len(self.right_vertices) >= 2


@dataclass(frozen=True)
class SplitParts:
    g1: Multigraph
    v1: int
    g2: Multigraph
    v2: int
    pi: Pairing
    split: EdgeSumSplit


def _side_part(g: Multigraph, side: list[int], cut: Sequence[int]) -> tuple[Multigraph, int, list[int]]:
    local = {v: i for i, v in enumerate(side)}
    hub = len(side)
    edges = [(local[u], local[v]) for u, v in g.edges if u in local and v in local]
    first = len(edges)
    for e in cut:
        u, v = g.edges[e]
        edges.append((local[u] if u in local else local[v], hub))
    part, index_of = Multigraph.build(hub + 1, edges)
    return part, hub, [index_of[first + i] for i in range(len(cut))]


def split(g: Multigraph, cut: EdgeCut | Sequence[int], allow_trivial: bool = False) -> SplitParts:
    """Split ``g`` along a minimal cut into two parts with fresh hubs.

    The left part is the side holding the smallest vertex of the cut's
    component.  Non-internal cuts (a side with a single vertex) are refused
    unless ``allow_trivial``.
    """
    edges = sorted(cut.edges if isinstance(cut, EdgeCut) else set(cut))
    for e in edges:
        g._check_edge(e)
    if not is_minimal_cut(g, edges):
        raise GraphError("split needs a minimal edge cut")
    comps = g.components(removed=edges)
    u, v = g.edges[edges[0]]
    side_a = next(c for c in comps if u in c)
    side_b = next(c for c in comps if v in c)
    if side_b[0] < side_a[0]:
        side_a, side_b = side_b, side_a
    if not allow_trivial and (len(side_a) < 2 or len(side_b) < 2):
        raise GraphError("cut is not internal: one side has a single vertex")
    g1, v1, stubs1 = _side_part(g, side_a, edges)
    g2, v2, stubs2 = _side_part(g, side_b, edges)
    pi = tuple(zip(stubs1, stubs2))
    info = EdgeSumSplit(len(edges), tuple(edges), pi, v1, v2, tuple(side_a), tuple(side_b))
    return SplitParts(g1, v1, g2, v2, pi, info)


# -- decomposition trees -------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    graph: Multigraph


@dataclass(frozen=True)
class Node:
    split: EdgeSumSplit
    left: "Tree"
    right: "Tree"


Tree = Union[Leaf, Node]


def decompose(g: Multigraph) -> Tree:
    """Split a connected graph along internal cuts of order <= 3 until all leaves are prime.

    Cuts are taken smallest order first, then by edge list.
    """
    if not g.is_connected():
        raise GraphError("decompose needs a connected graph; use decompose_forest")
    cuts = enumerate_internal_cuts(g, 3)
    if not cuts:
        return Leaf(g)
    parts = split(g, cuts[0])
    return Node(parts.split, decompose(parts.g1), decompose(parts.g2))


@dataclass(frozen=True)
class Forest:
    n: int
    components: tuple[tuple[tuple[int, ...], Tree], ...]  # (original vertex ids, tree)


def decompose_forest(g: Multigraph) -> Forest:
    out = []
    for comp in g.components():
        sub, _ = g.induced_subgraph(comp)
        out.append((tuple(comp), decompose(sub)))
    return Forest(g.n, tuple(out))


def leaves(tree: Tree) -> list[Multigraph]:
    if isinstance(tree, Leaf):
        return [tree.graph]
    return leaves(tree.left) + leaves(tree.right)


def recompose(tree: Tree) -> Multigraph:
    """Undo a decomposition; the result equals the decomposed graph exactly."""
    if isinstance(tree, Leaf):
        return tree.graph
    s = tree.split
    g1, g2 = recompose(tree.left), recompose(tree.right)
    if g1.n != len(s.left_vertices) + 1 or g2.n != len(s.right_vertices) + 1:
        raise GraphError("split vertex lists do not match the recomposed parts")
    comp = compose_with_maps(g1, s.v1, g2, s.v2, s.pi)
    parent_of = {}
    for local, new in comp.left_map.items():
        parent_of[new] = s.left_vertices[local]
    for local, new in comp.right_map.items():
        parent_of[new] = s.right_vertices[local]
    if sorted(parent_of.values()) != list(range(comp.graph.n)):
        raise GraphError("split vertex lists are not a partition of the parent vertices")
    return comp.graph.relabel([parent_of[v] for v in range(comp.graph.n)])


def recompose_forest(forest: Forest) -> Multigraph:
    edges = []
    for vertices, tree in forest.components:
        g = recompose(tree)
        if g.n != len(vertices):
            raise GraphError("component vertex list does not match its tree")
        edges.extend((vertices[u], vertices[v]) for u, v in g.edges)
    return Multigraph(forest.n, tuple(edges))


# -- JSON ------------------------------------------------------------------


def tree_to_json(tree: Tree) -> dict:
    if isinstance(tree, Leaf):
        return {"prime": format_graph(tree.graph)}
    s = tree.split
    return {
        "t": s.t,
        "cut_edges": list(s.cut_edges),
        "pi": [list(p) for p in s.pi],
        "v1": s.v1,
        "v2": s.v2,
        "left_vertices": list(s.left_vertices),
        "right_vertices": list(s.right_vertices),
        "left": tree_to_json(tree.left),
        "right": tree_to_json(tree.right),
    }


def tree_from_json(data: dict) -> Tree:
    try:
        if "prime" in data:
            return Leaf(parse_graph(data["prime"]))
        s = EdgeSumSplit(
            int(data["t"]),
            tuple(int(e) for e in data["cut_edges"]),
            tuple((int(a), int(b)) for a, b in data["pi"]),
            int(data["v1"]),
            int(data["v2"]),
            tuple(int(v) for v in data["left_vertices"]),
            tuple(int(v) for v in data["right_vertices"]),
        )
        return Node(s, tree_from_json(data["left"]), tree_from_json(data["right"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed decomposition tree: {exc!r}") from None


def forest_to_json(forest: Forest) -> dict:
    return {
        "vertex_count": forest.n,
        "components": [{"vertices": list(vs), "tree": tree_to_json(t)} for vs, t in forest.components],
    }


def forest_from_json(data: dict) -> Forest:
    try:
        if "components" not in data:
            tree = tree_from_json(data)
            n = recompose(tree).n
            return Forest(n, ((tuple(range(n)), tree),))
        comps = tuple((tuple(int(v) for v in c["vertices"]), tree_from_json(c["tree"]))
                      for c in data["components"])
        return Forest(int(data["vertex_count"]), comps)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed decomposition forest: {exc!r}") from None
