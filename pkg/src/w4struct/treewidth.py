"""Treewidth of the underlying simple graph, and classification of prime pieces.

The exact engine decides ``tw <= k`` for increasing ``k`` by searching
elimination orders over sets of eliminated vertices (bitmasks), remembering
sets already shown to fail.  Eliminating ``S`` leaves ``v`` adjacent exactly
to the outside vertices reachable from ``v`` through ``S``, so states need
no explicit fill-in graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .edgesum import decompose_forest, leaves
from .flows import is_internally_k_edge_connected
from .formats import format_graph
from .immersion import DEFAULT_NODE_BUDGET, decide_w4
from .multigraph import GraphError, Multigraph

EXACT_MAX_N = 20
TW_CEILING = 6


class TreewidthTooLarge(GraphError):
    """The exact engine was asked about a graph beyond its size cap."""


@dataclass(frozen=True)
class TreewidthResult:
    lower: int
    upper: int
    exact: bool
    order: tuple[int, ...]  # elimination order achieving ``upper``

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact, "order": list(self.order)}


def _adjacency_masks(g: Multigraph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def elimination_width(g: Multigraph, order: Sequence[int]) -> int:
    """Largest number of later neighbours met while eliminating in ``order``."""
    if sorted(order) != list(range(g.n)):
        raise GraphError("an elimination order must list every vertex once")
    adj = [set(a) for a in g.adjacency]
    width = 0
    for v in order:
        nb = adj[v]
        width = max(width, len(nb))
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
            adj[a].discard(v)
        adj[v] = set()
    return width


# -- heuristics ----------------------------------------------------------


def _greedy(g: Multigraph, score) -> tuple[int, list[int]]:
    adj = [set(a) for a in g.adjacency]
    alive = set(range(g.n))
    order, width = [], 0
    while alive:
        v = min(alive, key=lambda x: (score(adj, x), x))
        nb = adj[v]
        width = max(width, len(nb))
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
            adj[a].discard(v)
        adj[v] = set()
        alive.remove(v)
        order.append(v)
    return width, order


def _degree(adj: list[set[int]], v: int) -> int:
    return len(adj[v])


def _fill(adj: list[set[int]], v: int) -> int:
    nb = list(adj[v])
    return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])


def min_degree_upper(g: Multigraph) -> tuple[int, list[int]]:
    return _greedy(g, _degree)


def min_fill_upper(g: Multigraph) -> tuple[int, list[int]]:
    return _greedy(g, _fill)


def mmd_plus_lower(g: Multigraph) -> int:
    """Minor-min-width: contract a minimum-degree vertex into its least-degree neighbour."""
    adj = {v: set(a) for v, a in enumerate(g.adjacency)}
    best = 0
    while len(adj) > 1:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        best = max(best, len(adj[v]))
        if not adj[v]:
            del adj[v]
            continue
        u = min(adj[v], key=lambda x: (len(adj[x]), x))
        for w in adj[v]:
            adj[w].discard(v)
            if w != u:
                adj[w].add(u)
                adj[u].add(w)
        del adj[v]
    return best


def treewidth_bounds(g: Multigraph) -> TreewidthResult:
    s = g.simple()
    if s.m == 0:
        return TreewidthResult(0, 0, True, tuple(range(g.n)))
    w1, o1 = min_degree_upper(s)
    w2, o2 = min_fill_upper(s)
    upper, order = (w1, o1) if w1 <= w2 else (w2, o2)
    lower = max(mmd_plus_lower(s), 1)
    return TreewidthResult(lower, upper, lower == upper, tuple(order))


# -- exact -----------------------------------------------------------------


def _component_tw(masks: list[int], verts: list[int], lower: int, upper: int,
                  upper_order: list[int]) -> tuple[int, list[int]]:
    """Exact treewidth of one connected component given heuristic bounds."""
    full = 0
    for v in verts:
        full |= 1 << v

    def outside_neighbours(s: int, v: int) -> int:
        # vertices outside s + v reachable from v through s
        seen = 1 << v
        frontier = masks[v]
        result = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            if seen & low:
                continue
            seen |= low
            if s & low:
                frontier |= masks[low.bit_length() - 1] & ~seen
            else:
                result |= low
        return result

    def feasible(k: int) -> list[int] | None:
        failed: set[int] = set()

        def search(s: int) -> list[int] | None:
            rest = full & ~s
            if bin(rest).count("1") <= k + 1:
                out, r = [], rest
                while r:
                    low = r & -r
                    r ^= low
                    out.append(low.bit_length() - 1)
                return out
            if s in failed:
                return None
            r = rest
            while r:
                low = r & -r
                r ^= low
                v = low.bit_length() - 1
                nb = outside_neighbours(s, v)
                if bin(nb).count("1") <= k:
                    tail = search(s | low)
                    if tail is not None:
                        return [v] + tail
            failed.add(s)
            return None

        return search(0)

    for k in range(lower, upper):
        order = feasible(k)
        if order is not None:
            return k, order
    return upper, upper_order


def treewidth_exact(g: Multigraph, max_n: int = EXACT_MAX_N) -> TreewidthResult:
    """Exact treewidth of the underlying simple graph (``n <= max_n``)."""
    s = g.simple()
    if s.n > max_n:
        raise TreewidthTooLarge(f"exact treewidth is capped at n <= {max_n} (got {s.n})")
    bounds = treewidth_bounds(s)
    if bounds.exact:
        return bounds
    masks = _adjacency_masks(s)
    width, order = 0, []
    for comp in s.components():
        sub, _ = s.induced_subgraph(comp)
        if sub.m == 0:
            order.extend(comp)
            continue
        b = treewidth_bounds(sub)
        lo = max(b.lower, width)
        if lo >= b.upper:
            w, o = b.upper, [comp[i] for i in b.order]
        else:
            w, o = _component_tw(masks, comp, lo, b.upper, [comp[i] for i in b.order])
        width = max(width, w)
        order.extend(o)
    width = max(width, 1)
    return TreewidthResult(width, width, True, tuple(order))


def treewidth(g: Multigraph, max_n: int = EXACT_MAX_N) -> TreewidthResult:
    """Exact when small enough, otherwise heuristic bounds."""
    if g.simple().n <= max_n:
        return treewidth_exact(g, max_n)
    return treewidth_bounds(g)


# -- structure classification -------------------------------------------


SUBCUBIC, DEGREE4 = "SUBCUBIC", "DEGREE4"


class StructureViolation(RuntimeError):
    """A prime of a W4-free graph broke a premise the theory guarantees."""

    def __init__(self, report: "StructureReport") -> None:
        super().__init__("; ".join(report.violations))
        self.report = report


@dataclass
class PrimeReport:
    component: int
    graph: Multigraph
    kind: str
    internally_4ec: bool | None = None
    w4_free: bool | None = None
    tw: TreewidthResult | None = None

    def to_json(self) -> dict:
        out = {"component": self.component, "kind": self.kind, "n": self.graph.n, "m": self.graph.m,
               "max_degree": self.graph.max_degree(), "graph": format_graph(self.graph)}
        if self.kind == DEGREE4:
            out.update({"internally_4ec": self.internally_4ec, "w4_free": self.w4_free,
                        "tw": self.tw.to_json() if self.tw else None})
        return out


@dataclass
class StructureReport:
    w4_free: bool | None  # verdict on the input graph
    primes: list[PrimeReport] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    tw_ceiling: int = TW_CEILING

    @property
    def status(self) -> str:
        if self.w4_free is None:
            return "unknown"
        if not self.w4_free:
            return "hypothesis-fails"
        return "violation" if self.violations else "ok"

    @property
    def max_prime_tw(self) -> int | None:
        vals = [p.tw.upper for p in self.primes if p.tw is not None]
        return max(vals) if vals else None

    def to_json(self) -> dict:
        return {"status": self.status, "w4_free": self.w4_free, "tw_ceiling": self.tw_ceiling,
                "primes": [p.to_json() for p in self.primes],
                "violations": self.violations, "warnings": self.warnings}

    def to_text(self) -> str:
        lines = [f"status: {self.status} (input W4-free: {_fmt(self.w4_free)})",
                 f"{'#':>3} {'comp':>4} {'kind':<9} {'n':>3} {'m':>3} {'4ec':>5} {'w4free':>7} {'tw':>7}"]
        for i, p in enumerate(self.primes):
            if p.kind == DEGREE4:
                tw = "?" if p.tw is None else (str(p.tw.upper) if p.tw.exact else f"{p.tw.lower}..{p.tw.upper}")
                extra = f"{_fmt(p.internally_4ec):>5} {_fmt(p.w4_free):>7} {tw:>7}"
            else:
                extra = f"{'-':>5} {'-':>7} {'-':>7}"
            lines.append(f"{i:>3} {p.component:>4} {p.kind:<9} {p.graph.n:>3} {p.graph.m:>3} {extra}")
        lines += [f"VIOLATION: {v}" for v in self.violations]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def _fmt(x) -> str:
    return "unknown" if x is None else ("yes" if x else "no")


def verify_structure_theorem(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET,
                             tw_ceiling: int = TW_CEILING, strict: bool = True) -> StructureReport:
    """Decompose ``g`` and classify every prime.

    A non-subcubic prime of a W4-free input must be internally 4-edge-connected
    and W4-free; anything else is recorded as a violation and, with
    ``strict``, raised as :class:`StructureViolation`.  A prime treewidth above
    ``tw_ceiling`` only produces a warning.
    """
    free = _negate(decide_w4(g, node_budget))
    report = StructureReport(free, tw_ceiling=tw_ceiling)
    forest = decompose_forest(g)
    for ci, (_, tree) in enumerate(forest.components):
        for prime in leaves(tree):
            if prime.is_subcubic():
                report.primes.append(PrimeReport(ci, prime, SUBCUBIC))
                continue
            rep = PrimeReport(ci, prime, DEGREE4,
                              internally_4ec=is_internally_k_edge_connected(prime, 4),
                              w4_free=_negate(decide_w4(prime, node_budget)),
                              tw=treewidth(prime))
            report.primes.append(rep)
    for i, p in enumerate(report.primes):
        if p.kind != DEGREE4:
            continue
        if free is False:
            continue  # the hypothesis fails, nothing to assert
        if not p.internally_4ec:
            report.violations.append(f"prime {i} has a vertex of degree >= 4 but an internal cut of order <= 3")
        if p.w4_free is False and free:
            report.violations.append(f"prime {i} contains W4 although the input does not")
        if p.w4_free is None:
            report.warnings.append(f"prime {i}: W4 search exhausted its budget")
        if p.tw is not None and p.tw.upper > tw_ceiling:
            what = "treewidth" if p.tw.exact else "treewidth upper bound"
            report.warnings.append(f"prime {i}: {what} {p.tw.upper} exceeds the regression ceiling "
                                   f"{tw_ceiling} (corpus drift, not a violation)")
    if free is None:
        report.warnings.append("W4 search on the input exhausted its budget; premises not asserted")
    if strict and report.violations:
        raise StructureViolation(report)
    return report


def _negate(x: bool | None) -> bool | None:
    return None if x is None else not x
