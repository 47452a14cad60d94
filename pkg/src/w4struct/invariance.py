"""Checking whether W4 containment survives an edge-sum.

For sums of order at most 3 the composition contains W4 exactly when one of
the parts does, and each part immerses in the composition.  At order 4 the
equivalence can break; :func:`search_t4_witness` looks for such pairs among
small parts and :func:`t4_witness` returns a hand-built one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations
from typing import Iterator, Sequence

from .catalog import connected_multigraphs
from .edgesum import Pairing, compose_with_maps
from .formats import format_graph
from .immersion import (DEFAULT_NODE_BUDGET, W4, BudgetExhausted, ImmersionModel, decide_w4,
                        find_immersion, find_w4, verify_model)
from .multigraph import Multigraph

HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"

@dataclass
class InvarianceReport:
    t: int
    internal: bool
    w4_left: bool | None
    w4_right: bool | None
    w4_composed: bool | None
    verdict: str
    # per part: True (immersion found and verified), False (refuted),
    # None (budget exhausted); empty when not checked
    lemma: list = field(default_factory=list)
    composed: Multigraph | None = None
    composed_model: ImmersionModel | None = None

    @property
    def lemma_ok(self) -> bool:
        return bool(self.lemma) and all(x is True for x in self.lemma)

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "internal": self.internal,
            "w4": {"g1": self.w4_left, "g2": self.w4_right, "composed": self.w4_composed},
            "verdict": self.verdict,
            "lemma": self.lemma,
            "composed": format_graph(self.composed) if self.composed is not None else None,
            "composed_model": self.composed_model.to_json() if self.composed_model else None,
        }


def _verdict(a: bool | None, b: bool | None, c: bool | None) -> str:
    # the equivalence can still be settled with one unknown side
    if c is None:
        return UNKNOWN
    if a is True or b is True:
        return HOLDS if c else FAILS
    if a is False and b is False:
        return FAILS if c else HOLDS
    return UNKNOWN


def _w4(g: Multigraph, budget: int) -> tuple[bool | None, ImmersionModel | None]:
    try:
        model = find_w4(g, budget)
    except BudgetExhausted:
        return None, None
    return model is not None, model


def _immerses(g: Multigraph, h: Multigraph, budget: int):
    try:
        model = find_immersion(g, h, budget)
    except BudgetExhausted:
        return None
    return model is not None and verify_model(g, h, model)


def check_invariance(g1: Multigraph, v1: int, g2: Multigraph, v2: int, pi: Sequence[Sequence[int]],
                     node_budget: int = DEFAULT_NODE_BUDGET, lemma: bool = True) -> InvarianceReport:
    """Compose, then compare the three W4 verdicts.

    Any order is accepted; for ``t <= 3`` (and ``lemma`` set) the report also
    records whether each part immerses in the composition.
    """
    comp = compose_with_maps(g1, v1, g2, v2, pi)
    g = comp.graph
    t = len(pi)
    internal = g1.n >= 3 and g2.n >= 3
    a, _ = _w4(g1, node_budget)
    b, _ = _w4(g2, node_budget)
    c, model = _w4(g, node_budget)
    checks = []
    if lemma and t <= 3:
        checks = [_immerses(g, g1, node_budget), _immerses(g, g2, node_budget)]
    return InvarianceReport(t, internal, a, b, c, _verdict(a, b, c), checks, g, model)


# -- order-4 witnesses -------------------------------------------------------


@dataclass(frozen=True)
class Part:
    graph: Multigraph
    hub: int

    def to_json(self) -> dict:
        return {"graph": format_graph(self.graph), "hub": self.hub}


@dataclass(frozen=True)
class Witness:
    left: Part
    right: Part
    pi: Pairing
    report: InvarianceReport

    def to_json(self) -> dict:
        return {"g1": self.left.to_json(), "g2": self.right.to_json(),
                "pi": [list(p) for p in self.pi], "report": self.report.to_json()}


def attach_hub(body: Multigraph, anchors: Sequence[int]) -> Part:
    """Add a hub joined to each vertex in ``anchors`` (repeats give parallel stubs)."""
    hub = body.n
    g = Multigraph(body.n + 1, body.edges + tuple((a, hub) for a in anchors))
    return Part(g, hub)


def default_pairing(p1: Part, p2: Part) -> Pairing:
    return tuple(zip(p1.graph.incidence[p1.hub], p2.graph.incidence[p2.hub]))


def t4_witness() -> tuple[Part, Part, Pairing]:
    """A W4-free pair whose 4-edge-sum is W4 itself.

    Cutting W4 between two adjacent rim vertices and the rest gives an edge
    with two doubled stubs on one side and a triangle (hub plus two rim
    vertices) with stubs 2, 1, 1 on the other.
    """
    # left body: rim vertices 0, 1; right body: 0 = centre, 1, 2 = the other rim vertices
    left = attach_hub(Multigraph(2, ((0, 1),)), [0, 0, 1, 1])
    right = attach_hub(Multigraph(3, ((0, 1), (0, 2), (1, 2))), [0, 0, 1, 2])
    inc1 = {a: [e for e in left.graph.incidence[left.hub] if left.graph.other(e, left.hub) == a]
            for a in (0, 1)}
    inc2 = {a: [e for e in right.graph.incidence[right.hub] if right.graph.other(e, right.hub) == a]
            for a in (0, 1, 2)}
    # rim a (left 0) meets the centre and rim c (right 2); rim b (left 1) meets the centre and rim d (right 1)
    pi = ((inc1[0][0], inc2[0][0]), (inc1[0][1], inc2[2][0]),
          (inc1[1][0], inc2[0][1]), (inc1[1][1], inc2[1][0]))
    return left, right, pi


def _hub_parts(max_n: int, t: int, max_body_m: int) -> Iterator[Part]:
    for body in connected_multigraphs(max_n - 1, max_body_m, 2, min_n=2):
        for anchors in combinations_with_replacement(range(body.n), t):
            yield attach_hub(body, anchors)


def _bucket_product(xs: list[Part], ys: list[Part], same: bool) -> Iterator[tuple[Part, Part]]:
    for i, x in enumerate(xs):
        for y in (ys[i:] if same else ys):
            yield x, y


def _pairings(p1: Part, p2: Part) -> Iterator[Pairing]:
    """pi up to swapping parallel stubs: one per distinct endpoint matching."""
    s1 = p1.graph.incidence[p1.hub]
    s2 = p2.graph.incidence[p2.hub]
    seen = set()
    for perm in permutations(range(len(s2))):
        key = tuple(sorted((p1.graph.other(s1[i], p1.hub), p2.graph.other(s2[j], p2.hub))
                           for i, j in enumerate(perm)))
        if key in seen:
            continue
        seen.add(key)
        yield tuple((s1[i], s2[j]) for i, j in enumerate(perm))


@dataclass
class SearchResult:
    status: str  # "found", "exhausted" (budget ran out) or "complete" (nothing found)
    witness: Witness | None
    compositions: int
    unknown: int

    def to_json(self) -> dict:
        return {"status": self.status, "compositions": self.compositions, "unknown": self.unknown,
                "witness": self.witness.to_json() if self.witness else None}


def search_t4_witness(max_n: int = 6, max_body_m: int = 6, max_compositions: int = 20000,
                      node_budget: int = 20000, t: int = 4) -> SearchResult:
    """Look for W4-free parts of at most ``max_n`` vertices whose t-edge-sum contains W4.

    Parts are catalogue bodies (multiplicity <= 2, at most ``max_body_m``
    edges) with a hub of degree ``t``, tried smallest first.  Stops at the
    first certified witness or once ``max_compositions`` sums were built.
    """
    parts = []
    unknown = 0
    for p in _hub_parts(max_n, t, max_body_m):
        verdict = decide_w4(p.graph, node_budget)
        if verdict is False:
            parts.append(p)
        elif verdict is None:
            unknown += 1
    buckets: dict[tuple[int, int], list[Part]] = {}
    for p in parts:
        buckets.setdefault((p.graph.n, p.graph.m), []).append(p)
    keys = sorted(buckets)
    # smallest compositions first; W4 needs five vertices and eight edges
    bucket_pairs = sorted(((a, b) for a in keys for b in keys if a <= b),
                          key=lambda ab: (ab[0][0] + ab[1][0], ab[0][1] + ab[1][1], ab))
    count = 0
    for a, b in bucket_pairs:
        if a[0] + b[0] - 2 < W4.n or a[1] + b[1] - t < W4.m:
            continue
        for p1, p2 in _bucket_product(buckets[a], buckets[b], a == b):
            for pi in _pairings(p1, p2):
                if count >= max_compositions:
                    return SearchResult("exhausted", None, count, unknown)
                count += 1
                rep = check_invariance(p1.graph, p1.hub, p2.graph, p2.hub, pi, node_budget, lemma=False)
                if rep.verdict == FAILS and rep.composed_model is not None \
                        and verify_model(rep.composed, W4, rep.composed_model):
                    return SearchResult("found", Witness(p1, p2, pi, rep), count, unknown)
                if rep.verdict == UNKNOWN:
                    unknown += 1
    return SearchResult("complete" if unknown == 0 else "exhausted", None, count, unknown)

