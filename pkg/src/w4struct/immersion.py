"""Exact immersion testing on small multigraphs.

An immersion of H in G maps the vertices of H injectively to G and every edge
of H to a path of G between the images of its ends, with the paths pairwise
edge-disjoint.  The search here is exhaustive: an outer backtracking over the
branch-vertex assignment and an inner depth-first routing of edge-disjoint
paths.  All pruning is sound, so a ``None`` answer is a proof of absence; when
the node budget runs out :class:`BudgetExhausted` is raised instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .generators import wheel
from .multigraph import GraphError, Multigraph

DEFAULT_NODE_BUDGET = 10**6


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int) -> None:
        self.nodes = nodes
        super().__init__(f"immersion search stopped after {nodes} nodes (undecided)")


@dataclass(frozen=True)
class ImmersionModel:
    vertex_map: tuple[int, ...]
    edge_map: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"vertex_map": list(self.vertex_map), "edge_map": [list(p) for p in self.edge_map]}

    @classmethod
    def from_json(cls, data: Any) -> "ImmersionModel":
        try:
            vm = tuple(_as_int(x) for x in data["vertex_map"])
            em = tuple(tuple(_as_int(x) for x in p) for p in data["edge_map"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed immersion model: {exc}") from None
        return cls(vm, em)


def _as_int(x: Any) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"malformed immersion model: {x!r} is not an integer")
    return x


# -- verification --------------------------------------------------------


def check_model(g: Multigraph, h: Multigraph, model: ImmersionModel) -> str | None:
    """Return ``None`` for a valid model, else a description of the first violation.

    Raises :class:`ValueError` for references that do not fit the graphs at
    all (wrong lengths, ids out of range).
    """
    if len(model.vertex_map) != h.n:
        raise ValueError(f"vertex_map has {len(model.vertex_map)} entries, H has {h.n} vertices")
    if len(model.edge_map) != h.m:
        raise ValueError(f"edge_map has {len(model.edge_map)} entries, H has {h.m} edges")
    for x in model.vertex_map:
        if not 0 <= x < g.n:
            raise ValueError(f"vertex_map entry {x} is not a vertex of G")
    for p in model.edge_map:
        for e in p:
            if not 0 <= e < g.m:
                raise ValueError(f"edge_map entry {e} is not an edge of G")

    if len(set(model.vertex_map)) != h.n:
        return "injectivity: two H-vertices share a branch vertex"
    for idx, (hu, hv) in enumerate(h.edges):
        p = model.edge_map[idx]
        if not p:
            return f"path length: H-edge {idx} is mapped to an empty path"
        if len(set(p)) != len(p):
            return f"path: H-edge {idx} repeats a G-edge"
        a, b = model.vertex_map[hu], model.vertex_map[hv]
        cur = a
        for e in p:
            x, y = g.edges[e]
            if cur == x:
                cur = y
            elif cur == y:
                cur = x
            else:
                return f"path: H-edge {idx} is not a walk from {a} to {b} (breaks at G-edge {e})"
        if cur != b:
            return f"path: H-edge {idx} ends at {cur}, expected {b}"
    owner: dict[int, int] = {}
    for idx, p in enumerate(model.edge_map):
        for e in p:
            if e in owner:
                return f"edge-disjointness: G-edge {e} used by H-edges {owner[e]} and {idx}"
            owner[e] = idx
    return None


def verify_model(g: Multigraph, h: Multigraph, model: ImmersionModel) -> bool:
    return check_model(g, h, model) is None


# -- reduction of G ------------------------------------------------------


class _Reduced:
    """G after immersion-preserving simplifications, with edge provenance.

    Each reduced edge between ``u < v`` is a chain of original edge indices
    ordered from ``u`` to ``v``.  Vertex ids are kept; dropped vertices just
    end up isolated.
    """

    def __init__(self, g: Multigraph, h: Multigraph) -> None:
        self.n = g.n
        chains: dict[tuple[int, int], list[list[int]]] = {}
        for i, (u, v) in enumerate(g.edges):
            chains.setdefault((u, v), []).append([i])
        self.chains = chains
        self.g = g
        min_deg_h = min(h.degrees, default=0)
        two_connected = h.n >= 2 and h.is_connected() and not _has_bridge(h)
        self._simplify(min_deg_h, two_connected, max(h.m, 1))

    def degree(self, v: int) -> int:
        return self._deg[v]

    def _recount(self) -> None:
        deg = [0] * self.n
        for (u, v), cs in self.chains.items():
            deg[u] += len(cs)
            deg[v] += len(cs)
        self._deg = deg

    def _simplify(self, min_deg_h: int, two_connected: bool, cap: int) -> None:
        chains = self.chains
        for key in list(chains):
            if len(chains[key]) > cap:
                chains[key].sort(key=len)
                del chains[key][cap:]
        changed = True
        while changed:
            changed = False
            self._recount()
            deg = self._deg
            for w in range(self.n):
                if deg[w] == 0:
                    continue
                if min_deg_h >= 2 and deg[w] == 1:
                    self._drop_vertex(w)
                    changed = True
                    break
                if min_deg_h >= 3 and deg[w] == 2:
                    self._suppress(w, cap)
                    changed = True
                    break
            if not changed and two_connected:
                bridge = self._find_bridge()
                if bridge is not None:
                    del chains[bridge]
                    changed = True
        self._recount()

    def _incident(self, w: int) -> list[tuple[tuple[int, int], list[int]]]:
        out = []
        for key, cs in self.chains.items():
            if w in key:
                for c in cs:
                    out.append((key, c))
        return out

    def _drop_vertex(self, w: int) -> None:
        for key in [k for k in self.chains if w in k]:
            del self.chains[key]

    def _suppress(self, w: int, cap: int) -> None:
        (k1, c1), (k2, c2) = self._incident(w)
        a = k1[0] if k1[1] == w else k1[1]
        b = k2[0] if k2[1] == w else k2[1]
        self._drop_vertex(w)
        if a == b:
            return
        # orient both chains away from a, through w, to b
        first = c1 if k1[0] == a else c1[::-1]
        second = c2 if k2[0] == w else c2[::-1]
        joined = first + second
        key = (a, b) if a < b else (b, a)
        if key[0] != a:
            joined = joined[::-1]
        bucket = self.chains.setdefault(key, [])
        bucket.append(joined)
        if len(bucket) > cap:
            bucket.sort(key=len)
            del bucket[cap:]

    def _find_bridge(self) -> tuple[int, int] | None:
        single = [k for k, cs in self.chains.items() if len(cs) == 1]
        if not single:
            return None
        adj: dict[int, set[int]] = {}
        for u, v in self.chains:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for u, v in sorted(single):
            seen = {u}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if (x, y) in ((u, v), (v, u)):
                        continue
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            if v not in seen:
                return (u, v)
        return None

    def capacity(self) -> list[list[int]]:
        cap = [[0] * self.n for _ in range(self.n)]
        for (u, v), cs in self.chains.items():
            cap[u][v] = cap[v][u] = len(cs)
        return cap

    def expand(self, vertex_path: list[int], pool: dict[tuple[int, int], list[list[int]]]) -> list[int]:
        out: list[int] = []
        for x, y in zip(vertex_path, vertex_path[1:]):
            key = (x, y) if x < y else (y, x)
            chain = pool[key].pop()
            out.extend(chain if x < y else chain[::-1])
        return out


@lru_cache(maxsize=64)
def _has_bridge(h: Multigraph) -> bool:
    for (u, v), mult in h.multiplicity.items():
        if mult == 1:
            i = h.edges.index((u, v))
            if len(h.components(removed=[i])) > len(h.components()):
                return True
    return False


@lru_cache(maxsize=64)
def _h_connectivity(h: Multigraph) -> tuple[tuple[int, ...], ...]:
    from .flows import ResidualNetwork

    lam = [[0] * h.n for _ in range(h.n)]
    for u in range(h.n):
        for v in range(u + 1, h.n):
            lam[u][v] = lam[v][u] = ResidualNetwork(h).augment([u], [v])
    return tuple(tuple(row) for row in lam)


@lru_cache(maxsize=64)
def _partial_checks(h: Multigraph, order: tuple[int, ...]) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Cut demands checkable once ``order[:i+1]`` is assigned.

    For a split of the assigned H-vertices into A and B, the images need at
    least ``e(A, B) + sum_c min(e(c, A), e(c, B))`` edge-disjoint paths
    between them, c ranging over unassigned H-vertices.
    """
    hn = h.n
    mult = [[h.mult(a, b) for b in range(hn)] for a in range(hn)]
    checks: list[tuple[tuple[int, int, int], ...]] = []
    for i in range(hn):
        assigned = order[: i + 1]
        rest = order[i + 1:]
        out = []
        k = len(assigned)
        if k >= 2:
            for mask in range(1, 1 << (k - 1)):
                a_side = [assigned[j] for j in range(k - 1) if mask >> j & 1]
                b_side = [x for x in assigned if x not in a_side]
                demand = sum(mult[a][b] for a in a_side for b in b_side)
                for c in rest:
                    demand += min(sum(mult[c][a] for a in a_side), sum(mult[c][b] for b in b_side))
                if len(a_side) == 1 and len(b_side) == 1:
                    continue  # covered by the pairwise test
                if demand > 0:
                    amask = sum(1 << x for x in a_side)
                    bmask = sum(1 << x for x in b_side)
                    out.append((amask, bmask, demand))
            out.sort(key=lambda t: -t[2])
        checks.append(tuple(out))
    return tuple(checks)


# -- the search ----------------------------------------------------------


class _Search:
    def __init__(self, g: Multigraph, h: Multigraph, node_budget: int,
                 order: list[int] | None = None,
                 less_than: list[tuple[int, int]] = ()) -> None:
        self.g, self.h = g, h
        self.budget = node_budget
        self.nodes = 0
        self.red = _Reduced(g, h)
        self.cap = self.red.capacity()
        n = g.n
        self.gn = n
        self.nbrs = [[w for w in range(n) if self.cap[v][w]] for v in range(n)]
        self.rdeg = [sum(row) for row in self.cap]
        self.hdeg = list(h.degrees)
        self.hlam = _h_connectivity(h)
        self.order = order if order is not None else self._default_order()
        self.less_than = list(less_than)
        self.flow_cache: dict[tuple[int, int], int] = {}
        hn = h.n
        self.hmult = [[h.mult(a, b) for b in range(hn)] for a in range(hn)]
        self.partial_checks = _partial_checks(h, tuple(self.order)) if hn <= 10 else [[] for _ in range(hn)]

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes)

    def _default_order(self) -> list[int]:
        h = self.h
        order: list[int] = []
        left = set(range(h.n))
        while left:
            placed = set(order)

            def key(u: int) -> tuple:
                touch = sum(h.mult(u, w) for w in placed)
                return (-touch, -h.degrees[u], u)

            u = min(left, key=key)
            order.append(u)
            left.remove(u)
        return order

    # flows on the reduced graph, cached by terminal sets
    def _flow_at_least(self, amask: int, bmask: int, need: int) -> bool:
        key = (amask, bmask) if amask < bmask else (bmask, amask)
        known = self.flow_cache.get(key)
        if known is not None:
            if known < 0:
                return -known - 1 >= need
            if known >= need:
                return True
        n = self.gn
        base = self.cap
        res = [row[:] for row in base]
        nbrs = self.nbrs
        sources = [v for v in range(n) if amask >> v & 1]
        value = 0
        while value < need:
            parent = [-2] * n
            queue = deque(sources)
            for s in sources:
                parent[s] = -1
            hit = -1
            while queue and hit < 0:
                u = queue.popleft()
                for w in nbrs[u]:
                    if parent[w] == -2 and res[u][w] > 0:
                        parent[w] = u
                        if bmask >> w & 1:
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
            value += 1
        if value >= need:
            if known is None or known < value:
                self.flow_cache[key] = value
            return True
        self.flow_cache[key] = -value - 1  # exact value, encoded
        return False

    def run(self) -> ImmersionModel | None:
        h, g = self.h, self.g
        if h.n > g.n:
            return None
        # degree necessity: some injective map must respect degrees
        gd = sorted(g.degrees, reverse=True)
        for i, d in enumerate(sorted(h.degrees, reverse=True)):
            if gd[i] < d:
                return None
        self.alpha = [-1] * h.n
        self.used = [False] * self.gn
        self.cands = []
        for u in range(h.n):
            d = self.hdeg[u]
            if d == 0:
                self.cands.append(list(range(self.gn)))
            else:
                self.cands.append([v for v in range(self.gn) if self.rdeg[v] >= d])
        self.result: ImmersionModel | None = None
        self._assign(0)
        return self.result

    def _assign(self, i: int) -> bool:
        h = self.h
        if i == h.n:
            return self._route_all()
        u = self.order[i]
        alpha = self.alpha
        for c in self.cands[u]:
            if self.used[c]:
                continue
            self._tick()
            ok = True
            for a, b in self.less_than:
                if a == u and alpha[b] >= 0 and not c < alpha[b]:
                    ok = False
                elif b == u and alpha[a] >= 0 and not alpha[a] < c:
                    ok = False
            if not ok:
                continue
            for j in range(i):
                w = self.order[j]
                need = self.hlam[u][w]
                if need and not self._flow_at_least(1 << c, 1 << alpha[w], need):
                    ok = False
                    break
            if not ok:
                continue
            alpha[u] = c
            self.used[c] = True
            for amask, bmask, demand in self.partial_checks[i]:
                ga = gb = 0
                for x in range(h.n):
                    if amask >> x & 1:
                        ga |= 1 << alpha[x]
                    elif bmask >> x & 1:
                        gb |= 1 << alpha[x]
                if not self._flow_at_least(ga, gb, demand):
                    ok = False
                    break
            if ok and self._assign(i + 1):
                return True
            alpha[u] = -1
            self.used[c] = False
        return False

    # -- routing ------------------------------------------------------

    def _route_all(self) -> bool:
        h = self.h
        alpha = self.alpha
        self.demands = [(alpha[a], alpha[b]) for a, b in h.edges]
        self.need = [0] * self.gn
        for a, b in self.demands:
            self.need[a] += 1
            self.need[b] += 1
        for v in range(self.gn):
            if self.rdeg[v] < self.need[v]:
                return False
        self.paths: list[list[int] | None] = [None] * h.m
        self.onpath = [False] * self.gn
        if self._route(list(range(h.m))):
            pool = {k: list(cs) for k, cs in self.red.chains.items()}
            edge_map = tuple(tuple(self.red.expand(p, pool)) for p in self.paths)
            self.result = ImmersionModel(tuple(alpha), edge_map)
            return True
        return False

    def _connected_ok(self, remaining: list[int]) -> bool:
        n = self.gn
        label = [-1] * n
        cap, nbrs = self.cap, self.nbrs
        for d in remaining:
            a, b = self.demands[d]
            if label[a] < 0:
                label[a] = a
                queue = [a]
                while queue:
                    x = queue.pop()
                    for y in nbrs[x]:
                        if label[y] < 0 and cap[x][y] > 0:
                            label[y] = a
                            queue.append(y)
            if label[a] != label[b]:
                return False
        return True

    def _route(self, remaining: list[int]) -> bool:
        if not remaining:
            return True
        rdeg, need = self.rdeg, self.need
        best = None
        for d in remaining:
            a, b = self.demands[d]
            slack = min(rdeg[a] - need[a], rdeg[b] - need[b])
            key = (slack, d)
            if best is None or key < best[0]:
                best = (key, d)
        d = best[1]
        a, b = self.demands[d]
        rest = [x for x in remaining if x != d]
        need[a] -= 1
        need[b] -= 1
        self.onpath[a] = True
        stack = [a]
        found = self._extend(a, b, d, rest, stack)
        self.onpath[a] = False
        if not found:
            need[a] += 1
            need[b] += 1
        return found

    def _extend(self, v: int, target: int, d: int, rest: list[int], stack: list[int]) -> bool:
        cap, rdeg, need, onpath = self.cap, self.rdeg, self.need, self.onpath
        for w in self.nbrs[v]:
            if cap[v][w] <= 0 or onpath[w]:
                continue
            self._tick()
            cap[v][w] -= 1
            cap[w][v] -= 1
            rdeg[v] -= 1
            rdeg[w] -= 1
            ok = rdeg[v] >= need[v]
            if ok:
                ok = rdeg[w] >= need[w] if w == target else rdeg[w] > need[w]
            if ok:
                stack.append(w)
                if w == target:
                    for x in stack:
                        onpath[x] = False
                    if self._connected_ok(rest) and self._route(rest):
                        self.paths[d] = list(stack)
                        return True
                    for x in stack[:-1]:
                        onpath[x] = True
                else:
                    onpath[w] = True
                    if self._extend(w, target, d, rest, stack):
                        onpath[w] = False
                        return True
                    onpath[w] = False
                stack.pop()
            cap[v][w] += 1
            cap[w][v] += 1
            rdeg[v] += 1
            rdeg[w] += 1
        return False


def find_immersion(g: Multigraph, h: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> ImmersionModel | None:
    """A model of ``h`` in ``g``, or ``None`` if none exists.

    Raises :class:`BudgetExhausted` when the search needs more than
    ``node_budget`` nodes; that outcome says nothing either way.
    """
    return _Search(g, h, node_budget).run()


W4 = wheel(4)
_W4_HUB = 4
# rim 0-1-2-3 in cyclic order; fix the smallest rim image at position 0 and
# orient the rim so that position 1 beats position 3
_W4_ORDER = [_W4_HUB, 0, 2, 1, 3]
_W4_LESS = [(0, 1), (0, 2), (0, 3), (1, 3)]


def find_w4(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> ImmersionModel | None:
    """A model of the wheel with four spokes in ``g`` (H-ids as in ``wheel(4)``)."""
    if g.max_degree() < 4:
        return None
    return _Search(g, W4, node_budget, order=_W4_ORDER, less_than=_W4_LESS).run()


def contains_w4(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    return find_w4(g, node_budget) is not None


def decide_w4(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> bool | None:
    """``contains_w4`` with budget exhaustion mapped to ``None``."""
    try:
        return contains_w4(g, node_budget)
    except BudgetExhausted:
        return None
