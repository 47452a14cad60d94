"""Brute-force reference implementations.

These are deliberately naive and share no search code with the production
engines; the test-suite and the ``prop-test`` campaigns compare the two.
Intended for graphs with roughly a dozen edges at most.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .multigraph import Multigraph


def simple_paths(g: Multigraph, a: int, b: int) -> list[int]:
    """Every vertex-simple a–b path, each as a bitmask of edge indices."""
    out: list[int] = []

    def walk(v: int, visited: int, used: int) -> None:
        if v == b:
            out.append(used)
            return
        for e in g.incidence[v]:
            w = g.other(e, v)
            if not visited >> w & 1:
                walk(w, visited | 1 << w, used | 1 << e)

    walk(a, 1 << a, 0)
    return out


def has_immersion(g: Multigraph, h: Multigraph) -> bool:
    """Try every injective vertex map, then every edge-disjoint path system."""
    if h.n > g.n:
        return False
    cache: dict[tuple[int, int], list[int]] = {}

    def paths(a: int, b: int) -> list[int]:
        key = (a, b) if a < b else (b, a)
        if key not in cache:
            cache[key] = simple_paths(g, key[0], key[1])
        return cache[key]

    for image in permutations(range(g.n), h.n):
        options = [paths(image[u], image[v]) for u, v in h.edges]
        if any(not o for o in options):
            continue
        order = sorted(range(h.m), key=lambda i: len(options[i]))

        def pack(i: int, used: int) -> bool:
            if i == len(order):
                return True
            for p in options[order[i]]:
                if not p & used and pack(i + 1, used | p):
                    return True
            return False

        if pack(0, 0):
            return True
    return False


def max_disjoint_paths(g: Multigraph, a: set[int], b: set[int]) -> int:
    """Largest family of pairwise edge-disjoint a–b paths, by exhaustive packing."""
    pool = []
    for s in a:
        for t in b:
            pool.extend(simple_paths(g, s, t))
    pool = sorted(set(pool), key=lambda p: bin(p).count("1"))
    best = 0

    def grow(start: int, used: int, count: int) -> None:
        nonlocal best
        best = max(best, count)
        for i in range(start, len(pool)):
            if not pool[i] & used:
                grow(i + 1, used | pool[i], count + 1)

    grow(0, 0, 0)
    return best


def _reach(g: Multigraph, sources: set[int], removed: set[int]) -> frozenset[int]:
    seen = set(sources)
    stack = list(sources)
    while stack:
        u = stack.pop()
        for e in g.incidence[u]:
            if e not in removed:
                w = g.other(e, u)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return frozenset(seen)


def important_separators(g: Multigraph, x: set[int], y: set[int], k: int) -> set[tuple[frozenset[int], frozenset[int]]]:
    """Filter every edge subset of size <= k through the definition."""
    separators = {}
    for size in range(0, min(k, g.m) + 1):
        for combo in combinations(range(g.m), size):
            s = set(combo)
            r = _reach(g, x, s)
            if not r & y:
                separators[frozenset(s)] = r
    result = set()
    for s, r in separators.items():
        minimal = all(frozenset(s - {e}) not in separators for e in s)
        if not minimal:
            continue
        beaten = any(len(s2) <= len(s) and r < r2 for s2, r2 in separators.items())
        if not beaten:
            result.add((s, r))
    return result


def internal_cuts(g: Multigraph, max_order: int) -> set[frozenset[int]]:
    """Every minimal cut of order <= max_order with both sides of size >= 2."""
    base = len(_components(g, set()))
    out = set()
    for size in range(1, max_order + 1):
        for combo in combinations(range(g.m), size):
            comps = _components(g, set(combo))
            if len(comps) != base + 1:
                continue
            if any(len(_components(g, set(sub))) > base
                   for r in range(1, size) for sub in combinations(combo, r)):
                continue
            u, v = g.edges[combo[0]]
            sides = [c for c in comps if u in c or v in c]
            if len(sides) == 2 and all(len(c) >= 2 for c in sides):
                out.add(frozenset(combo))
    return out


def _components(g: Multigraph, removed: set[int]) -> list[frozenset[int]]:
    left = set(range(g.n))
    comps = []
    while left:
        v = left.pop()
        c = _reach(g, {v}, removed)
        left -= c
        comps.append(c)
    return comps


def treewidth(g: Multigraph) -> int:
    """Minimum over all elimination orders of the largest eliminated degree."""
    n = g.n
    if n == 0:
        return 0
    base = [set(g.adjacency[v]) for v in range(n)]
    best = n - 1
    for order in permutations(range(n)):
        adj = [set(s) for s in base]
        width = 0
        for v in order:
            nb = adj[v]
            width = max(width, len(nb))
            if width >= best:
                break
            for a in nb:
                adj[a] |= nb - {a}
                adj[a].discard(v)
            adj[v] = set()
        best = min(best, width)
    return best


def isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    """Try every vertex permutation."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    target = sorted(g2.edges)
    for perm in permutations(range(g1.n)):
        if sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g1.edges) == target:
            return True
    return False
