"""Exhaustive catalogues of small multigraphs, one representative per isomorphism class."""

from __future__ import annotations

from functools import lru_cache

from .multigraph import Multigraph, _refine, is_isomorphic


def _invariant(g: Multigraph) -> tuple:
    (colors,) = _refine([g])
    return (g.n, g.m, tuple(sorted(g.degrees)), tuple(sorted(g.multiplicity.values())),
            _color_profile(g, colors))


def _color_profile(g: Multigraph, colors: list[int]) -> tuple:
    # refinement colours are only comparable within one call, so summarise
    # each class by its size and degree, which are isomorphism invariant
    sig = {}
    for v in range(g.n):
        nb = tuple(sorted((g.degrees[w], g.mult(v, w)) for w in g.adjacency[v]))
        sig.setdefault(colors[v], []).append((g.degrees[v], nb))
    return tuple(sorted((len(vs), tuple(sorted(vs))) for vs in sig.values()))


@lru_cache(maxsize=None)
def multigraphs(n: int, max_m: int, max_multiplicity: int) -> tuple[tuple[Multigraph, ...], ...]:
    """Isomorphism classes of loop-free multigraphs on ``n`` vertices.

    Entry ``m`` of the result lists the classes with exactly ``m`` edges,
    for ``m = 0..max_m``; per-pair multiplicity is capped.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    levels: list[tuple[Multigraph, ...]] = [(Multigraph(n),)]
    for _ in range(max_m):
        buckets: dict[tuple, list[Multigraph]] = {}
        out: list[Multigraph] = []
        for g in levels[-1]:
            for u, v in pairs:
                if g.mult(u, v) >= max_multiplicity:
                    continue
                cand = g.add_edges([(u, v)])
                key = _invariant(cand)
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic(cand, other) for other in bucket):
                    continue
                bucket.append(cand)
                out.append(cand)
        levels.append(tuple(out))
    return tuple(levels)


def connected_multigraphs(max_n: int, max_m: int, max_multiplicity: int | None = None,
                          min_n: int = 1) -> list[Multigraph]:
    """Connected classes with ``min_n <= n <= max_n`` and at most ``max_m`` edges."""
    out = []
    for n in range(min_n, max_n + 1):
        cap = max_m if max_multiplicity is None else max_multiplicity
        for level in multigraphs(n, max_m, max(cap, 1)):
            out.extend(g for g in level if g.is_connected())
    return out


def simple_graphs(max_n: int, max_m: int | None = None) -> list[Multigraph]:
    out = []
    for n in range(1, max_n + 1):
        limit = n * (n - 1) // 2 if max_m is None else min(max_m, n * (n - 1) // 2)
        for level in multigraphs(n, limit, 1):
            out.extend(level)
    return out
