"""Seeded randomized campaigns checking the edge-sum claims and the engines against oracles.

Every trial draws from its own ``random.Random(f"{campaign}:{seed}:{trial}")``
so trials are independent of each other and of how they are spread over
worker processes.  Results come back ordered by trial index.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import oracles
from .edgesum import decompose, recompose, leaves
from .flows import enumerate_internal_cuts
from .formats import format_graph
from .generators import random_multigraph
from .immersion import DEFAULT_NODE_BUDGET
from .invariance import FAILS, HOLDS, UNKNOWN, Part, attach_hub, check_invariance
from .multigraph import Multigraph, is_isomorphic
from .separators import enumerate_important_separators

CAMPAIGNS = ("theorem3", "lemma3.1", "impsep-oracle", "roundtrip")
DEFAULT_MAX_N = {"theorem3": 8, "lemma3.1": 6, "impsep-oracle": 5, "roundtrip": 12}


@dataclass
class TrialResult:
    trial: int
    status: str  # HOLDS, FAILS or UNKNOWN
    detail: dict = field(default_factory=dict)
    case: dict | None = None  # self-contained dump for failures


@dataclass
class CampaignReport:
    campaign: str
    config: dict
    results: list[TrialResult]

    @property
    def holds(self) -> int:
        return sum(r.status == HOLDS for r in self.results)

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if r.status == FAILS]

    @property
    def unknown(self) -> int:
        return sum(r.status == UNKNOWN for r in self.results)

    @property
    def decided(self) -> int:
        return len(self.results) - self.unknown

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.holds}/{self.decided} hold (decided), {self.unknown} unknown"

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "config": self.config,
            "summary": self.summary(),
            "holds": self.holds,
            "decided": self.decided,
            "unknown": self.unknown,
            "failures": [r.trial for r in self.failures],
            "trials": [{"trial": r.trial, "status": r.status, **r.detail} for r in self.results],
        }


def trial_rng(campaign: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{campaign}:{seed}:{trial}")


def random_connected(rng: random.Random, n: int, max_multiplicity: int = 3, extra_max: int | None = None) -> Multigraph:
    """Connected random multigraph on ``n`` vertices with a random edge surplus."""
    cap = max_multiplicity * n * (n - 1) // 2
    hi = cap if extra_max is None else min(cap, n - 1 + extra_max)
    m = rng.randint(max(n - 1, 0), max(hi, n - 1))
    return random_multigraph(n, m, max_multiplicity, rng.getrandbits(64), connected=True)


def random_part(rng: random.Random, max_n: int, t: int) -> Part:
    """A connected body of 2..max_n-1 vertices plus a hub of degree t."""
    body_n = rng.randint(2, max_n - 1)
    body = random_connected(rng, body_n, max_multiplicity=rng.choice((1, 2, 3)), extra_max=2 * body_n)
    anchors = [rng.randrange(body_n) for _ in range(t)]
    return attach_hub(body, anchors)


def random_composition(rng: random.Random, max_n: int, t_choices=(1, 2, 3)):
    t = rng.choice(t_choices)
    p1 = random_part(rng, max_n, t)
    p2 = random_part(rng, max_n, t)
    s1 = list(p1.graph.incidence[p1.hub])
    s2 = list(p2.graph.incidence[p2.hub])
    rng.shuffle(s2)
    return p1, p2, tuple(zip(s1, s2))


def _composition_case(p1: Part, p2: Part, pi, rep) -> dict:
    return {
        "g1": format_graph(p1.graph), "v1": p1.hub,
        "g2": format_graph(p2.graph), "v2": p2.hub,
        "pi": [list(p) for p in pi],
        "composed": format_graph(rep.composed),
        "w4": {"g1": rep.w4_left, "g2": rep.w4_right, "composed": rep.w4_composed},
        "lemma": rep.lemma,
    }


def _theorem3(seed: int, trial: int, max_n: int, budget: int) -> TrialResult:
    rng = trial_rng("theorem3", seed, trial)
    p1, p2, pi = random_composition(rng, max_n)
    rep = check_invariance(p1.graph, p1.hub, p2.graph, p2.hub, pi, budget, lemma=False)
    detail = {"t": rep.t, "n": rep.composed.n, "m": rep.composed.m,
              "w4": [rep.w4_left, rep.w4_right, rep.w4_composed]}
    case = _composition_case(p1, p2, pi, rep) if rep.verdict == FAILS else None
    return TrialResult(trial, rep.verdict, detail, case)


def _lemma31(seed: int, trial: int, max_n: int, budget: int) -> TrialResult:
    rng = trial_rng("lemma3.1", seed, trial)
    p1, p2, pi = random_composition(rng, max_n)
    rep = check_invariance(p1.graph, p1.hub, p2.graph, p2.hub, pi, budget, lemma=True)
    if any(x is False for x in rep.lemma):
        status = FAILS
    elif all(x is True for x in rep.lemma):
        status = HOLDS
    else:
        status = UNKNOWN
    detail = {"t": rep.t, "n": rep.composed.n, "lemma": rep.lemma}
    case = _composition_case(p1, p2, pi, rep) if status == FAILS else None
    return TrialResult(trial, status, detail, case)


def _impsep(seed: int, trial: int, max_n: int, budget: int) -> TrialResult:
    rng = trial_rng("impsep-oracle", seed, trial)
    n = rng.randint(2, max_n)
    cap = 3 * n * (n - 1) // 2
    m = rng.randint(0, min(8, cap))
    g = random_multigraph(n, m, 3, rng.getrandbits(64))
    verts = list(range(n))
    rng.shuffle(verts)
    nx = rng.randint(1, n - 1)
    ny = rng.randint(1, n - nx)
    x, y = sorted(verts[:nx]), sorted(verts[nx:nx + ny])
    k = rng.randint(0, 4)
    got = {(frozenset(s.edges), frozenset(s.reachable)) for s in enumerate_important_separators(g, x, y, k)}
    want = oracles.important_separators(g, set(x), set(y), k)
    ok = got == want and len(got) <= 4 ** k
    detail = {"n": n, "m": m, "k": k, "count": len(got)}
    case = None
    if not ok:
        case = {"graph": format_graph(g), "x": x, "y": y, "k": k,
                "engine": sorted([sorted(s), sorted(r)] for s, r in got),
                "oracle": sorted([sorted(s), sorted(r)] for s, r in want)}
    return TrialResult(trial, HOLDS if ok else FAILS, detail, case)


def _roundtrip(seed: int, trial: int, max_n: int, budget: int) -> TrialResult:
    rng = trial_rng("roundtrip", seed, trial)
    n = rng.randint(1, max_n)
    g = random_connected(rng, n, max_multiplicity=rng.choice((1, 2, 3)), extra_max=n)
    tree = decompose(g)
    back = recompose(tree)
    primes = leaves(tree)
    prime_ok = all(not enumerate_internal_cuts(p, 3) for p in primes)
    ok = back == g and is_isomorphic(back, g) and prime_ok
    detail = {"n": g.n, "m": g.m, "leaves": len(primes)}
    case = None if ok else {"graph": format_graph(g), "recomposed": format_graph(back), "primes_ok": prime_ok}
    return TrialResult(trial, HOLDS if ok else FAILS, detail, case)


_RUNNERS: dict[str, Callable[[int, int, int, int], TrialResult]] = {
    "theorem3": _theorem3,
    "lemma3.1": _lemma31,
    "impsep-oracle": _impsep,
    "roundtrip": _roundtrip,
}


def _run_one(args: tuple[str, int, int, int, int]) -> TrialResult:
    name, seed, trial, max_n, budget = args
    return _RUNNERS[name](seed, trial, max_n, budget)


def run_campaign(name: str, trials: int, seed: int, max_n: int | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET, workers: int = 1) -> CampaignReport:
    if name not in _RUNNERS:
        raise ValueError(f"unknown campaign {name!r}; choose from {', '.join(CAMPAIGNS)}")
    if max_n is None:
        max_n = DEFAULT_MAX_N[name]
    if max_n < (3 if name in ("theorem3", "lemma3.1") else 2 if name == "impsep-oracle" else 1):
        raise ValueError(f"max_n={max_n} is too small for {name}")
    jobs = [(name, seed, i, max_n, node_budget) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_run_one(j) for j in jobs]
    config = {"campaign": name, "trials": trials, "seed": seed, "max_n": max_n,
              "node_budget": node_budget, "workers": workers}
    return CampaignReport(name, config, results)


def dump_failures(report: CampaignReport, directory: str | Path) -> list[Path]:
    """Write each failing trial as a replayable fixture directory."""
    root = Path(directory)
    written = []
    for r in report.failures:
        d = root / f"{report.campaign}-seed{report.config['seed']}-trial{r.trial:05d}"
        d.mkdir(parents=True, exist_ok=True)
        case = r.case or {}
        for key in ("g1", "g2", "composed", "graph", "recomposed"):
            if isinstance(case.get(key), str):
                (d / f"{key}.txt").write_text(case[key])
        (d / "case.json").write_text(json.dumps({"trial": r.trial, "config": report.config, **case}, indent=2) + "\n")
        written.append(d)
    return written
