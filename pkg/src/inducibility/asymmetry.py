"""Checker for the five strong-asymmetry conditions and the Monte Carlo study.

Every threshold is compared in exact integer arithmetic:

1. every degree d satisfies 4h < 10d < 6h;
2. every pair has agreement set size a with 100a <= 55h, every triple 10a <= 3h;
3. some distinguishing set has at most floor(3 log2 h) vertices;
4. no blowup of H[S] (|S| <= 0.7h, 0.8h..h vertices, parts <= h/100) is
   blowup floor(1e-5 h^2)-close to H[K];
5. no bijection between ceil(0.7h)-sets J, K with >= 0.1h non-stationary
   points is floor(1e-5 h^2)-close to an isomorphism H[J] -> H[K].

Conditions 4 and 5 are universal statements.  Beyond tiny h they can only be
refuted by an explicit counterexample, so a failed search reports
``no_counterexample_found``, never ``holds_exact``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .blowup import make_blowup
from .graph import Graph, derive_seeds, induced_subgraph, mask_of, members, sample_gnp

HOLDS = "holds_exact"
VACUOUS = "holds_vacuous"
REFUTED = "refuted"
NO_CEX = "no_counterexample_found"
# an existence condition whose witness search came up empty without exhausting
UNDETERMINED = "undetermined"

EXACT_DISTINGUISHING_LIMIT = 20
EXACT_COND5_LIMIT = 10
NUMPY_THRESHOLD = 48


@dataclass
class ConditionResult:
    status: str
    witness: Any = None
    budget: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (HOLDS, VACUOUS)


@dataclass
class PhReport:
    h: int
    conditions: dict[int, ConditionResult] = field(default_factory=dict)

    def passed(self, which: Iterable[int] = (1, 2, 3, 4, 5)) -> bool:
        return all(c in self.conditions and self.conditions[c].passed for c in which)

    def as_dict(self) -> dict:
        return {
            "h": self.h,
            "conditions": {
                str(c): {"status": r.status, "witness": _jsonable(r.witness), "budget": r.budget,
                         "detail": r.detail}
                for c, r in sorted(self.conditions.items())
            },
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in seq]
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


# --- thresholds --------------------------------------------------------------


def distinguishing_bound(h: int) -> int:
    """floor(3 log2 h) as the largest m with 2^m <= h^3."""
    return (h ** 3).bit_length() - 1


def edit_floor(h: int) -> int:
    return h * h // 100_000


def cond5_size(h: int) -> int:
    return -(-7 * h // 10)


# --- agreement and distinguishing sets -------------------------------------


def agreement_mask(h_graph: Graph, smask: int) -> int:
    full = h_graph.full_mask
    all_in = full
    none_in = full
    for v in members(smask):
        r = h_graph.rows[v]
        all_in &= r
        none_in &= ~r
    return (all_in | none_in) & full & ~smask


def agreement_set(h_graph: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``s`` adjacent to all of ``s`` or to none of it."""
    smask = mask_of(s)
    if smask == 0 or smask == h_graph.full_mask:
        raise ValueError("agreement set needs a nonempty proper subset")
    if smask >> h_graph.n:
        raise ValueError("vertex out of range")
    return frozenset(members(agreement_mask(h_graph, smask)))


def is_distinguishing(h_graph: Graph, qmask: int) -> bool:
    """No two vertices outside Q see Q identically."""
    seen = set()
    rest = h_graph.full_mask & ~qmask
    for v in members(rest):
        sig = h_graph.rows[v] & qmask
        if sig in seen:
            return False
        seen.add(sig)
    return True


@dataclass
class DistinguishingResult:
    qset: frozenset[int] | None
    exhaustive: bool

    @property
    def none_exists(self) -> bool:
        return self.qset is None and self.exhaustive


def find_distinguishing_set(h_graph: Graph, max_size: int, strategy: str = "exact",
                            trials: int = 200, seed: int = 0) -> DistinguishingResult:
    """Search for a distinguishing set of at most ``max_size`` vertices.

    ``exact`` tries all subsets by increasing size, so it returns a smallest
    one or proves none exists.  ``heuristic`` tries the ``max_size`` vertices
    whose degrees split the rest most evenly, then seeded random subsets.
    """
    n = h_graph.n
    if max_size >= n:
        raise ValueError("max_size must be smaller than the order")
    if strategy == "exact":
        for k in range(max_size + 1):
            for combo in itertools.combinations(range(n), k):
                qmask = mask_of(combo)
                if is_distinguishing(h_graph, qmask):
                    return DistinguishingResult(frozenset(combo), True)
        return DistinguishingResult(None, True)
    if strategy != "heuristic":
        raise ValueError(f"unknown strategy {strategy!r}")
    degs = h_graph.degrees()
    balanced = sorted(range(n), key=lambda v: (abs(2 * degs[v] - (n - 1)), v))[:max_size]
    if is_distinguishing(h_graph, mask_of(balanced)):
        return DistinguishingResult(frozenset(balanced), False)
    rng = random.Random(seed)
    for _ in range(trials):
        q = rng.sample(range(n), max_size)
        if is_distinguishing(h_graph, mask_of(q)):
            return DistinguishingResult(frozenset(q), False)
    return DistinguishingResult(None, False)


# --- conditions 1-3 ----------------------------------------------------------


def _cond1(g: Graph) -> ConditionResult:
    h = g.n
    for v, d in enumerate(g.degrees()):
        if not (4 * h < 10 * d < 6 * h):
            return ConditionResult(REFUTED, {"vertex": v, "degree": d})
    return ConditionResult(HOLDS)


def _sign_matrix(g: Graph) -> np.ndarray:
    h = g.n
    a = np.zeros((h, h), dtype=np.int32)
    for u in range(h):
        for v in members(g.rows[u]):
            a[u, v] = 1
    return 2 * a - 1


def max_agreements(g: Graph) -> tuple[tuple[int, tuple[int, int]], tuple[int, tuple[int, int, int]] | None]:
    """Largest pair and triple agreement sets, with a vertex tuple attaining each.

    Uses the identity that three signs agree iff (1 + s_a s_b + s_a s_c + s_b s_c)/4 = 1,
    so triple counts come from pairwise sign products without a cubic loop over w.
    """
    h = g.n
    s = _sign_matrix(g)
    mp = s @ s.T + 2 * s  # sum over w outside {a, b} of s_a(w) s_b(w)
    pair = (h - 2 + mp) // 2
    iu = np.triu_indices(h, 1)
    k = int(np.argmax(pair[iu]))
    best_pair = (int(pair[iu][k]), (int(iu[0][k]), int(iu[1][k])))
    best_triple = None
    for a in range(h - 2):
        sub = slice(a + 1, h)
        sa = s[sub, a][:, None] * s[sub, sub]  # sa[c, b] = s[c,a] s[c,b]
        x = mp[a, sub][:, None] + mp[a, sub][None, :] + mp[sub, sub] - sa - sa.T \
            - np.outer(s[a, sub], s[a, sub])
        m = x.shape[0]
        tri = np.triu_indices(m, 1)
        vals = x[tri]
        j = int(np.argmax(vals))
        val = (h - 3 + int(vals[j])) // 4
        if best_triple is None or val > best_triple[0]:
            best_triple = (val, (a, a + 1 + int(tri[0][j]), a + 1 + int(tri[1][j])))
    return best_pair, best_triple


def _cond2(g: Graph) -> ConditionResult:
    h = g.n
    if h >= NUMPY_THRESHOLD:
        (pv, pair), triple = max_agreements(g)
        if 100 * pv > 55 * h:
            return ConditionResult(REFUTED, {"set": list(pair), "size": pv})
        if triple is not None and 10 * triple[0] > 3 * h:
            return ConditionResult(REFUTED, {"set": list(triple[1]), "size": triple[0]})
        return ConditionResult(HOLDS)
    for u, v in itertools.combinations(range(h), 2):
        size = agreement_mask(g, (1 << u) | (1 << v)).bit_count()
        if 100 * size > 55 * h:
            return ConditionResult(REFUTED, {"set": [u, v], "size": size})
    for t in itertools.combinations(range(h), 3):
        size = agreement_mask(g, mask_of(t)).bit_count()
        if 10 * size > 3 * h:
            return ConditionResult(REFUTED, {"set": list(t), "size": size})
    return ConditionResult(HOLDS)


def _cond3(g: Graph, trials: int, seed: int) -> ConditionResult:
    h = g.n
    m = min(distinguishing_bound(h), h - 1)
    if h <= EXACT_DISTINGUISHING_LIMIT:
        res = find_distinguishing_set(g, m, "exact")
        if res.qset is not None:
            return ConditionResult(HOLDS, {"Q": sorted(res.qset)}, detail=f"bound {m}")
        return ConditionResult(REFUTED, {"max_size": m}, detail="exhaustive search found none")
    res = find_distinguishing_set(g, m, "heuristic", trials=trials, seed=seed)
    if res.qset is not None:
        return ConditionResult(HOLDS, {"Q": sorted(res.qset)}, budget=trials, detail=f"bound {m}")
    return ConditionResult(UNDETERMINED, None, budget=trials, detail="no distinguishing set found")


def check_ph_fast(g: Graph, trials: int = 200, seed: int = 0) -> PhReport:
    """Conditions 1-3."""
    return PhReport(g.n, {1: _cond1(g), 2: _cond2(g), 3: _cond3(g, trials, seed)})


# --- condition 4 -------------------------------------------------------------


def cond4_vacuous(h: int) -> bool:
    """No legal (S, partition, K) exists: floor(0.7h) * floor(h/100) < ceil(0.8h)."""
    return (7 * h // 10) * (h // 100) < -(-8 * h // 10)


def cond4_feasible_search(h: int) -> bool:
    """Direct search for any legal configuration (zero part sizes allowed)."""
    amax = 0
    while 100 * (amax + 1) <= h:
        amax += 1
    sums = {0}
    s = 0
    while 10 * (s + 1) <= 7 * h:
        s += 1
        sums = {x + a for x in sums for a in range(amax + 1) if x + a <= h}
        if any(10 * k >= 8 * h for k in sums):
            return True
    return False


def _cond4_cost(g: Graph, s_list, sizes, k_list, mapping) -> int:
    parts = [p for p, a in enumerate(sizes) for _ in range(a)]
    base = induced_subgraph(g, s_list)
    target = induced_subgraph(g, k_list)
    cost = 0
    for u in range(len(parts)):
        for v in range(u + 1, len(parts)):
            pu, pv = parts[u], parts[v]
            if pu != pv and base.adj(pu, pv) != target.adj(mapping[u], mapping[v]):
                cost += 1
    return cost


def verify_cond4_witness(g: Graph, w: dict) -> bool:
    h = g.n
    s_list, sizes, k_list, mapping = w["S"], w["sizes"], w["K"], w["map"]
    k = sum(sizes)
    ok = (len(set(s_list)) == len(s_list) and 10 * len(s_list) <= 7 * h
          and len(sizes) == len(s_list) and all(0 <= a and 100 * a <= h for a in sizes)
          and 10 * k >= 8 * h and k <= h and len(set(k_list)) == len(k_list) == k
          and sorted(mapping) == list(range(k)))
    return ok and _cond4_cost(g, s_list, sizes, k_list, mapping) <= edit_floor(h)


def _cond4(g: Graph, mode: str, budget: int, seed: int) -> ConditionResult:
    from .blowup import blowup_distance

    h = g.n
    if cond4_vacuous(h):
        return ConditionResult(VACUOUS, detail="no blowup satisfies the size constraints")
    if mode == "exact":
        raise ValueError("exact condition 4 is infeasible whenever it is not vacuous")
    rng = random.Random(seed)
    amax = h // 100
    kmin = -(-8 * h // 10)
    smax = 7 * h // 10
    used = 0
    attempts = 0
    while used < budget:
        attempts += 1
        s = rng.randint(-(-kmin // amax), smax)
        k = rng.randint(kmin, min(h, s * amax))
        sizes = [k // s + (1 if i < k % s else 0) for i in range(s)]
        for _ in range(s):
            i, j = rng.randrange(s), rng.randrange(s)
            if sizes[i] > 0 and sizes[j] < amax:
                sizes[i] -= 1
                sizes[j] += 1
        s_list = sorted(rng.sample(range(h), s))
        k_list = sorted(rng.sample(range(h), k))
        keep = [i for i in range(s) if sizes[i] > 0]
        base = induced_subgraph(g, [s_list[i] for i in keep])
        spec = make_blowup(base, [sizes[i] for i in keep])
        share = max(1, budget - used)
        res = blowup_distance(spec, induced_subgraph(g, k_list), "search", budget=share,
                              seed=rng.getrandbits(32))
        used += share
        if res.value <= edit_floor(h):
            # parts of the realized blowup follow the nonzero entries of sizes in order
            w = {"S": s_list, "sizes": sizes, "K": k_list, "map": list(res.mapping)}
            return ConditionResult(REFUTED, w, budget=used)
    return ConditionResult(NO_CEX, budget=used, detail=f"{attempts} sampled configurations")


# --- condition 5 -------------------------------------------------------------


def verify_cond5_witness(g: Graph, w: dict) -> bool:
    h = g.n
    j_list, k_list, pi = w["J"], w["K"], {int(a): b for a, b in dict(w["pi"]).items()}
    k = cond5_size(h)
    if len(set(j_list)) != k or len(set(k_list)) != k or sorted(pi) != sorted(j_list):
        return False
    if sorted(pi.values()) != sorted(k_list):
        return False
    moved = sum(1 for a, b in pi.items() if a != b)
    if 10 * moved < h:
        return False
    edits = sum(1 for a, b in itertools.combinations(j_list, 2) if g.adj(a, b) != g.adj(pi[a], pi[b]))
    return edits <= edit_floor(h)


def _cond5_exact(g: Graph) -> ConditionResult:
    h = g.n
    if h > EXACT_COND5_LIMIT:
        raise ValueError(f"exact condition 5 limited to h <= {EXACT_COND5_LIMIT}")
    k = cond5_size(h)
    budget = edit_floor(h)
    rows = g.rows
    for j_list in itertools.combinations(range(h), k):
        img = [0] * k

        def rec(i: int, used: int, cost: int):
            if i == k:
                moved = sum(1 for a, b in zip(j_list, img) if a != b)
                if 10 * moved >= h:
                    return dict(zip(j_list, img))
                return None
            x = j_list[i]
            for y in range(h):
                if (used >> y) & 1:
                    continue
                add = 0
                for t in range(i):
                    if ((rows[x] >> j_list[t]) & 1) != ((rows[y] >> img[t]) & 1):
                        add += 1
                if cost + add > budget:
                    continue
                img[i] = y
                found = rec(i + 1, used | (1 << y), cost + add)
                if found is not None:
                    return found
            return None

        pi = rec(0, 0, 0)
        if pi is not None:
            w = {"J": list(j_list), "K": sorted(pi.values()), "pi": pi}
            return ConditionResult(REFUTED, w)
    return ConditionResult(HOLDS)


def _cond5_refute(g: Graph, budget: int, seed: int) -> ConditionResult:
    h = g.n
    k = cond5_size(h)
    need = -(-h // 10)
    floor = edit_floor(h)
    rng = random.Random(seed)
    rows = g.rows
    used = 0
    restarts = 0
    while used < budget:
        restarts += 1
        j_list = rng.sample(range(h), k)
        k_list = rng.sample(range(h), k)
        rng.shuffle(k_list)
        img = list(k_list)

        def cost_of(i):
            x, y = j_list[i], img[i]
            return sum(1 for t in range(k) if t != i and
                       ((rows[x] >> j_list[t]) & 1) != ((rows[y] >> img[t]) & 1))

        total = sum(cost_of(i) for i in range(k)) // 2
        moved = sum(1 for a, b in zip(j_list, img) if a != b)
        stall = 0
        while used < budget and stall < 4 * k:
            used += 1
            a, b = rng.sample(range(k), 2)
            before = cost_of(a) + cost_of(b)
            pair_before = ((rows[j_list[a]] >> j_list[b]) & 1) != ((rows[img[a]] >> img[b]) & 1)
            img[a], img[b] = img[b], img[a]
            after = cost_of(a) + cost_of(b)
            pair_after = ((rows[j_list[a]] >> j_list[b]) & 1) != ((rows[img[a]] >> img[b]) & 1)
            delta = (after - pair_after) - (before - pair_before)
            new_moved = sum(1 for x, y in zip(j_list, img) if x != y)
            if delta < 0 and 10 * new_moved >= h:
                total += delta
                moved = new_moved
                stall = 0
            else:
                img[a], img[b] = img[b], img[a]
                stall += 1
            if total <= floor and 10 * moved >= h:
                pi = dict(zip(j_list, img))
                w = {"J": sorted(j_list), "K": sorted(img), "pi": pi}
                return ConditionResult(REFUTED, w, budget=used)
    return ConditionResult(NO_CEX, budget=used, detail=f"{restarts} restarts, need {need} moved points")


def check_ph_deep(g: Graph, mode: str = "exact", budget: int = 2000, seed: int = 0) -> PhReport:
    """Conditions 4-5; ``mode`` is ``exact`` or ``refute``."""
    if mode not in ("exact", "refute"):
        raise ValueError(f"unknown mode {mode!r}")
    seeds = derive_seeds(seed, 2)
    c4 = _cond4(g, "refute", budget, seeds[0]) if not cond4_vacuous(g.n) else _cond4(g, mode, budget, seeds[0])
    c5 = _cond5_exact(g) if mode == "exact" else _cond5_refute(g, budget, seeds[1])
    return PhReport(g.n, {4: c4, 5: c5})


def check_ph(g: Graph, mode: str = "exact", budget: int = 2000, seed: int = 0, trials: int = 200) -> PhReport:
    fast = check_ph_fast(g, trials, seed)
    deep = check_ph_deep(g, mode, budget, seed)
    fast.conditions.update(deep.conditions)
    return fast


def verify_witness(g: Graph, condition: int, result: ConditionResult) -> bool:
    """Re-check a refutation from its witness alone."""
    if result.status != REFUTED:
        return False
    w = result.witness
    h = g.n
    if condition == 1:
        d = g.degree(w["vertex"])
        return d == w["degree"] and not (4 * h < 10 * d < 6 * h)
    if condition == 2:
        size = agreement_mask(g, mask_of(w["set"])).bit_count()
        if size != w["size"]:
            return False
        return 100 * size > 55 * h if len(w["set"]) == 2 else 10 * size > 3 * h
    if condition == 3:
        return find_distinguishing_set(g, w["max_size"], "exact").none_exists
    if condition == 4:
        return verify_cond4_witness(g, w)
    if condition == 5:
        return verify_cond5_witness(g, w)
    raise ValueError(f"no condition {condition}")


# --- Monte Carlo -----------------------------------------------------------

CSV_COLUMNS = ("h", "condition", "trials", "holds", "refuted", "vacuous", "budget", "unresolved")


def mc_theorem1(h: int, trials: int, seed: int, deep_budget: int = 0, deep_mode: str | None = None) -> list[dict]:
    """Per-condition pass statistics over seeded G(h, 1/2) samples.

    ``deep_budget = 0`` skips the search for conditions 4-5 (vacuous verdicts
    are still reported); ``deep_mode`` defaults to exact for h <= 10.
    """
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if deep_mode is None:
        deep_mode = "exact" if h <= EXACT_COND5_LIMIT else "refute"
    tallies = {c: {"holds": 0, "refuted": 0, "vacuous": 0, "unresolved": 0, "budget": 0}
               for c in ("1", "2", "3", "4", "5", "1-3")}
    for s in derive_seeds(seed, trials):
        g = sample_gnp(h, "1/2", s)
        rep = check_ph_fast(g, seed=s)
        if cond4_vacuous(h):
            rep.conditions[4] = ConditionResult(VACUOUS)
        elif deep_budget > 0:
            rep.conditions[4] = _cond4(g, "refute", deep_budget, s)
        else:
            rep.conditions[4] = ConditionResult(NO_CEX, detail="not searched")
        if deep_mode == "exact":
            rep.conditions[5] = _cond5_exact(g)
        elif deep_budget > 0:
            rep.conditions[5] = _cond5_refute(g, deep_budget, s)
        else:
            rep.conditions[5] = ConditionResult(NO_CEX, detail="not searched")
        for c, r in rep.conditions.items():
            t = tallies[str(c)]
            t["budget"] += r.budget
            if r.status == HOLDS:
                t["holds"] += 1
            elif r.status == VACUOUS:
                t["vacuous"] += 1
            elif r.status == REFUTED:
                t["refuted"] += 1
            else:
                t["unresolved"] += 1
        t = tallies["1-3"]
        if rep.passed((1, 2, 3)):
            t["holds"] += 1
        elif any(rep.conditions[c].status == REFUTED for c in (1, 2, 3)):
            t["refuted"] += 1
        else:
            t["unresolved"] += 1
    if trials == 0:
        return []
    return [{"h": h, "condition": c, "trials": trials, **tallies[c]} for c in ("1", "2", "3", "4", "5", "1-3")]
