"""Blowups, balanced and nested balanced blowups, and blowup distance."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .canon import canonical_form
from .enumeration import MAX_ENUM_ORDER, enumerate_graphs
from .formulas import PartitionSeq, equitable_partition
from .graph import Graph, empty_graph

LeafPolicy = Callable[[int], Graph]


class NestedCapExceeded(RuntimeError):
    def __init__(self, msg: str, partial: int):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class BlowupSpec:
    base: Graph
    sizes: PartitionSeq
    parts: tuple[int, ...]
    realized: Graph

    def part_masks(self) -> list[int]:
        masks = [0] * self.base.n
        for v, p in enumerate(self.parts):
            masks[p] |= 1 << v
        return masks

    def is_blowup_pair(self, u: int, v: int) -> bool:
        return self.parts[u] != self.parts[v]


def verify_blowup(spec: BlowupSpec, intra_free: bool = False) -> bool:
    """Full O(n^2) check of cross-part adjacency (and empty parts unless ``intra_free``)."""
    g, base, parts = spec.realized, spec.base, spec.parts
    if len(parts) != g.n:
        return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            pu, pv = parts[u], parts[v]
            if pu != pv:
                if g.adj(u, v) != base.adj(pu, pv):
                    return False
            elif not intra_free and g.adj(u, v):
                return False
    return True


def make_blowup(base: Graph, sizes: PartitionSeq | Sequence[int]) -> BlowupSpec:
    """H(a_1, ..., a_h): part i holds vertices numbered consecutively, part by part."""
    if not isinstance(sizes, PartitionSeq):
        sizes = PartitionSeq(tuple(sizes))
    if len(sizes.entries) != base.n:
        raise ValueError(f"need {base.n} part sizes, got {len(sizes.entries)}")
    if any(a <= 0 for a in sizes.entries):
        raise ValueError("blowup part sizes must be positive")
    parts = tuple(i for i, a in enumerate(sizes.entries) for _ in range(a))
    masks = []
    start = 0
    for a in sizes.entries:
        masks.append(((1 << a) - 1) << start)
        start += a
    prow = []
    for i in range(base.n):
        m = 0
        r = base.rows[i]
        for j in range(base.n):
            if (r >> j) & 1:
                m |= masks[j]
        prow.append(m)
    rows = [prow[p] for p in parts]
    spec = BlowupSpec(base, sizes, parts, Graph(len(parts), rows, check=False))
    if not verify_blowup(spec):
        raise AssertionError("blowup construction failed verification")
    return spec


def balanced_blowup(base: Graph, n: int) -> BlowupSpec:
    return make_blowup(base, equitable_partition(n, base.n))


def fill_parts(spec: BlowupSpec, fillings: Sequence[Graph]) -> Graph:
    """Blowup with part i replaced by ``fillings[i]`` (same order as the part)."""
    rows = list(spec.realized.rows)
    start = 0
    for i, a in enumerate(spec.sizes.entries):
        f = fillings[i]
        if f.n != a:
            raise ValueError(f"filling for part {i} has order {f.n}, part has {a}")
        for k in range(a):
            rows[start + k] |= f.rows[k] << start
        start += a
    return Graph(len(rows), rows, check=False)


@dataclass(frozen=True)
class NestedTree:
    """One member of H*(n): a leaf graph (order < h) or a balanced split with subtrees."""

    order: int
    leaf: Graph | None = None
    children: tuple["NestedTree", ...] = ()

    def realize(self, base: Graph) -> Graph:
        if self.leaf is not None:
            return self.leaf
        spec = balanced_blowup(base, self.order)
        return fill_parts(spec, [c.realize(base) for c in self.children])


def nested_tree(base: Graph, n: int, leaf_policy: LeafPolicy | None = None) -> NestedTree:
    if n < 1:
        raise ValueError("n must be positive")
    h = base.n
    if n < h:
        leaf = leaf_policy(n) if leaf_policy else empty_graph(n)
        if leaf.n != n:
            raise ValueError("leaf policy returned a graph of the wrong order")
        return NestedTree(n, leaf=leaf)
    sizes = equitable_partition(n, h).entries
    return NestedTree(n, children=tuple(nested_tree(base, a, leaf_policy) for a in sizes))


def nested_blowup(base: Graph, n: int, leaf_policy: LeafPolicy | None = None) -> Graph:
    """One nested balanced blowup; parts smaller than h become ``leaf_policy(m)`` (default empty)."""
    return nested_tree(base, n, leaf_policy).realize(base)


def _nested_members(base: Graph, n: int, cap: int, memo: dict) -> list[Graph]:
    if n in memo:
        return memo[n]
    h = base.n
    if n < h:
        if n > MAX_ENUM_ORDER:
            raise NestedCapExceeded(f"cannot enumerate all graphs on {n} vertices", 0)
        out = list(enumerate_graphs(n))
        if len(out) > cap:
            raise NestedCapExceeded(f"{len(out)} leaf graphs on {n} vertices exceed cap {cap}", len(out))
        memo[n] = out
        return out
    sizes = equitable_partition(n, h).entries
    options = [_nested_members(base, a, cap, memo) for a in sizes]
    total = math.prod(len(o) for o in options)
    if total > cap:
        raise NestedCapExceeded(f"{total} raw combinations at n={n} exceed cap {cap}", 0)
    spec = balanced_blowup(base, n)
    seen = {}
    for combo in itertools.product(*options):
        g = fill_parts(spec, combo)
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g
        if len(seen) > cap:
            raise NestedCapExceeded(f"more than {cap} members at n={n}", len(seen))
    out = [seen[k] for k in sorted(seen)]
    memo[n] = out
    return out


def enumerate_nested(base: Graph, n: int, cap: int = 10_000) -> list[Graph]:
    """All members of H*(n) up to isomorphism, sorted by canonical form."""
    return _nested_members(base, n, cap, {})


# --- blowup distance -------------------------------------------------------

EXACT_DISTANCE_LIMIT = 10


@dataclass(frozen=True)
class DistanceResult:
    value: int
    exact: bool
    mapping: tuple[int, ...]


def _distance_cost(spec: BlowupSpec, target: Graph, f: Sequence[int]) -> int:
    b = spec.realized
    cost = 0
    for u in range(b.n):
        for v in range(u + 1, b.n):
            if spec.parts[u] != spec.parts[v] and b.adj(u, v) != target.adj(f[u], f[v]):
                cost += 1
    return cost


def _local_search(spec: BlowupSpec, target: Graph, budget: int, seed: int) -> tuple[int, list[int]]:
    b = spec.realized
    n = b.n
    rng = random.Random(seed)
    masks = spec.part_masks()
    full = b.full_mask
    blow = [full & ~masks[spec.parts[x]] for x in range(n)]
    brow = b.rows
    best_cost, best_f = None, None
    evals = 0
    while evals < budget or best_f is None:
        f = list(range(n))
        rng.shuffle(f)
        inv = [0] * n
        for x, y in enumerate(f):
            inv[y] = x
        prow = []
        for x in range(n):
            r = target.rows[f[x]]
            m = 0
            while r:
                low = r & -r
                m |= 1 << inv[low.bit_length() - 1]
                r ^= low
            prow.append(m)

        def rc(i, row):
            return ((brow[i] ^ row) & blow[i]).bit_count()

        def swapped(row, i, j):
            bi, bj = (row >> i) & 1, (row >> j) & 1
            if bi != bj:
                row ^= (1 << i) | (1 << j)
            return row

        cost = sum(rc(x, prow[x]) for x in range(n)) // 2
        improved = True
        while improved and (evals < budget or best_f is None):
            improved = False
            best_delta, best_pair = 0, None
            for i in range(n):
                for j in range(i + 1, n):
                    evals += 1
                    ni = swapped(prow[j], i, j)
                    nj = swapped(prow[i], i, j)
                    d = rc(i, ni) + rc(j, nj) - rc(i, prow[i]) - rc(j, prow[j])
                    if d < best_delta:
                        best_delta, best_pair = d, (i, j)
            if best_pair is not None:
                i, j = best_pair
                pi, pj = prow[i], prow[j]
                prow[i], prow[j] = swapped(pj, i, j), swapped(pi, i, j)
                for x in range(n):
                    if x != i and x != j:
                        prow[x] = swapped(prow[x], i, j)
                f[i], f[j] = f[j], f[i]
                cost += best_delta
                improved = True
        if best_cost is None or cost < best_cost:
            best_cost, best_f = cost, list(f)
        if best_cost == 0:
            break
    return best_cost, best_f


def _exact_distance(spec: BlowupSpec, target: Graph, upper: int, upper_f: list[int]) -> tuple[int, list[int]]:
    b = spec.realized
    n = b.n
    masks = spec.part_masks()
    full = b.full_mask
    blow = [full & ~masks[spec.parts[x]] for x in range(n)]
    part_of = [masks[spec.parts[x]] & ~(1 << x) for x in range(n)]
    brow, trow = b.rows, target.rows
    order = sorted(range(n), key=lambda x: (-blow[x].bit_count(), x))
    best = [upper, list(upper_f)]
    f = [-1] * n

    def lower_bound(assigned: int, used: int) -> int:
        # pairs (x, w) with x assigned, w not: their images lie among unused targets
        lb = 0
        free_b = full & ~assigned
        free_t = full & ~used
        for x in range(n):
            if not (assigned >> x) & 1:
                continue
            e1 = (brow[x] & blow[x] & free_b).bit_count()
            p1 = (part_of[x] & free_b).bit_count()
            t1 = (trow[f[x]] & free_t).bit_count()
            lb += max(0, e1 - t1, t1 - p1 - e1)
        return lb

    def rec(k: int, assigned: int, used: int, cost: int) -> None:
        if cost >= best[0]:
            return
        if k == n:
            best[0], best[1] = cost, list(f)
            return
        if cost + lower_bound(assigned, used) >= best[0]:
            return
        x = order[k]
        for y in range(n):
            if (used >> y) & 1:
                continue
            add = 0
            m = assigned & blow[x]
            while m:
                low = m & -m
                x2 = low.bit_length() - 1
                if ((brow[x] >> x2) & 1) != ((trow[y] >> f[x2]) & 1):
                    add += 1
                m ^= low
            f[x] = y
            rec(k + 1, assigned | (1 << x), used | (1 << y), cost + add)
            f[x] = -1

    rec(0, 0, 0, 0)
    return best[0], best[1]


def blowup_distance(spec: BlowupSpec, target: Graph, mode: str = "exact",
                    budget: int = 20_000, seed: int = 0) -> DistanceResult:
    """Fewest blowup-pair edits (part pairs free) turning the blowup into ``target``.

    ``exact`` minimises over all bijections (order <= 10).  ``search`` runs
    seeded steepest-descent swap restarts and returns an upper bound only.
    """
    if spec.realized.n != target.n:
        raise ValueError("blowup and target must have the same order")
    n = target.n
    if mode == "exact":
        if n > EXACT_DISTANCE_LIMIT:
            raise ValueError(f"exact blowup distance limited to order {EXACT_DISTANCE_LIMIT}")
        ub, uf = _local_search(spec, target, min(budget, 2000), seed)
        val, f = _exact_distance(spec, target, ub + 1, uf)
        if val > ub:
            val, f = ub, uf
        return DistanceResult(val, True, tuple(f))
    if mode == "search":
        val, f = _local_search(spec, target, budget, seed)
        return DistanceResult(val, False, tuple(f))
    raise ValueError(f"unknown mode {mode!r}")
