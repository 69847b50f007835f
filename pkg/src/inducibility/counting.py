"""Induced embedding and induced copy counting.

The kernel is a backtracking search over pattern vertices in a fixed order.
Candidates for the next pattern vertex are kept as a host bit mask: intersect
with the host row of every already-placed pattern neighbour and with the
complement row of every already-placed pattern non-neighbour.  At the last
level the answer is a popcount, not a loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .canon import automorphism_group_order
from .graph import Graph

MAX_PATTERN = 12
MAX_AUT_EMBEDDING = 24


class PatternTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CountResult:
    embeddings: int
    aut: int
    copies: int

    def __post_init__(self):
        if self.copies * self.aut != self.embeddings:
            raise ValueError("copies * aut must equal embeddings")


def pattern_order(h: Graph, first: tuple[int, ...] = ()) -> list[int]:
    """Static order: most links to placed vertices, then higher degree, then lower index."""
    order = list(first)
    placed = 0
    for v in order:
        placed |= 1 << v
    remaining = [v for v in range(h.n) if not (placed >> v) & 1]
    degs = h.degrees()
    while remaining:
        best = max(remaining, key=lambda v: ((h.rows[v] & placed).bit_count(), degs[v], -v))
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    return order


def _plan(h: Graph, order: list[int]):
    pos = {v: i for i, v in enumerate(order)}
    plan = []
    for i, v in enumerate(order):
        nb = [pos[u] for u in order[:i] if h.adj(u, v)]
        non = [pos[u] for u in order[:i] if not h.adj(u, v)]
        plan.append((nb, non))
    return plan


def _check(h: Graph, g: Graph, limit: int) -> None:
    if h.n > limit:
        raise PatternTooLarge(f"pattern order {h.n} exceeds engine bound {limit}")


def _search(h: Graph, g: Graph, fixed: Mapping[int, int], count_only: bool):
    order = pattern_order(h, tuple(fixed))
    plan = _plan(h, order)
    grows = g.rows
    full = g.full_mask
    k = h.n
    same_order = h.n == g.n
    hdeg = [h.degree(v) for v in order]
    gdeg = g.degrees()
    img = [0] * k
    nfixed = len(fixed)
    fixed_img = [fixed[v] for v in order[:nfixed]]

    def cands(i: int, used: int) -> int:
        c = full & ~used
        nb, non = plan[i]
        for j in nb:
            c &= grows[img[j]]
        for j in non:
            c &= ~grows[img[j]]
        if same_order:
            # bijective induced embeddings preserve degree
            d = hdeg[i]
            m = c
            while m:
                low = m & -m
                if gdeg[low.bit_length() - 1] != d:
                    c ^= low
                m ^= low
        return c

    def rec(i: int, used: int):
        c = cands(i, used)
        if i < nfixed:
            w = fixed_img[i]
            c &= 1 << w
        if i == k - 1:
            if count_only:
                return c.bit_count()
            out = []
            while c:
                low = c & -c
                img[i] = low.bit_length() - 1
                out.append(tuple(img))
                c ^= low
            return out
        total = 0 if count_only else []
        while c:
            low = c & -c
            img[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
            c ^= low
        return total

    if k == 0:
        return 1 if count_only else [()]
    res = rec(0, 0)
    if count_only:
        return res
    # reorder images from search order back to pattern-vertex order
    inv = [0] * k
    for i, v in enumerate(order):
        inv[v] = i
    return [tuple(t[inv[v]] for v in range(k)) for t in res]


def count_embeddings(h: Graph, g: Graph, fixed: Mapping[int, int] | None = None,
                     max_pattern: int = MAX_PATTERN) -> int:
    """Number of injective maps V(h) -> V(g) preserving adjacency and non-adjacency."""
    _check(h, g, max_pattern)
    if h.n > g.n:
        return 0
    return _search(h, g, fixed or {}, True)


def iter_embeddings(h: Graph, g: Graph, max_pattern: int = MAX_PATTERN) -> Iterator[tuple[int, ...]]:
    """All induced embeddings as tuples ``t`` with ``t[a]`` the image of pattern vertex ``a``."""
    _check(h, g, max_pattern)
    if h.n > g.n:
        return iter(())
    return iter(_search(h, g, {}, False))


def count_embeddings_through(h: Graph, g: Graph, u: int, v: int) -> int:
    """Embeddings whose image contains both host vertices ``u`` and ``v``."""
    _check(h, g, MAX_PATTERN)
    if h.n > g.n or h.n < 2:
        return 0
    want = g.adj(u, v)
    total = 0
    for a in range(h.n):
        for b in range(h.n):
            if a != b and h.adj(a, b) == want:
                total += _search(h, g, {a: u, b: v}, True)
    return total


def automorphism_count(h: Graph) -> int:
    if h.n <= MAX_AUT_EMBEDDING:
        return count_embeddings(h, h, max_pattern=MAX_AUT_EMBEDDING)
    return automorphism_group_order(h)


def count_induced_copies(h: Graph, g: Graph, aut: int | None = None) -> CountResult:
    emb = count_embeddings(h, g)
    if aut is None:
        aut = automorphism_count(h)
    return CountResult(emb, aut, emb // aut)
