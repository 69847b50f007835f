"""One graph per isomorphism class, by canonical augmentation.

A child ``C = P + v`` (new vertex ``v`` joined to a subset of ``V(P)``) is
accepted iff ``v`` lies in the canonical orbit of ``C``: among the vertices
with the largest cheap invariant (degree, then sorted neighbour degrees), the
orbit whose rooted canonical code is largest.  Children of one parent that are
isomorphic share that rooted code, which is the per-parent dedup key.  Every
class is then produced exactly once from its unique parent class.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Sequence

from .canon import rooted_code
from .graph import Graph

MAX_ENUM_ORDER = 10

# OEIS A000088
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}


def _invariant(rows: Sequence[int], degs: Sequence[int], v: int) -> tuple:
    r = rows[v]
    nd = []
    while r:
        low = r & -r
        nd.append(degs[low.bit_length() - 1])
        r ^= low
    nd.sort()
    return (degs[v], tuple(nd))


def children(parent: Graph) -> list[Graph]:
    """Accepted augmentations of ``parent`` in increasing neighbourhood-mask order."""
    k = parent.n
    prow = parent.rows
    pdeg = [r.bit_count() for r in prow]
    top = max(pdeg)
    top_mask = 0
    for u, d in enumerate(pdeg):
        if d == top:
            top_mask |= 1 << u
    newbit = 1 << k
    out = []
    keys = set()
    for s in range(1 << k):
        size = s.bit_count()
        if size < top or (size == top and s & top_mask):
            continue
        rows = [r | newbit if (s >> u) & 1 else r for u, r in enumerate(prow)]
        rows.append(s)
        degs = [d + ((s >> u) & 1) for u, d in enumerate(pdeg)]
        degs.append(size)
        tied = [u for u in range(k) if degs[u] == size]
        if tied:
            mine = _invariant(rows, degs, k)
            rivals = []
            beaten = False
            for u in tied:
                inv = _invariant(rows, degs, u)
                if inv > mine:
                    beaten = True
                    break
                if inv == mine:
                    rivals.append(u)
            if beaten:
                continue
        else:
            rivals = []
        child = Graph(k + 1, rows, check=False)
        key = rooted_code(child, k)
        if any(rooted_code(child, u) > key for u in rivals):
            continue
        if key in keys:
            continue
        keys.add(key)
        out.append(child)
    return out


def _children_batch(parents: list[Graph]) -> list[list[Graph]]:
    return [children(p) for p in parents]


def _level(parents: list[Graph], workers: int) -> Iterator[Graph]:
    if workers <= 1 or len(parents) < 2 * workers:
        for p in parents:
            yield from children(p)
        return
    size = max(1, len(parents) // (4 * workers))
    batches = [parents[i:i + size] for i in range(0, len(parents), size)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        # map preserves submission order, so output is worker-count invariant
        for result in ex.map(_children_batch, batches):
            for kids in result:
                yield from kids


def enumerate_graphs(n: int, workers: int = 1) -> Iterator[Graph]:
    """Yield one representative of every isomorphism class on ``n`` vertices.

    The order is deterministic and independent of ``workers``.
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_ORDER}, got {n}")
    level = [Graph(1, [0], check=False)]
    for k in range(1, n):
        if k == n - 1:
            yield from _level(level, workers)
            return
        level = list(_level(level, workers))
    yield from level
