"""Canonical labelling by individualization-refinement.

The search tree is the usual one: refine an ordered partition to an equitable
one, individualize each vertex of the first non-singleton cell in turn, and
recurse.  Every leaf is a discrete partition, i.e. a vertex ordering; the
canonical form is the relabelled graph whose upper-triangle bit string is
lexicographically largest over all leaves.  Subtrees are skipped only when an
automorphism already known to fix the current prefix maps them onto a subtree
that was explored, so the maximum is exact.

Known automorphisms come from two places: twin vertices (same neighbourhood
apart from each other), which blowups are full of, and pairs of leaves with
equal codes.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, graph6_encode, members

Partition = list[list[int]]


def refine(rows: Sequence[int], cells: Partition, splitters: list[int] | None = None) -> Partition:
    """Coarsest equitable refinement of the ordered partition ``cells``.

    Cells are split in place by neighbour counts into each splitter, pieces
    ordered by ascending count.  ``splitters`` are bit masks to start from;
    by default every cell.  The procedure depends only on positions and counts
    so it commutes with relabelling.
    """
    cells = [list(c) for c in cells]
    if splitters is None:
        queue = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            queue.append(m)
    else:
        queue = list(splitters)
    qi = 0
    while qi < len(queue):
        w = queue[qi]
        qi += 1
        i = 0
        while i < len(cells):
            c = cells[i]
            if len(c) == 1:
                i += 1
                continue
            first = (rows[c[0]] & w).bit_count()
            counts = None
            for k in range(1, len(c)):
                if (rows[c[k]] & w).bit_count() != first:
                    counts = [(rows[v] & w).bit_count() for v in c]
                    break
            if counts is None:
                i += 1
                continue
            groups: dict[int, list[int]] = {}
            for v, k in zip(c, counts):
                groups.setdefault(k, []).append(v)
            pieces = [groups[k] for k in sorted(groups)]
            cells[i:i + 1] = pieces
            for p in pieces:
                m = 0
                for v in p:
                    m |= 1 << v
                queue.append(m)
            i += len(pieces)
    return cells


def _leaf_code(rows: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            code = (code << 1) | ((rj >> order[i]) & 1)
    return code


def _twin_classes(rows: Sequence[int], cells: Partition) -> list[list[int]]:
    colour = {}
    for idx, c in enumerate(cells):
        for v in c:
            colour[v] = idx
    buckets: dict[tuple, list[int]] = {}
    for v, r in enumerate(rows):
        # open and closed twins; both kinds swap to an automorphism
        buckets.setdefault((colour[v], 0, r), []).append(v)
        buckets.setdefault((colour[v], 1, r | (1 << v)), []).append(v)
    return [b for b in buckets.values() if len(b) > 1]


class _Search:
    def __init__(self, rows: Sequence[int], cells: Partition):
        self.rows = rows
        self.n = len(rows)
        self.best_code = -1
        self.best_order: list[int] | None = None
        self.seen: dict[int, list[int]] = {}
        self.autos: list[list[int]] = []
        self.twins = _twin_classes(rows, cells)
        start = refine(rows, cells)
        self._walk(start, [])

    def _orbit_roots(self, prefix: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        fixed = set(prefix)
        for cls in self.twins:
            free = [v for v in cls if v not in fixed]
            for v in free[1:]:
                parent[find(v)] = find(free[0])
        for gamma in self.autos:
            if any(gamma[p] != p for p in prefix):
                continue
            for v, w in enumerate(gamma):
                if v != w:
                    a, b = find(v), find(w)
                    if a != b:
                        parent[a] = b
        return [find(v) for v in range(self.n)]

    def _walk(self, cells: Partition, prefix: list[int]) -> None:
        target = None
        for idx, c in enumerate(cells):
            if len(c) > 1:
                target = idx
                break
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(self.rows, order)
            prev = self.seen.get(code)
            if prev is None:
                self.seen[code] = order
            else:
                gamma = [0] * self.n
                for a, b in zip(prev, order):
                    gamma[a] = b
                self.autos.append(gamma)
            if code > self.best_code:
                self.best_code = code
                self.best_order = order
            return
        cell = cells[target]
        tried: list[int] = []
        roots: list[int] = []
        known = -1
        for v in sorted(cell):
            if len(self.autos) != known:
                roots = self._orbit_roots(prefix)
                known = len(self.autos)
            if any(roots[t] == roots[v] for t in tried):
                continue
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            child = refine(self.rows, child, [1 << v])
            self._walk(child, prefix + [v])
            tried.append(v)


def canonical_order(g: Graph, cells: Partition | None = None) -> tuple[int, list[int]]:
    """(code, order) for the canonical leaf; ``order[i]`` is the vertex placed at position i."""
    if cells is None:
        cells = [list(range(g.n))]
    s = _Search(g.rows, cells)
    return s.best_code, s.best_order


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-class key: graph6 bytes of the canonically relabelled graph."""
    _, order = canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return graph6_encode(g.relabel(perm)).encode("ascii")


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def rooted_code(g: Graph, root: int) -> int:
    """Canonical code of ``g`` with ``root`` coloured apart; equal iff same automorphism orbit."""
    rest = [v for v in range(g.n) if v != root]
    cells = [[root], rest] if rest else [[root]]
    return canonical_order(g, cells)[0]


def are_isomorphic(g1: Graph, g2: Graph) -> tuple[bool, dict[int, int] | None]:
    """Decide isomorphism; on success also return a verified witness ``{u: f(u)}``."""
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return False, None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False, None
    c1, o1 = canonical_order(g1)
    c2, o2 = canonical_order(g2)
    if c1 != c2:
        return False, None
    f = {a: b for a, b in zip(o1, o2)}
    for u in range(g1.n):
        r = 0
        for w in members(g1.rows[u]):
            r |= 1 << f[w]
        if r != g2.rows[f[u]]:
            raise AssertionError("canonical witness failed verification")
    return True, f


def automorphism_group_order(g: Graph) -> int:
    """|Aut(g)| via orbit-stabilizer along a chain of individualized vertices."""
    order = 1
    cells = refine(g.rows, [list(range(g.n))])
    while True:
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            return order
        v = target[0]
        codes = {}
        for u in target:
            child = [c if c is not target else None for c in cells]
            idx = child.index(None)
            child[idx:idx + 1] = [[u], [w for w in target if w != u]]
            codes[u] = (canonical_order(g, child)[0], child)
        orbit = sum(1 for u in target if codes[u][0] == codes[v][0])
        order *= orbit
        cells = refine(g.rows, codes[v][1], [1 << v])
