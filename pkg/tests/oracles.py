"""Brute-force reference implementations, deliberately naive and independent of the engine."""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def adjacency(g) -> list[list[bool]]:
    return [[g.adj(u, v) for v in range(g.n)] for u in range(g.n)]


def brute_embeddings(h, g) -> int:
    """Injective maps V(h) -> V(g) preserving adjacency and non-adjacency."""
    A, B = adjacency(h), adjacency(g)
    pairs = list(itertools.combinations(range(h.n), 2))
    return sum(
        all(A[a][b] == B[t[a]][t[b]] for a, b in pairs)
        for t in itertools.permutations(range(g.n), h.n)
    )


def brute_copies(h, g) -> int:
    """Vertex subsets S of size |h| with g[S] isomorphic to h."""
    A, B = adjacency(h), adjacency(g)
    k = h.n
    pairs = list(itertools.combinations(range(k), 2))
    total = 0
    for s in itertools.combinations(range(g.n), k):
        if any(all(A[a][b] == B[s[p[a]]][s[p[b]]] for a, b in pairs)
               for p in itertools.permutations(range(k))):
            total += 1
    return total


def brute_aut(h) -> int:
    A = adjacency(h)
    return sum(all(A[u][v] == A[p[u]][p[v]] for u in range(h.n) for v in range(h.n))
               for p in itertools.permutations(range(h.n)))


def labeled_class_count(n: int) -> int:
    """Isomorphism classes on n vertices as orbits of S_n acting on edge-set codes.

    S_n is generated by a transposition and an n-cycle, so orbits are the
    connected components of the graph joining each code to its two images.
    """
    if n == 1:
        return 1
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    m = len(pairs)
    codes = np.arange(1 << m, dtype=np.int64)

    def image(perm):
        out = np.zeros_like(codes)
        for i, (u, v) in enumerate(pairs):
            a, b = sorted((perm[u], perm[v]))
            out |= ((codes >> i) & 1) << index[(a, b)]
        return out

    swap = [1, 0] + list(range(2, n))
    rot = [(v + 1) % n for v in range(n)]
    rows = np.concatenate([codes, codes])
    cols = np.concatenate([image(swap), image(rot)])
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(1 << m, 1 << m))
    k, _ = connected_components(adj, directed=False)
    return int(k)


def brute_blowup_distance(spec, target) -> int:
    b = spec.realized
    n = b.n
    best = math.inf
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if spec.parts[u] != spec.parts[v]]
    for f in itertools.permutations(range(n)):
        best = min(best, sum(b.adj(u, v) != target.adj(f[u], f[v]) for u, v in pairs))
    return best


def brute_cond5_refuted(g) -> bool:
    """Some (J, K, pi) with |J| = |K| = ceil(0.7h), >= 0.1h moved points, within edit budget."""
    h = g.n
    k = -(-7 * h // 10)
    budget = h * h // 100_000
    A = adjacency(g)
    for J in itertools.combinations(range(h), k):
        for K in itertools.combinations(range(h), k):
            for img in itertools.permutations(K):
                moved = sum(a != b for a, b in zip(J, img))
                if 10 * moved < h:
                    continue
                edits = sum(A[J[i]][J[j]] != A[img[i]][img[j]]
                            for i, j in itertools.combinations(range(k), 2))
                if edits <= budget:
                    return True
    return False
