"""Simple graphs stored as per-vertex bit rows, plus the graph6 codec.

Vertices are ``0..n-1``.  Row ``v`` is a Python int whose bit ``u`` is set
iff ``uv`` is an edge, so multi-word rows come for free and small graphs stay
on the single-word fast path of CPython's int implementation.

Vertex sets are passed around as iterables of ints in the public API and as
bit masks internally.  A bijection is any mapping ``{u: f(u)}``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

MAX_ORDER = 4096


class Graph:
    """Immutable finite simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Sequence[int], *, check: bool = True):
        if check:
            if not 1 <= n <= MAX_ORDER:
                raise ValueError(f"graph order must be in [1, {MAX_ORDER}], got {n}")
            if len(rows) != n:
                raise ValueError("need exactly one row per vertex")
            full = (1 << n) - 1
            for v, r in enumerate(rows):
                if r & ~full or (r >> v) & 1:
                    raise ValueError(f"row {v} has a loop or out-of-range bit")
                u = r
                while u:
                    low = u & -u
                    w = low.bit_length() - 1
                    if not (rows[w] >> v) & 1:
                        raise ValueError(f"adjacency not symmetric at ({v}, {w})")
                    u ^= low
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return _rebuild, (self.n, self.rows)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Graph(n={self.n}, g6={graph6_encode(self)!r})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adj(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return members(self.rows[v])

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in members(self.rows[u] >> (u + 1)):
                yield u, u + 1 + v

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        new = [0] * self.n
        for v in range(self.n):
            pv = perm[v]
            r = self.rows[v]
            acc = 0
            while r:
                low = r & -r
                acc |= 1 << perm[low.bit_length() - 1]
                r ^= low
            new[pv] = acc
        return Graph(self.n, new, check=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)


# --- vertex-set helpers ---------------------------------------------------


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# --- small named graphs ----------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cherry() -> Graph:
    """K_{1,2} with the centre at vertex 0."""
    return complete_bipartite(1, 2)


def smallest_asymmetric() -> Graph:
    """Path 0-1-2-3-4 plus vertex 5 joined to 2 and 3 (1-based: 6 joined to 3, 4)."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2), (5, 3)])


# --- elementary operations -------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, [full & ~r & ~(1 << v) for v, r in enumerate(g.rows)], check=False)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices``, relabelled ``0..k-1`` in ascending order."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise ValueError("vertex out of range")
    rows = []
    for v in vs:
        r = g.rows[v]
        acc = 0
        for i, w in enumerate(vs):
            if (r >> w) & 1:
                acc |= 1 << i
        rows.append(acc)
    return Graph(len(vs), rows, check=False)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, rows, check=False)


def _check_bijection(f: Mapping[int, int], n1: int, n2: int) -> None:
    if n1 != n2 or len(f) != n1:
        raise ValueError("map must be total on V(g1) and the graphs must have equal order")
    if sorted(f) != list(range(n1)) or sorted(f.values()) != list(range(n2)):
        raise ValueError("map is not a bijection V(g1) -> V(g2)")


def map_edit_distance(g1: Graph, g2: Graph, f: Mapping[int, int] | Sequence[int]) -> int:
    """Number of pairs ``{u, v}`` whose adjacency differs from that of ``{f(u), f(v)}``.

    ``f`` is ``m``-close to an isomorphism iff the result is at most ``m``.
    """
    if not isinstance(f, Mapping):
        f = dict(enumerate(f))
    _check_bijection(f, g1.n, g2.n)
    # relabel g1 along f, then count symmetric differences of rows
    moved = g1.relabel([f[v] for v in range(g1.n)])
    return sum((a ^ b).bit_count() for a, b in zip(moved.rows, g2.rows)) // 2


# --- random graphs ----------------------------------------------------------


def sample_gnp(h: int, p: Fraction | int | str, seed: int) -> Graph:
    """G(h, p) sample that is reproducible across runs and platforms.

    Generator: Python's MT19937 (``random.Random``) seeded with ``seed``.
    Pairs are visited row-major over the upper triangle, (0,1), (0,2), ...,
    (0,h-1), (1,2), ...; with ``p = a/b`` in lowest terms the pair is an edge
    iff ``randrange(b) < a``.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    a, b = p.numerator, p.denominator
    rows = [0] * h
    for u in range(h):
        for v in range(u + 1, h):
            if rng.randrange(b) < a:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(h, rows, check=False)


def derive_seeds(seed: int, count: int) -> list[int]:
    """Per-task 64-bit seeds derived deterministically from one master seed."""
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


# --- graph6 ----------------------------------------------------------------


class Graph6Error(ValueError):
    pass


class Graph6ByteError(Graph6Error):
    """A byte outside the printable range 63..126."""


class Graph6TruncatedError(Graph6Error):
    """Fewer data bytes than the header promises."""


class Graph6TrailingError(Graph6Error):
    """Extra bytes after the adjacency data."""


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n + 63]
    if n < 258048:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]


def graph6_encode(g: Graph) -> str:
    out = _encode_n(g.n)
    acc = nbits = 0
    rows = g.rows
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | ((rows[i] >> j) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def graph6_decode(text: str | bytes) -> Graph:
    if isinstance(text, str):
        text = text.encode("ascii", errors="replace")
    data = text.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6ByteError(f"byte {byte!r} at position {pos} outside 63..126")
    if not data:
        raise Graph6TruncatedError("empty input")
    vals = [b - 63 for b in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6TruncatedError("truncated 8-byte order header")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6TruncatedError("truncated 4-byte order header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < need:
        raise Graph6TruncatedError(f"need {need} data bytes for n={n}, got {len(body)}")
    if len(body) > need:
        raise Graph6TrailingError(f"{len(body) - need} trailing bytes after graph data")
    if not 1 <= n <= MAX_ORDER:
        raise Graph6Error(f"order {n} outside supported range [1, {MAX_ORDER}]")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows, check=False)


def _rebuild(n: int, rows: tuple[int, ...]) -> Graph:
    return Graph(n, rows, check=False)
