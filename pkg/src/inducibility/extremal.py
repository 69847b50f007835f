"""Extremal graph search, blowup-plus recognition and the counterexample certificate."""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .blowup import balanced_blowup, fill_parts, nested_blowup
from .canon import are_isomorphic, canonical_form
from .counting import automorphism_count, count_embeddings, count_embeddings_through
from .enumeration import MAX_ENUM_ORDER, children, enumerate_graphs
from .formulas import f_value, g_value
from .graph import Graph, graph6_decode, graph6_encode, induced_subgraph, sample_gnp

SCHEMA_VERSION = 1
EXHAUSTIVE_LIMIT = 9
RECOGNIZE_LIMIT = 16


@dataclass
class ExtremalResult:
    pattern_g6: str
    n: int
    max_copies: int
    extremal_g6: list[str]
    method: str
    seed: int | None = None
    budget: int | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["max_copies"] = str(self.max_copies)
        return {"schema_version": SCHEMA_VERSION, **d}


def _canon_str(g: Graph) -> str:
    return canonical_form(g).decode()


def _scan(pattern: Graph, graphs) -> tuple[int, list[str]]:
    best, keep = -1, []
    for g in graphs:
        c = count_embeddings(pattern, g)
        if c > best:
            best, keep = c, [g]
        elif c == best:
            keep.append(g)
    return best, [_canon_str(g) for g in keep]


def _scan_parents(args) -> tuple[int, list[str]]:
    pattern, parents = args
    return _scan(pattern, (c for p in parents for c in children(p)))


def exhaustive_extremal(pattern: Graph, n: int, workers: int = 1) -> ExtremalResult:
    """Maximum induced copies over every graph on n <= 9 vertices, with all maximizers."""
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search limited to n <= {EXHAUSTIVE_LIMIT}")
    if n < 1:
        raise ValueError("n must be positive")
    aut = automorphism_count(pattern)
    if workers <= 1 or n < 3:
        best, keep = _scan(pattern, enumerate_graphs(n))
    else:
        parents = list(enumerate_graphs(n - 1))
        chunk = max(1, len(parents) // (workers * 8))
        batches = [(pattern, parents[i:i + chunk]) for i in range(0, len(parents), chunk)]
        best, keep = -1, []
        with ProcessPoolExecutor(workers) as ex:
            for b, k in ex.map(_scan_parents, batches):
                if b > best:
                    best, keep = b, list(k)
                elif b == best:
                    keep.extend(k)
    return ExtremalResult(graph6_encode(pattern), n, best // aut, sorted(set(keep)), "exhaustive")


@dataclass
class HillclimbConfig:
    restarts: int = 4
    max_steps: int = 200
    plateau: int = 20
    seed: int = 0


def _flip(g: Graph, u: int, v: int) -> Graph:
    rows = list(g.rows)
    rows[u] ^= 1 << v
    rows[v] ^= 1 << u
    return Graph(g.n, rows, check=False)


def _climb(pattern: Graph, g: Graph, cfg: HillclimbConfig, rng: random.Random) -> tuple[int, Graph]:
    count = count_embeddings(pattern, g)
    best_count, best_graph = count, g
    pairs = list(itertools.combinations(range(g.n), 2))
    flat = 0
    last = None
    for _ in range(cfg.max_steps):
        moves = []
        top = None
        for u, v in pairs:
            if (u, v) == last:
                continue
            d = count_embeddings_through(pattern, _flip(g, u, v), u, v) - count_embeddings_through(pattern, g, u, v)
            if top is None or d > top:
                top, moves = d, [(u, v)]
            elif d == top:
                moves.append((u, v))
        if top is None or top < 0 or (top == 0 and flat >= cfg.plateau):
            break
        flat = flat + 1 if top == 0 else 0
        last = rng.choice(moves)
        g = _flip(g, *last)
        count += top
        if count > best_count:
            best_count, best_graph = count, g
    return best_count, best_graph


def hillclimb_extremal(pattern: Graph, n: int, cfg: HillclimbConfig | None = None) -> ExtremalResult:
    """Best-improvement edge flipping from the nested blowup and seeded random starts.

    The nested blowup is always one start, so the result never falls below it.
    Deterministic for a fixed config.
    """
    cfg = cfg or HillclimbConfig()
    if n < pattern.n:
        raise ValueError("n must be at least the pattern order")
    rng = random.Random(cfg.seed)
    starts = [nested_blowup(pattern, n)]
    starts += [sample_gnp(n, "1/2", rng.getrandbits(64)) for _ in range(cfg.restarts)]
    best, best_g = -1, None
    for g in starts:
        c, gg = _climb(pattern, g, cfg, rng)
        if c > best:
            best, best_g = c, gg
    aut = automorphism_count(pattern)
    return ExtremalResult(graph6_encode(pattern), n, best // aut, [_canon_str(best_g)], "hillclimb",
                          cfg.seed, cfg.max_steps * (cfg.restarts + 1))


# --- blowup-plus recognition -------------------------------------------------


@dataclass(frozen=True)
class BlowupPlus:
    parts: tuple[frozenset[int], ...]

    @property
    def balanced(self) -> bool:
        sizes = [len(p) for p in self.parts]
        return max(sizes) - min(sizes) <= 1


def recognize_blowup_plus(g: Graph, pattern: Graph) -> BlowupPlus | None:
    """A partition of V(g) into nonempty P_1..P_h with cross edges copied from the pattern."""
    n, h = g.n, pattern.n
    if n > RECOGNIZE_LIMIT:
        raise ValueError(f"recognition limited to n <= {RECOGNIZE_LIMIT}")
    if h > n:
        return None
    pmask = [0] * h
    assign = [-1] * n

    def rec(x: int, assigned: int, empty: int) -> bool:
        if empty > n - x:
            return False
        if x == n:
            return True
        row = g.rows[x]
        for p in range(h):
            need = 0
            for q in range(h):
                if (pattern.rows[p] >> q) & 1:
                    need |= pmask[q]
            other = assigned & ~pmask[p]
            if row & other != need:
                continue
            was_empty = pmask[p] == 0
            pmask[p] |= 1 << x
            assign[x] = p
            if rec(x + 1, assigned | (1 << x), empty - was_empty):
                return True
            pmask[p] &= ~(1 << x)
        return False

    if not rec(0, 0, h):
        return None
    return BlowupPlus(tuple(frozenset(v for v in range(n) if assign[v] == p) for p in range(h)))


# --- counterexample ----------------------------------------------------------


@dataclass
class CounterexampleCertificate:
    q: int
    r: int
    part_graphs: list[str]
    pattern_g6: str
    host_g6: str
    witness: list[int]
    g_value: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def as_dict(self) -> dict:
        d = asdict(self)
        d["g_value"] = str(self.g_value)
        d["lower_bound"] = str(self.g_value + 1)
        d["ok"] = self.ok
        return d


def _validate_parts(q: int, r: int, part_graphs: list[Graph]) -> None:
    if r < 2:
        raise ValueError("need r >= 2")
    if q < 6:
        raise ValueError("asymmetric graphs need at least 6 vertices, so q >= 6")
    if len(part_graphs) != r:
        raise ValueError(f"need {r} part graphs")
    for i, p in enumerate(part_graphs):
        if p.n != q:
            raise ValueError(f"part graph {i} has order {p.n}, expected {q}")
        if automorphism_count(p) != 1:
            raise ValueError(f"part graph {i} is symmetric")
    for a, b in itertools.combinations(range(r), 2):
        if are_isomorphic(part_graphs[a], part_graphs[b])[0]:
            raise ValueError(f"part graphs {a} and {b} are isomorphic")


def build_counterexample(q: int, r: int, part_graphs: list[Graph]) -> CounterexampleCertificate:
    """H = K_r blown up with part i inducing ``part_graphs[i]``; G = H(hq) with P_x filled by H_{i(x)}.

    G keeps all q^h transversal copies and adds the copy spanned by one whole
    H-part per group, so i_H(G) > g(hq, h).
    """
    _validate_parts(q, r, part_graphs)
    from .graph import complete_graph

    kr = balanced_blowup(complete_graph(r), q * r)
    pattern = fill_parts(kr, part_graphs)
    h = pattern.n
    group = list(kr.parts)
    outer = balanced_blowup(pattern, h * q)
    host = fill_parts(outer, [part_graphs[group[x]] for x in range(h)])
    # one H-vertex x per group, taking the whole part P_x
    xs = [group.index(i) for i in range(r)]
    parts = outer.parts
    witness = [v for v in range(host.n) if parts[v] in xs]
    cert = CounterexampleCertificate(q, r, [graph6_encode(p) for p in part_graphs], graph6_encode(pattern),
                                     graph6_encode(host), witness, g_value(host.n, h))
    cert.checks = run_checks(cert)
    return cert


def run_checks(cert: CounterexampleCertificate) -> dict[str, bool]:
    """Recompute every claim from the stored graph6 strings."""
    q, r = cert.q, cert.r
    pattern = graph6_decode(cert.pattern_g6)
    host = graph6_decode(cert.host_g6)
    parts = [graph6_decode(s) for s in cert.part_graphs]
    h = pattern.n
    n = host.n
    spec = balanced_blowup(pattern, n)
    group = [x // q for x in range(h)]
    checks = {}
    checks["pattern_asymmetric"] = automorphism_count(pattern) == 1
    cross = all(host.adj(u, v) == pattern.adj(spec.parts[u], spec.parts[v])
                for u in range(n) for v in range(u + 1, n) if spec.parts[u] != spec.parts[v])
    fillings = all(induced_subgraph(host, [v for v in range(n) if spec.parts[v] == x]).rows
                   == parts[group[x]].rows for x in range(h))
    checks["host_is_filled_blowup"] = cross and fillings
    wit = sorted(cert.witness)
    used = {spec.parts[v] for v in wit}
    checks["witness_is_extra_copy"] = (len(wit) == h and len(used) < h
                                       and are_isomorphic(induced_subgraph(host, wit), pattern)[0])
    checks["g_equals_transversals"] = (n <= h * (h - 1) and cert.g_value == g_value(n, h)
                                       == f_value(n, h) == q ** h)
    return checks
