"""Families of induced copies: roles, Q-partitions, core production, pairings.

A family member is stored as a tuple ``t`` with ``t[a]`` the host vertex
playing pattern vertex ``a``.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from .counting import iter_embeddings
from .formulas import f_value
from .graph import Graph

MAX_FAMILY = 10 ** 7


class FamilyTooLarge(RuntimeError):
    pass


class RoleConflict(ValueError):
    def __init__(self, witness):
        super().__init__(f"family is not role-consistent: {witness}")
        self.witness = witness


def is_embedding(h: Graph, g: Graph, t: Sequence[int]) -> bool:
    if len(t) != h.n or len(set(t)) != h.n or any(not 0 <= x < g.n for x in t):
        return False
    return all(h.adj(a, b) == g.adj(t[a], t[b]) for a in range(h.n) for b in range(a + 1, h.n))


@dataclass
class CopyFamily:
    pattern: Graph
    host: Graph
    members: list[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.members)

    def validate(self) -> None:
        for t in self.members:
            if not is_embedding(self.pattern, self.host, t):
                raise ValueError(f"{t} is not an induced embedding")

    def support(self) -> set[int]:
        return {x for t in self.members for x in t}


def all_embeddings(h: Graph, g: Graph, cap: int = MAX_FAMILY) -> CopyFamily:
    out = []
    for t in iter_embeddings(h, g):
        out.append(t)
        if len(out) > cap:
            raise FamilyTooLarge(f"more than {cap} embeddings")
    return CopyFamily(h, g, out)


def q_partition(family: CopyFamily, q: Sequence[int]) -> dict[tuple[int, ...], CopyFamily]:
    """Group members by their images on the pattern vertices ``q``."""
    groups: dict[tuple[int, ...], list] = defaultdict(list)
    for t in family.members:
        groups[tuple(t[a] for a in q)].append(t)
    return {k: CopyFamily(family.pattern, family.host, groups[k]) for k in sorted(groups)}


def role_table(family: CopyFamily) -> tuple[dict[int, int], tuple | None]:
    """Map host vertex -> pattern role, or the first conflict (x, member1, member2)."""
    role: dict[int, int] = {}
    source: dict[int, tuple] = {}
    for t in family.members:
        for a, x in enumerate(t):
            if x in role and role[x] != a:
                return role, (x, source[x], t)
            role[x] = a
            source.setdefault(x, t)
    return role, None


def is_role_consistent(family: CopyFamily) -> tuple[bool, tuple | None]:
    _, conflict = role_table(family)
    return conflict is None, conflict


@dataclass(frozen=True)
class RolePartition:
    redundant: frozenset[int]
    parts: tuple[frozenset[int], ...]

    def product(self) -> int:
        return math.prod(len(p) for p in self.parts)


def role_partition(family: CopyFamily) -> RolePartition:
    """Split the host into role classes P_1..P_h and the unused vertices R.

    The chain |F| <= prod |P_i| <= f(n - |R|, h) is asserted on the way out.
    """
    role, conflict = role_table(family)
    if conflict is not None:
        raise RoleConflict(conflict)
    h = family.pattern.n
    parts = [set() for _ in range(h)]
    for x, a in role.items():
        parts[a].add(x)
    redundant = frozenset(range(family.host.n)) - frozenset(role)
    rp = RolePartition(redundant, tuple(frozenset(p) for p in parts))
    if family.members:
        n_eff = family.host.n - len(redundant)
        if not len(family) <= rp.product() <= f_value(n_eff, h):
            raise AssertionError("role partition product inequality violated")
    return rp


def preset_threshold(n: int, h: int, prec: int = 128) -> Fraction:
    """f(n,h) * n^(-3 - 3 log2 h), rounded to nearest at ``prec`` bits."""
    with mpmath.workprec(prec):
        val = mpmath.mpf(f_value(n, h)) * mpmath.power(n, -3 - 3 * mpmath.log(h, 2))
        man, exp = mpmath.mpf(val).man_exp
    return Fraction(man) * Fraction(2) ** exp


def core_production(family: CopyFamily, threshold: Fraction | int) -> tuple[CopyFamily, CopyFamily]:
    """Repeatedly drop the least-used host vertex while its use count is <= threshold.

    Ties go to the lower index.  Returns (core, leftover); leftover lists the
    removed members in removal order and has at most n * threshold members.
    """
    threshold = Fraction(threshold)
    members = family.members
    by_vertex: dict[int, list[int]] = defaultdict(list)
    for i, t in enumerate(members):
        for x in t:
            by_vertex[x].append(i)
    freq = {x: len(ids) for x, ids in by_vertex.items()}
    alive = [True] * len(members)
    heap = [(c, x) for x, c in freq.items()]
    heapq.heapify(heap)
    removed = []
    while heap:
        c, x = heapq.heappop(heap)
        if freq[x] != c or c == 0:
            continue  # stale entry
        if c > threshold:
            break
        for i in by_vertex[x]:
            if not alive[i]:
                continue
            alive[i] = False
            removed.append(members[i])
            for y in members[i]:
                freq[y] -= 1
                if y != x and freq[y] > 0:
                    heapq.heappush(heap, (freq[y], y))
    core = [t for i, t in enumerate(members) if alive[i]]
    return (CopyFamily(family.pattern, family.host, core),
            CopyFamily(family.pattern, family.host, removed))


def is_core_fixpoint(core: CopyFamily, threshold: Fraction | int) -> bool:
    counts: dict[int, int] = defaultdict(int)
    for t in core.members:
        for x in t:
            counts[x] += 1
    return all(c > threshold for c in counts.values())


def nonstationary_pairing(f: Mapping[int, int]) -> list[tuple[int, int]]:
    """Disjoint pairs (x, f(x)) over non-stationary x, at least ceil(s/3) of them.

    Following x -> f(x) through non-stationary points gives disjoint paths and
    cycles; taking every other link along each one keeps pairs disjoint.
    """
    if len(set(f.values())) != len(f):
        raise ValueError("map must be injective")
    moving = {x for x, y in f.items() if x != y}
    has_pre = {f[x] for x in moving}
    seen: set[int] = set()
    pairs = []

    def take(chain: list[int], cycle: bool) -> None:
        links = chain[: len(chain) - 1] if cycle and len(chain) % 2 else chain
        pairs.extend((x, f[x]) for x in links[::2])

    for x in sorted(moving):
        if x in has_pre:
            continue
        chain = []
        while x in moving:
            seen.add(x)
            chain.append(x)
            x = f[x]
        take(chain, False)
    for x in sorted(moving - seen):
        if x in seen:
            continue
        chain = []
        while x not in seen:
            seen.add(x)
            chain.append(x)
            x = f[x]
        take(chain, True)
    return pairs
