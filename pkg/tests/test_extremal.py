import random

import pytest

from inducibility.blowup import make_blowup, nested_blowup
from inducibility.canon import canonical_form
from inducibility.counting import count_induced_copies
from inducibility.extremal import (
    HillclimbConfig, build_counterexample, exhaustive_extremal, hillclimb_extremal,
    recognize_blowup_plus, run_checks,
)
from inducibility.graph import (
    Graph, cherry, complete_graph, cycle_graph, graph6_decode, path_graph, sample_gnp,
    smallest_asymmetric,
)


def test_exhaustive_small_cases():
    r = exhaustive_extremal(complete_graph(3), 5)
    assert r.max_copies == 10 and r.extremal_g6 == ["D~{"]
    r = exhaustive_extremal(cherry(), 4)
    assert r.max_copies == 4
    assert canonical_form(cycle_graph(4)).decode() in r.extremal_g6
    r = exhaustive_extremal(complete_graph(2), 3)
    assert r.max_copies == 3 and r.extremal_g6 == [canonical_form(complete_graph(3)).decode()]


def test_exhaustive_lists_each_maximizer_once():
    r = exhaustive_extremal(path_graph(3), 6)
    assert len(r.extremal_g6) == len(set(r.extremal_g6))
    for s in r.extremal_g6:
        assert count_induced_copies(path_graph(3), graph6_decode(s)).copies == r.max_copies


def test_exhaustive_bound():
    with pytest.raises(ValueError):
        exhaustive_extremal(cherry(), 10)


def test_hillclimb_reaches_k5_and_is_deterministic():
    cfg = HillclimbConfig(restarts=2, seed=9)
    a = hillclimb_extremal(complete_graph(3), 5, cfg)
    assert a.max_copies == 10
    assert a == hillclimb_extremal(complete_graph(3), 5, cfg)


def test_hillclimb_never_below_nested_start():
    h = smallest_asymmetric()
    r = hillclimb_extremal(h, 12, HillclimbConfig(restarts=0, max_steps=3, seed=1))
    assert r.max_copies >= count_induced_copies(h, nested_blowup(h, 12)).copies


def test_recognize_examples():
    r = recognize_blowup_plus(cycle_graph(4), complete_graph(2))
    assert set(r.parts) == {frozenset({0, 2}), frozenset({1, 3})}
    assert recognize_blowup_plus(path_graph(4), complete_graph(2)) is None
    g = make_blowup(complete_graph(2), [2, 2]).realized
    rows = list(g.rows)
    rows[0] |= 1 << 1
    rows[1] |= 1 << 0
    assert recognize_blowup_plus(Graph(4, rows), complete_graph(2)) is not None


def _check_assignment(g, pattern, parts):
    where = {v: i for i, p in enumerate(parts) for v in p}
    assert sorted(where) == list(range(g.n)) and all(parts)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if where[u] != where[v]:
                assert g.adj(u, v) == pattern.adj(where[u], where[v])


def test_recognize_complete_and_sound():
    rng = random.Random(5)
    for _ in range(100):
        h = sample_gnp(rng.randint(2, 4), "1/2", rng.getrandbits(32))
        sizes = [rng.randint(1, 3) for _ in range(h.n)]
        g = make_blowup(h, sizes).realized
        rows = list(g.rows)
        start = 0
        for a in sizes:
            for u in range(start, start + a):
                for v in range(u + 1, start + a):
                    if rng.random() < 0.5:
                        rows[u] |= 1 << v
                        rows[v] |= 1 << u
            start += a
        perm = list(range(g.n))
        rng.shuffle(perm)
        g = Graph(g.n, rows).relabel(perm)
        r = recognize_blowup_plus(g, h)
        assert r is not None
        _check_assignment(g, h, r.parts)
    for _ in range(100):
        g = sample_gnp(rng.randint(4, 12), "1/2", rng.getrandbits(32))
        h = sample_gnp(3, "1/2", rng.getrandbits(32))
        r = recognize_blowup_plus(g, h)
        if r is not None:
            _check_assignment(g, h, r.parts)


def test_counterexample_errors():
    from inducibility.enumeration import enumerate_graphs
    from inducibility.counting import automorphism_count

    asym = [g for g in enumerate_graphs(6) if automorphism_count(g) == 1]
    with pytest.raises(ValueError):
        build_counterexample(1, 3, [complete_graph(1)] * 3)
    with pytest.raises(ValueError):
        build_counterexample(6, 2, [asym[0], asym[0].relabel([5, 4, 3, 2, 1, 0])])
    with pytest.raises(ValueError):
        build_counterexample(6, 2, [asym[0], cycle_graph(6)])


def test_counterexample_small():
    from inducibility.enumeration import enumerate_graphs
    from inducibility.counting import automorphism_count

    asym = [g for g in enumerate_graphs(6) if automorphism_count(g) == 1]
    cert = build_counterexample(6, 2, asym[:2])
    assert cert.ok
    assert cert.g_value == 6 ** 12
    assert run_checks(cert) == cert.checks
