from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from inducibility.asymmetry import find_distinguishing_set
from inducibility.blowup import balanced_blowup, nested_blowup
from inducibility.formulas import f_value
from inducibility.graph import cherry, sample_gnp, smallest_asymmetric
from inducibility.rolecalc import (
    CopyFamily, RoleConflict, all_embeddings, core_production, is_core_fixpoint, is_role_consistent,
    nonstationary_pairing, preset_threshold, q_partition, role_partition,
)


@given(graphs(min_n=2, max_n=4), graphs(min_n=4, max_n=9))
def test_q_partition_classes_are_role_consistent(h, g):
    q = find_distinguishing_set(h, h.n - 1).qset
    fam = all_embeddings(h, g)
    classes = q_partition(fam, sorted(q))
    assert sum(len(c) for c in classes.values()) == len(fam)
    for c in classes.values():
        assert is_role_consistent(c)[0]
        rp = role_partition(c)
        assert len(c) <= rp.product() <= f_value(g.n - len(rp.redundant), h.n)


def test_symmetric_pattern_family_conflicts():
    fam = all_embeddings(cherry(), balanced_blowup(cherry(), 6).realized)
    ok, wit = is_role_consistent(fam)
    assert not ok
    x, a, b = wit
    assert a.index(x) != b.index(x)
    with pytest.raises(RoleConflict):
        role_partition(fam)


def test_role_partition_of_balanced_blowup():
    h = smallest_asymmetric()
    fam = all_embeddings(h, balanced_blowup(h, 12).realized)
    rp = role_partition(fam)
    assert len(fam) == rp.product() == f_value(12, 6) == 64
    assert not rp.redundant


@given(graphs(min_n=2, max_n=4), graphs(min_n=4, max_n=9), st.fractions(0, 6))
def test_core_production_postconditions(h, g, thr):
    fam = all_embeddings(h, g)
    core, left = core_production(fam, thr)
    assert len(core) + len(left) == len(fam)
    assert sorted(core.members + left.members) == sorted(fam.members)
    assert is_core_fixpoint(core, thr)
    assert len(left) <= g.n * thr
    again, rest = core_production(core, thr)
    assert again.members == core.members and not rest.members


def test_leftover_bound_on_role_consistent_family():
    h = smallest_asymmetric()
    g = nested_blowup(h, 30)
    q = find_distinguishing_set(h, 5).qset
    for cls in q_partition(all_embeddings(h, g), sorted(q)).values():
        core, left = core_production(cls, 3)
        assert len(left) <= g.n * 3


def test_preset_threshold_is_positive_rational():
    t = preset_threshold(64, 4)
    assert isinstance(t, Fraction) and 0 < t < 1


@given(st.dictionaries(st.integers(0, 30), st.integers(0, 30), max_size=20))
def test_pairing_on_injections(raw):
    seen, f = set(), {}
    for k, v in raw.items():
        if v not in seen:
            f[k] = v
            seen.add(v)
    pairs = nonstationary_pairing(f)
    s = sum(1 for a, b in f.items() if a != b)
    ends = [x for p in pairs for x in p]
    assert len(ends) == len(set(ends))
    assert all(f[a] == b != a for a, b in pairs)
    assert 3 * len(pairs) >= s


def test_pairing_rejects_non_injective():
    with pytest.raises(ValueError):
        nonstationary_pairing({0: 1, 2: 1})


def test_pairing_on_odd_cycle():
    assert nonstationary_pairing({0: 1, 1: 2, 2: 0}) == [(0, 1)]
