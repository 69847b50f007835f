import itertools

from hypothesis import given, strategies as st

from conftest import graphs
from oracles import brute_aut
from inducibility.canon import are_isomorphic, automorphism_group_order, canonical_form
from inducibility.graph import (
    complete_bipartite, complete_graph, cycle_graph, empty_graph, graph6_encode, path_graph,
    smallest_asymmetric,
)


@given(graphs(max_n=9), st.randoms())
def test_canonical_form_invariant_under_relabel(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@given(graphs(max_n=9), st.randoms())
def test_isomorphism_witness(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    ok, w = are_isomorphic(g, g.relabel(perm))
    assert ok
    h = g.relabel(perm)
    assert all(g.adj(u, v) == h.adj(w[u], w[v]) for u, v in itertools.combinations(range(g.n), 2))


def test_distinguishes_cospectral_style_pairs():
    assert not are_isomorphic(cycle_graph(6), complete_bipartite(3, 3))[0]
    assert not are_isomorphic(path_graph(4), complete_bipartite(1, 3))[0]
    assert canonical_form(complete_graph(5)) == graph6_encode(complete_graph(5)).encode()


@given(graphs(max_n=7))
def test_automorphism_order_matches_brute_force(g):
    assert automorphism_group_order(g) == brute_aut(g)


def test_automorphism_orders():
    assert automorphism_group_order(cycle_graph(5)) == 10
    assert automorphism_group_order(complete_graph(6)) == 720
    assert automorphism_group_order(empty_graph(7)) == 5040
    assert automorphism_group_order(smallest_asymmetric()) == 1
    assert automorphism_group_order(complete_bipartite(3, 4)) == 144
