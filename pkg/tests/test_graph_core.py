import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from invturan import graph as gc
from invturan.errors import BadParameter, CapacityExceeded, ParseError
from invturan.graph import SmallGraph

from oracles import canonical_bruteforce


@st.composite
def small_graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SmallGraph.from_edges(n, chosen)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# -- graph6 / sparse6 -------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(small_graphs(max_n=20))
def test_graph6_matches_networkx(g):
    ours = gc.graph6_encode(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).strip()
    assert ours == theirs
    assert gc.graph6_decode(theirs) == g


@settings(max_examples=200, deadline=None)
@given(small_graphs(max_n=20))
def test_sparse6_matches_networkx(g):
    ours = gc.sparse6_encode(g)
    theirs = nx.to_sparse6_bytes(to_nx(g), header=False).strip()
    assert ours == theirs
    assert gc.sparse6_decode(theirs) == g


def test_graph6_long_form_roundtrip():
    g = gc.path(63)  # 64 vertices forces the 4-byte size prefix
    data = gc.graph6_encode(g)
    assert data[0] == 126
    assert gc.graph6_decode(data) == g
    assert nx.from_graph6_bytes(data).number_of_edges() == 63


def test_graph6_examples():
    assert gc.graph6_encode(gc.complete(3)) == b"Bw"
    assert gc.graph6_decode(b">>graph6<<Bw") == gc.complete(3)
    assert gc.decode(":Bc") == gc.sparse6_decode(b":Bc")


@pytest.mark.parametrize("bad", [b"", b"B", b"Bwx", b"B\x01", b"~??"])
def test_graph6_parse_errors(bad):
    with pytest.raises(ParseError):
        gc.graph6_decode(bad)


def test_parse_error_offset():
    with pytest.raises(ParseError, match="byte"):
        gc.graph6_decode(b"C\x20")


# -- constructors -------------------------------------------------------------

def test_constructor_counts():
    assert gc.complete(6).num_edges() == 15
    assert gc.biclique(3, 4).num_edges() == 12
    assert gc.path(4).n == 5 and gc.path(4).num_edges() == 4
    assert gc.cycle(5).num_edges() == 5
    assert gc.k4_minus().num_edges() == 5
    assert gc.turan(9, 3).num_edges() == 27
    assert gc.turan_part_sizes(10, 3) == [4, 3, 3]
    for name, e in {"K5-": 9, "K5--adjacent": 8, "K5--disjoint": 8, "K5-K3": 7,
                    "K5-P3": 7, "K5-P1uP2": 7, "K5-K1,3": 7}.items():
        assert gc.k5_variant(name).num_edges() == e


def test_turan_edges_against_construction():
    for n in range(0, 20):
        for r in range(1, 12):
            assert gc.turan_edges(n, r) == gc.turan(n, r).num_edges()


def test_k5_two_edge_forms_distinct():
    a, b = gc.k5_variant("K5--adjacent"), gc.k5_variant("K5--disjoint")
    assert not nx.is_isomorphic(to_nx(a), to_nx(b))


def test_union_and_identify():
    u = gc.disjoint_union(gc.complete(3), gc.path(2))
    assert u.n == 6 and u.num_edges() == 5 and len(u.components()) == 2
    j = gc.identify(gc.complete(3), 0, gc.complete(3), 0)
    assert j.n == 5 and j.num_edges() == 6


def test_errors():
    with pytest.raises(CapacityExceeded):
        gc.complete(65)
    with pytest.raises(BadParameter):
        gc.turan(5, 0)
    with pytest.raises(BadParameter):
        gc.biclique(-1, 2)
    with pytest.raises(BadParameter):
        SmallGraph(2, (1, 0))  # asymmetric rows


# -- canonical form ---------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=10), st.randoms(use_true_random=False))
def test_canonical_invariant_under_relabel(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert gc.canonical_key(g) == gc.canonical_key(h)
    p, cg = gc.canonical_labeling(g)
    assert g.relabel(p) == cg


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=7), small_graphs(max_n=7))
def test_canonical_separates_like_bruteforce(g, h):
    if g.n != h.n:
        return
    same = canonical_bruteforce(g.n, g.edges()) == canonical_bruteforce(h.n, h.edges())
    assert (gc.canonical_key(g) == gc.canonical_key(h)) == same


def test_canonical_hard_regular_graphs():
    # Petersen graph vs its relabellings, and vs a non-isomorphic 3-regular graph
    pet = SmallGraph.from_edges(10, list(nx.petersen_graph().edges()))
    rnd = random.Random(5)
    for _ in range(5):
        perm = list(range(10))
        rnd.shuffle(perm)
        assert gc.canonical_key(pet.relabel(perm)) == gc.canonical_key(pet)
    prism = SmallGraph.from_edges(10, list(nx.circular_ladder_graph(5).edges()))
    assert gc.canonical_key(prism) != gc.canonical_key(pet)


def test_canonical_cap():
    with pytest.raises(CapacityExceeded):
        gc.canonical_key(gc.path(20))


# -- enumeration --------------------------------------------------------------

def test_enumeration_counts():
    # OEIS A000088
    assert gc.graph_counts(7) == [1, 1, 2, 4, 11, 34, 156, 1044]


@pytest.mark.slow
def test_enumeration_count_eight():
    assert sum(1 for _ in gc.enumerate_graphs(8)) == 12346


def test_enumeration_is_isomorph_free_and_sorted():
    gs = list(gc.enumerate_graphs(6))
    keys = [gc.canonical_key(g) for g in gs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys) == 156
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 6]
    assert len(atlas) == 156


def test_enumeration_edge_range_and_filter():
    assert sum(1 for _ in gc.enumerate_graphs(5, 4)) == 6
    conn = list(gc.enumerate_graphs(6, filter=lambda g: g.is_connected()))
    assert len(conn) == 112  # OEIS A001349


def test_enumeration_prune_matches_filter():
    tri_free = lambda g: not any(g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
                                 for a in range(g.n) for b in range(a + 1, g.n) for c in range(b + 1, g.n))
    pruned = [gc.canonical_key(g) for g in gc.enumerate_graphs(7, prune=tri_free)]
    filtered = [gc.canonical_key(g) for g in gc.enumerate_graphs(7, filter=tri_free)]
    assert pruned == filtered and len(pruned) == 107  # triangle-free graphs on 7 vertices (A006785)


def test_enumeration_shards_partition_stream():
    full = [gc.canonical_key(g) for g in gc.enumerate_graphs(6)]
    shards = [[gc.canonical_key(g) for g in gc.enumerate_graphs(6, shard=(i, 3))] for i in range(3)]
    merged = sorted(k for s in shards for k in s)
    assert merged == full


def test_enumeration_cap():
    with pytest.raises(CapacityExceeded):
        next(gc.enumerate_graphs(11))
