import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms import isomorphism

from invturan import graph as gc
from invturan import patterns as pm
from invturan.errors import CapacityExceeded, ParseError
from invturan.patterns import Biclique, Clique, Cycle, Explicit, Family, Path

from oracles import longest_path_bruteforce
from test_graph_core import small_graphs, to_nx

PATTERNS = [Path(2), Path(3), Path(4), Cycle(3), Cycle(4), Cycle(5), Clique(3), Clique(4),
            Biclique(2, 2), Biclique(1, 3), Biclique(2, 3), Explicit(gc.k4_minus(), "K4-")]


def nx_contains(g, p):
    gm = isomorphism.GraphMatcher(to_nx(g), to_nx(p.graph()))
    return gm.subgraph_is_monomorphic()


@settings(max_examples=120, deadline=None)
@given(small_graphs(max_n=8), st.sampled_from(PATTERNS))
def test_contains_matches_networkx(g, p):
    w = pm.contains(g, p)
    assert (w is not None) == nx_contains(g, p)
    if w is not None:
        # the witness really is a copy
        assert all(g.has_edge(u, v) for u, v in w.host_edges())
        assert len(set(w.mapping)) == p.graph().n


@settings(max_examples=120, deadline=None)
@given(small_graphs(max_n=9))
def test_longest_path_matches_bruteforce(g):
    assert pm.longest_path_edges(g) == longest_path_bruteforce(g.n, g.edges())
    assert pm.longest_path_dfs(g.rows, g.n) == pm.longest_path_dp(g.rows, g.n)


def test_witness_is_lexicographically_least():
    g = gc.complete(5)
    w = pm.contains(g, Path(2))
    assert w.mapping == (0, 1, 2)


def test_family_matches_first_member():
    fam = pm.parse_pattern("any(C4,P3)")
    w = pm.contains(gc.path(3), fam)
    assert w.pattern == Path(3)
    assert pm.is_free(gc.star(4), fam)


def test_count_copies():
    assert pm.count_copies(Cycle(4), gc.complete(4)) == 3
    assert pm.count_copies(Clique(3), gc.complete(5)) == 10
    assert pm.count_copies(Path(2), gc.star(4)) == 6
    with pytest.raises(CapacityExceeded):
        pm.count_copies(Path(8), gc.complete(10))


def test_parse_pattern_literals():
    assert pm.parse_pattern("P4") == Path(4)
    assert pm.parse_pattern("C6") == Cycle(6)
    assert pm.parse_pattern("K5") == Clique(5)
    assert pm.parse_pattern("K3,2") == Biclique(2, 3)
    assert pm.parse_pattern("K4-").graph().num_edges() == 5
    assert pm.parse_pattern("g6:Bw").graph() == gc.complete(3)
    fam = pm.parse_pattern("any(P4,K2,3,C4)")
    assert fam.members() == (Path(4), Biclique(2, 3), Cycle(4))
    with pytest.raises(ParseError):
        pm.parse_pattern("Q7")


def test_star_and_matching_detection():
    assert pm.is_star(Path(1)) and pm.is_star(Path(2)) and pm.is_star(Biclique(1, 5))
    assert not pm.is_star(Path(3))
    assert pm.is_matching(Explicit(gc.disjoint_union(gc.path(1), gc.path(1))))
    assert pm.has_non_star_component(Path(3))
    assert not pm.has_non_star_component(Explicit(gc.disjoint_union(gc.star(2), gc.path(1))))


def test_path_indexing_by_edges():
    assert Path(4).graph().n == 5
    assert pm.is_free(gc.complete(4), Path(4))
    assert not pm.is_free(gc.complete(5), Path(4))
