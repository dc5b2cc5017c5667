import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treeldpc.construct import eg2, type1a, type1b, type2_l3, type2_l4
from treeldpc.tanner import StructureError, TannerGraph

# standard Fano plane lines on points 0..6
FANO_LINES = [{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}]


def to_nx(G: TannerGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(("v", i) for i in range(G.n_var))
    g.add_nodes_from(("c", i) for i in range(G.n_chk))
    g.add_edges_from((("v", v), ("c", c)) for v, c in G.edges().tolist())
    return g


SMALL = [
    ("type1a-3", lambda: type1a(3)),
    ("type1a-4", lambda: type1a(4)),
    ("type1b-2-1", lambda: type1b(2, 1)),
    ("type1b-3-1", lambda: type1b(3, 1)),
    ("type1b-2-2", lambda: type1b(2, 2)),
    ("type2l3-2-1", lambda: type2_l3(2, 1)),
    ("type2l3-3-1", lambda: type2_l3(3, 1)),
    ("type2l4-2-1", lambda: type2_l4(2, 1)),
    ("eg2-2-2", lambda: eg2(2, 2)),
]


@pytest.mark.parametrize("name,make", SMALL)
def test_girth_and_diameter_match_networkx(name, make):
    G = make()
    g = to_nx(G)
    assert G.girth() == nx.girth(g)
    assert G.diameter() == nx.diameter(g)
    assert G.is_transpose_consistent()


def test_tree_has_infinite_girth():
    # path v0 - c0 - v1 - c1 - v2
    G = TannerGraph(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])
    assert G.girth() == math.inf
    assert G.diameter() == 4


def test_single_edge_diameter():
    assert TannerGraph(1, 1, [(0, 0)]).diameter() == 1


def test_disconnected_diameter_raises():
    G = TannerGraph.from_matrix(np.eye(2, dtype=int))
    assert not G.is_connected()
    with pytest.raises(ValueError):
        G.diameter()


def test_four_cycle_detected():
    G = TannerGraph.from_matrix(np.ones((2, 2), dtype=int))
    assert G.girth() == 4


def test_duplicate_edge_rejected():
    with pytest.raises(StructureError):
        TannerGraph(2, 2, [(0, 0), (0, 0)])
    with pytest.raises(StructureError):
        TannerGraph(2, 2, [(0, 5)])


def test_identity_matrix_gives_disjoint_edges():
    G = TannerGraph.from_matrix(np.eye(2, dtype=int))
    assert G.var_adj == ((0,), (1,))
    assert G.n_edges == 2


def test_matrix_round_trip_type1a():
    G = type1a(3)
    H = G.to_matrix()
    assert TannerGraph.from_matrix(H) == G
    assert np.array_equal(G.to_sparse().toarray(), H)


def test_pg_graph_is_fano_incidence():
    H = type2_l3(2, 1).to_matrix()
    assert (H.sum(axis=0) == 3).all() and (H.sum(axis=1) == 3).all()
    # some relabelling of points and lines turns it into the standard listing
    G = nx.Graph()
    for c, row in enumerate(H):
        G.add_edges_from((("c", c), ("v", v)) for v in np.flatnonzero(row))
    F = nx.Graph()
    for li, line in enumerate(FANO_LINES):
        F.add_edges_from((("c", li), ("v", v)) for v in line)
    assert nx.is_isomorphic(G, F)


def test_degree_profiles():
    v, c = type1b(2, 2).degree_profile()
    assert v == {4: 17} and c == {4: 17}
    v, c = type2_l3(3, 1).degree_profile()
    assert v == {4: 13} and c == {4: 13}
    v, c = TannerGraph(0, 0, []).degree_profile()
    assert not v and not c


@pytest.mark.parametrize("name,make", SMALL)
def test_alist_round_trip(name, make):
    G = make()
    text = G.to_alist()
    assert TannerGraph.from_alist(text) == G
    n, m = map(int, text.splitlines()[0].split())
    assert (n, m) == (G.n_var, G.n_chk)


def test_alist_header_pg():
    lines = type2_l3(2, 1).to_alist().splitlines()
    assert lines[0] == "7 7" and lines[1] == "3 3"


def test_alist_inconsistent_sides_rejected():
    bad = "2 1\n1 2\n1 1\n2\n1\n1\n1 1\n"
    with pytest.raises(ValueError):
        TannerGraph.from_alist(bad)
    with pytest.raises(ValueError):
        TannerGraph.from_alist("2 1\n1 2\n")


def test_labels():
    G = type1b(3, 1)
    assert G.var_index("root") == G.label_map["root"][1]
    with pytest.raises(KeyError):
        G.chk_index("root")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([s for s in SMALL if s[0] != "type1a-4"]), st.integers(0, 2**32 - 1))
def test_girth_invariant_under_relabelling(case, seed):
    G = case[1]()
    rng = np.random.default_rng(seed)
    R = G.relabel(rng.permutation(G.n_var), rng.permutation(G.n_chk))
    assert R.girth() == G.girth()
    assert R.degree_profile() == G.degree_profile()


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_random_matrix_girth_matches_networkx(m, n, seed):
    rng = np.random.default_rng(seed)
    H = (rng.random((m, n)) < 0.4).astype(int)
    G = TannerGraph.from_matrix(H)
    try:
        want = nx.girth(to_nx(G))
    except nx.NetworkXError:
        want = math.inf
    assert G.girth() == want
