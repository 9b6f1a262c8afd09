import math

import networkx as nx
import numpy as np
import pytest

from dkq import graphs
from dkq.gf import field_of_order
from dkq.graphs import SimpleGraph


@pytest.fixture(scope="module")
def F3():
    return field_of_order(3)


def test_codec_roundtrip():
    v = graphs.all_tuples(5, 3)
    assert np.array_equal(graphs.decode(graphs.encode(v, 5), 5, 3), v)
    assert graphs.encode([1, 0, 0], 5) == 1


def test_d2_small(F3):
    g = graphs.d_graph(2, F3)
    assert g.n == 18 and len(g.edges) == 27
    assert set(g.point_degrees()) == {3} and set(g.line_degrees()) == {3}


def test_girth_d2_is_six(F3):
    # D(2,q) contains hexagons; networkx confirms
    g = graphs.d_graph(2, F3)
    assert graphs.girth(g) == 6
    assert nx.girth(nx.from_scipy_sparse_array(g.adjacency())) == 6


def test_girth_matches_networkx(F3):
    for k in (3, 4):
        g = graphs.d_graph(k, F3)
        assert graphs.girth(g) == nx.girth(nx.from_scipy_sparse_array(g.adjacency()))


def test_girth_d5(F3):
    assert graphs.girth(graphs.d_graph(5, F3)) == 12
    assert graphs.girth(graphs.d_graph(5, field_of_order(5))) == 10


def test_girth_edge_cases():
    assert graphs.girth(SimpleGraph(2, np.array([[0, 1]]))) == math.inf
    tri = SimpleGraph(3, np.array([[0, 1], [0, 2], [1, 2]]))
    assert graphs.girth(tri) == 3


def test_components():
    g = SimpleGraph(4, np.zeros((0, 2), dtype=np.int64))
    assert len(graphs.components(g)) == 4
    assert len(graphs.components(graphs.d_graph(5, field_of_order(3)))) == 1


def test_gamma_and_iso(F3):
    G = graphs.gamma_graph(F3)
    assert G.n == 486 and set(G.point_degrees()) == {3}
    assert np.array_equal(graphs.relabel(graphs.d_graph(5, F3), F3).edges, G.edges)
    assert np.array_equal(graphs.iso_pi(F3, [0] * 5, "point"), [0] * 5)
    F5 = field_of_order(5)
    assert graphs.iso_pi(F5, [1, 1, 1, 1, 1], "point").tolist() == [1, 1, 1, 2, 3]
    with pytest.raises(ValueError):
        graphs.iso_pi(F3, [0] * 5, "plane")


def test_group_examples(F3):
    assert graphs.group_mul(F3, [1, 0, 0, 0, 0], [0, 1, 0, 0, 0]).tolist() == [1, 1, 0, 2, 0]
    rng = np.random.default_rng(0)
    F7 = field_of_order(7)
    X = rng.integers(0, 7, (1000, 5))
    assert not graphs.group_mul(F7, X, graphs.group_inv(F7, X)).any()
    assert np.array_equal(graphs.group_mul(F7, X, graphs.IDENTITY), X)


def test_gen_set(F3):
    S = graphs.gen_set(F3)
    assert len(S) == 6 and not (S == 0).all(axis=1).any()
    assert set(map(tuple, S.tolist())) == set(map(tuple, graphs.group_inv(F3, S).tolist()))


def test_point_graph(F3):
    C, P = graphs.cayley_graph(F3), graphs.point_graph_direct(F3)
    assert np.array_equal(C.edges, P.edges) and len(C.edges) == 729
    assert set(C.degrees()) == {6}
    assert np.array_equal(graphs.halved_graph(graphs.gamma_graph(F3)).edges, P.edges)


def test_point_graph_q5():
    F = field_of_order(5)
    C = graphs.cayley_graph(F)
    assert C.n == 3125 and set(C.degrees()) == {20}
    assert len(graphs.components(C)) == 1


def test_export_deterministic(F3, tmp_path):
    import io
    bufs = []
    for _ in range(2):
        b = io.StringIO()
        graphs.write_edge_csv(graphs.d_graph(5, F3), b)
        bufs.append(b.getvalue())
    lines = bufs[0].splitlines()
    assert bufs[0] == bufs[1]
    assert lines[0] == "# d-graph k=5 q=3" and len(lines) == 730
