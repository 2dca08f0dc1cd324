from __future__ import annotations

from tperfect.graph import Graph, antihole, bits, complete_graph, cycle_graph, mask_of, wheel_graph


def test_bits_and_mask_round_trip():
    assert list(bits(0b101001)) == [0, 3, 5]
    assert mask_of([0, 3, 5]) == 0b101001
    assert list(bits(0)) == []


def test_cycle_and_wheel_shapes():
    c5 = cycle_graph(5)
    assert c5.edge_count == 5 and all(c5.degree(v) == 2 for v in range(5))
    w5 = wheel_graph(5)
    assert w5.n == 6 and w5.degree(0) == 5 and w5.edge_count == 10


def test_antihole_is_complement_of_cycle():
    assert antihole(7).adj == cycle_graph(7).complement().adj
    assert antihole(7).edge_count == 14


def test_induced_relabels_in_order():
    g = complete_graph(5)
    h, ids = g.induced([4, 1, 3])
    assert ids == [1, 3, 4]
    assert h.edge_count == 3


def test_delete_vertex_and_components():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert not g.is_connected()
    assert sorted(map(list, map(bits, g.components()))) == [[0, 1, 2], [3, 4]]
    h = cycle_graph(5).delete_vertex(2)
    assert h.n == 4 and h.edge_count == 3 and h.is_connected()


def test_clique_check():
    g = wheel_graph(4)
    assert g.is_clique([0, 1, 2])
    assert not g.is_clique([1, 2, 3])
