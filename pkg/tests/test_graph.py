import numpy as np
import pytest

from spldest import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    SpldHistogram,
    bfs_distances,
    bfs_sssp,
    diameter,
    distance_matrix,
    exact_spld,
    has_triangle,
    is_connected,
    largest_connected_component,
    mean_distance,
)

from conftest import (
    apsp_matrix_power,
    cycle4,
    path3,
    random_connected_graph,
    spld_counts_from_matrix,
    triangle,
    two_disjoint_edges,
)


class TestGraphConstruction:
    def test_adjacency_sorted_and_symmetric(self):
        g = Graph(4, [(2, 0), (3, 1), (0, 1), (0, 3)])
        for i, nbrs in enumerate(g.adjacency):
            assert list(nbrs) == sorted(nbrs)
            for j in nbrs:
                assert i in g.adjacency[j]
        assert sum(g.degrees) == 2 * g.m

    def test_drops_self_loops_and_duplicates_with_counts(self):
        g = Graph(3, [(0, 1), (1, 0), (0, 1), (2, 2), (1, 2)])
        assert g.m == 2
        assert g.dropped_self_loops == 1
        assert g.dropped_duplicate_edges == 2

    def test_rejects_out_of_range_edges(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 2)])
        with pytest.raises(GraphError):
            Graph(-1, [])

    def test_edge_array_matches_edges(self):
        g = cycle4()
        assert g.edge_array().tolist() == [list(e) for e in g.edges()]


class TestBfs:
    def test_path_graph(self):
        assert bfs_sssp(path3(), 0).tolist() == [0, 1, 2]

    def test_triangle_from_last_node(self):
        assert bfs_sssp(triangle(), 2).tolist() == [1, 1, 0]

    def test_disconnected_sentinel_is_inf(self):
        d = bfs_sssp(two_disjoint_edges(), 0)
        assert d[0] == 0 and d[1] == 1
        assert np.isinf(d[2]) and np.isinf(d[3])

    def test_invalid_source(self):
        with pytest.raises(GraphError):
            bfs_sssp(path3(), 3)
        with pytest.raises(GraphError):
            bfs_sssp(path3(), -1)

    def test_bulk_rows_match_single_source(self, rng):
        g = random_connected_graph(rng, 40)
        rows = bfs_distances(g, np.arange(g.n))
        for s in range(g.n):
            assert np.array_equal(rows[s], bfs_sssp(g, s))

    def test_triangle_inequality_on_sampled_triples(self, rng):
        for _ in range(5):
            g = random_connected_graph(rng, 30)
            dist = distance_matrix(g)
            for _ in range(200):
                s, u, t = rng.integers(0, g.n, size=3)
                assert dist[s, t] <= dist[s, u] + dist[u, t]
                assert dist[s, t] >= abs(dist[s, u] - dist[u, t])


class TestExactSpld:
    def test_triangle(self):
        h = exact_spld(triangle())
        assert h.as_dict() == {1: 3}
        assert h.total == 3
        assert h.fractions[1] == 1.0

    def test_path(self):
        h = exact_spld(path3())
        assert h.as_dict() == {1: 2, 2: 1}
        assert h.total == 3

    def test_cycle4_enumerated_by_hand(self):
        # 6 dyads: 4 edges at distance 1, both diagonals at distance 2
        h = exact_spld(cycle4())
        assert h.as_dict() == {1: 4, 2: 2}
        assert h.total == 6
        assert h.fractions[1] == pytest.approx(2 / 3)
        assert h.fractions[2] == pytest.approx(1 / 3)

    def test_disconnected_names_pair(self):
        with pytest.raises(DisconnectedGraphError, match=r"0 and 2"):
            exact_spld(two_disjoint_edges())

    def test_matches_independent_matrix_power_oracle(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 65))
            g = random_connected_graph(rng, n, extra=float(rng.random() * 2))
            expected = spld_counts_from_matrix(apsp_matrix_power(g))
            assert exact_spld(g).as_dict() == expected

    def test_fractions_sum_to_one(self, rng):
        g = random_connected_graph(rng, 50)
        h = exact_spld(g)
        assert h.fractions.sum() == pytest.approx(1.0, abs=1e-12)

    def test_histogram_invariants_enforced(self):
        with pytest.raises(GraphError):
            SpldHistogram(counts=np.array([0, 2]), total=3)
        with pytest.raises(GraphError):
            SpldHistogram(counts=np.array([1, 2]), total=3)


class TestConnectivity:
    def test_examples(self):
        assert has_triangle(triangle()) and is_connected(triangle())
        assert not has_triangle(cycle4()) and is_connected(cycle4())
        g = two_disjoint_edges()
        assert not has_triangle(g) and not is_connected(g)

    def test_largest_component_tie_breaks_to_node_zero(self):
        lcc, mapping = largest_connected_component(two_disjoint_edges())
        assert lcc.n == 2 and lcc.m == 1
        assert set(mapping) == {0, 1}

    def test_largest_component_of_connected_graph_is_identity(self):
        g = cycle4()
        lcc, mapping = largest_connected_component(g)
        assert mapping == {i: i for i in range(4)}
        assert list(lcc.edges()) == list(g.edges())

    def test_triangle_plus_isolate(self):
        g = Graph(4, [(0, 1), (1, 2), (0, 2)])
        lcc, mapping = largest_connected_component(g)
        assert lcc.n == 3 and lcc.m == 3
        assert 3 not in mapping

    def test_relabeling_is_order_preserving(self):
        g = Graph(5, [(1, 3), (3, 4)])  # component {1,3,4} plus isolates 0,2
        lcc, mapping = largest_connected_component(g)
        assert mapping == {1: 0, 3: 1, 4: 2}
        assert list(lcc.edges()) == [(0, 1), (1, 2)]

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            largest_connected_component(Graph(0, []))


class TestSummaries:
    def test_examples(self):
        assert mean_distance(triangle()) == pytest.approx(1.0)
        assert diameter(triangle()) == 1
        assert mean_distance(path3()) == pytest.approx(4 / 3)
        assert diameter(path3()) == 2
        assert mean_distance(cycle4()) == pytest.approx(4 / 3)
        assert diameter(cycle4()) == 2

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            mean_distance(two_disjoint_edges())

    def test_diameter_equals_max_support(self, rng):
        g = random_connected_graph(rng, 40)
        assert diameter(g) == exact_spld(g).max_length
