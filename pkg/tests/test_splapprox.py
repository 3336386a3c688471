import numpy as np
import pytest

from spldest import (
    Graph,
    GraphError,
    InducedSubgraph,
    WalkSample,
    build_landmark_index,
    distance_matrix,
    exact_spl_table,
    exact_spld,
    gen_preferential_attachment,
    induced_subgraph,
    landmark_spl,
    landmark_spl_table,
    observed_spls,
    run_walks,
    select_landmarks,
    spl_difference_distribution,
)
from spldest.splapprox import landmark_bound_matrices

from conftest import path3, random_connected_graph, star, triangle


def fake_sample(nodes, n):
    walks = tuple(np.array([v], dtype=np.int64) for v in nodes)
    q = np.bincount(np.concatenate(walks), minlength=n)
    return WalkSample(
        walks=walks,
        visit_counts=q,
        n=n,
        num_walks=len(walks),
        steps_per_walk=1,
        seed=0,
    )


def enumerate_shortest_path_nodes(g: Graph, s: int, t: int, length: int) -> set:
    """Nodes on any s-t path of exactly ``length`` edges, by exhaustive DFS."""
    found = set()
    stack = [(s, (s,))]
    while stack:
        node, path = stack.pop()
        if len(path) - 1 == length:
            if node == t:
                found.update(path)
            continue
        for nxt in g.neighbors(node):
            if nxt not in path:
                stack.append((nxt, path + (nxt,)))
    return found


class TestObservedSpls:
    def test_triangle_subgraph(self):
        g = triangle()
        ws = fake_sample([0, 1, 2], n=3)
        table = observed_spls(induced_subgraph(g, ws))
        assert sorted(table.spl.tolist()) == [1, 1, 1]
        assert table.excluded_pairs == 0

    def test_observed_is_upper_bound_when_edges_missing(self):
        # parent triangle, subgraph forced down to the path 0-1-2
        sub = InducedSubgraph(
            subgraph=path3(),
            nodes=np.arange(3),
            edge_fraction=2 / 3,
            parent_edge_count=3,
        )
        table = observed_spls(sub)
        pairs = {
            (int(i), int(j)): int(l)
            for i, j, l in zip(table.node_i, table.node_j, table.spl)
        }
        assert pairs[(0, 2)] == 2  # true SPL is 1 in the parent

    def test_full_coverage_matches_exact_spld(self, rng):
        g = random_connected_graph(rng, 25)
        ws = fake_sample(list(range(g.n)), n=g.n)
        table = observed_spls(induced_subgraph(g, ws))
        counts = np.bincount(table.spl)
        hist = exact_spld(g)
        assert np.array_equal(counts, hist.counts)

    def test_disconnected_dyads_are_excluded_and_counted(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        # node 2 unvisited splits G* into {0,1} and {3,4}
        ws = fake_sample([0, 1, 3, 4], n=5)
        table = observed_spls(induced_subgraph(g, ws))
        assert table.excluded_pairs == 4
        assert len(table) == 2
        assert table.spl.tolist() == [1, 1]

    def test_observed_never_undershoots_truth(self, rng):
        g = gen_preferential_attachment(150, 2, seed=1)
        ws = run_walks(g, 1, beta=0.3, seed=7)
        table = observed_spls(induced_subgraph(g, ws))
        dist = distance_matrix(g)
        assert (table.spl >= dist[table.node_i, table.node_j]).all()


class TestSelectLandmarks:
    def test_top_degree_forced(self):
        g = star(3)  # degrees 3,1,1,1
        ws = fake_sample([0, 1, 2], n=4)
        assert select_landmarks(ws, g, gamma=0.34).tolist() == [0]

    def test_degree_ties_break_to_smaller_id(self):
        g = triangle()
        ws = fake_sample([0, 1, 2], n=3)
        assert select_landmarks(ws, g, gamma=0.67).tolist() == [0, 1]

    def test_gamma_one_selects_all(self):
        g = triangle()
        ws = fake_sample([0, 1, 2], n=3)
        assert sorted(select_landmarks(ws, g, gamma=1.0).tolist()) == [0, 1, 2]

    def test_arguments(self):
        g = triangle()
        ws = fake_sample([0], n=3)
        with pytest.raises(GraphError):
            select_landmarks(ws, g, gamma=0.0)
        with pytest.raises(GraphError):
            select_landmarks(ws, g, gamma=1.5)


class TestLandmarkIndex:
    def test_path_row(self):
        idx = build_landmark_index(path3(), [1])
        assert idx.distances[0].tolist() == [1, 0, 1]

    def test_triangle_row(self):
        idx = build_landmark_index(triangle(), [0])
        assert idx.distances[0].tolist() == [0, 1, 1]

    def test_self_distance_zero(self, rng):
        g = random_connected_graph(rng, 20)
        marks = [3, 7, 11]
        idx = build_landmark_index(g, marks)
        for row, j in zip(idx.distances, marks):
            assert row[j] == 0

    def test_empty_landmarks_rejected(self):
        with pytest.raises(GraphError):
            build_landmark_index(triangle(), [])


class TestLandmarkSpl:
    def test_landmark_on_shortest_path_is_exact(self):
        idx = build_landmark_index(path3(), [1])
        upper, lower = landmark_spl(0, 2, idx)
        assert upper == 2 and lower <= 2

    def test_end_landmark_bounds_by_hand(self):
        idx = build_landmark_index(path3(), [0])
        upper, lower = landmark_spl(1, 2, idx)
        assert upper == 3  # 1 + 2
        assert lower == 1  # |1 - 2|, which equals the true SPL

    def test_exact_when_endpoint_is_landmark(self, rng):
        g = random_connected_graph(rng, 30)
        dist = distance_matrix(g)
        idx = build_landmark_index(g, [4])
        for t in range(g.n):
            if t == 4:
                continue
            upper, _ = landmark_spl(4, t, idx)
            assert upper == dist[4, t]

    def test_same_node_rejected(self):
        idx = build_landmark_index(triangle(), [0])
        with pytest.raises(GraphError):
            landmark_spl(1, 1, idx)

    def test_bounds_bracket_truth(self, rng):
        for _ in range(20):
            n = int(rng.integers(8, 51))
            g = random_connected_graph(rng, n, extra=float(rng.random()))
            dist = distance_matrix(g)
            count = max(1, int(0.2 * n))
            marks = np.argsort(-g.degrees, kind="stable")[:count]
            idx = build_landmark_index(g, marks)
            upper, lower = landmark_bound_matrices(np.arange(n), idx, with_lower=True)
            iu, ju = np.triu_indices(n, k=1)
            assert (lower[iu, ju] <= dist[iu, ju]).all()
            assert (dist[iu, ju] <= upper[iu, ju]).all()

    def test_equality_when_landmark_on_shortest_path(self, rng):
        hits = 0
        for _ in range(6):
            n = int(rng.integers(8, 26))
            g = random_connected_graph(rng, n, extra=0.6)
            dist = distance_matrix(g)
            marks = np.argsort(-g.degrees, kind="stable")[: max(1, n // 4)]
            idx = build_landmark_index(g, marks)
            for s in range(n):
                for t in range(s + 1, n):
                    true_l = int(dist[s, t])
                    on_paths = enumerate_shortest_path_nodes(g, s, t, true_l)
                    upper, _ = landmark_spl(s, t, idx)
                    if any(int(m) in on_paths for m in marks):
                        hits += 1
                        assert upper == true_l
        assert hits > 0

    def test_batch_table_matches_scalar_op(self, rng):
        g = random_connected_graph(rng, 25)
        idx = build_landmark_index(g, [0, 5, 9])
        nodes = np.array([1, 2, 6, 12, 17])
        table = landmark_spl_table(nodes, idx)
        for i, j, l in zip(table.node_i, table.node_j, table.spl):
            upper, _ = landmark_spl(int(i), int(j), idx)
            assert upper == int(l)


class TestExactTable:
    def test_matches_distance_matrix(self, rng):
        g = random_connected_graph(rng, 30)
        nodes = np.array([2, 4, 9, 20])
        table = exact_spl_table(g, nodes)
        dist = distance_matrix(g)
        assert (table.spl == dist[table.node_i, table.node_j]).all()


class TestSplDifference:
    def test_exact_table_gives_all_zero(self, rng):
        g = random_connected_graph(rng, 25)
        table = exact_spl_table(g, np.arange(g.n))
        report = spl_difference_distribution(g, table)
        assert report.zero_fraction == 1.0

    def test_path_in_triangle_difference(self):
        g = triangle()
        sub = InducedSubgraph(
            subgraph=path3(),
            nodes=np.arange(3),
            edge_fraction=2 / 3,
            parent_edge_count=3,
        )
        report = spl_difference_distribution(g, observed_spls(sub))
        assert report.per_true_spl[1].tolist() == [2, 1]  # dyad (0,2) off by one
        assert report.zero_fraction == pytest.approx(2 / 3)

    def test_precomputed_oracle_agrees(self, rng):
        g = random_connected_graph(rng, 40)
        ws = run_walks(g, 1, beta=0.4, seed=3)
        table = observed_spls(induced_subgraph(g, ws))
        a = spl_difference_distribution(g, table)
        b = spl_difference_distribution(g, table, oracle=distance_matrix(g))
        assert a.zero_fraction == b.zero_fraction
        assert set(a.per_true_spl) == set(b.per_true_spl)

    def test_ba_uncovers_most_shortest_paths(self):
        # scale-free walks recover well over half the true SPLs on average
        fractions = []
        for seed in range(20):
            g = gen_preferential_attachment(1000, 3, seed=seed)
            ws = run_walks(g, 1, beta=0.2, seed=1000 + seed)
            table = observed_spls(induced_subgraph(g, ws))
            fractions.append(spl_difference_distribution(g, table).zero_fraction)
        assert np.mean(fractions) > 0.6
