import numpy as np
import pytest

from spldest import (
    DisconnectedGraphError,
    GraphError,
    WalkSample,
    dyad_multiplicities,
    gen_preferential_attachment,
    induced_subgraph,
    run_walks,
    simulate_walk,
)

from conftest import path3, triangle, two_disjoint_edges


def make_sample(visits_by_walk, n):
    walks = tuple(np.array(w, dtype=np.int64) for w in visits_by_walk)
    q = np.bincount(np.concatenate(walks), minlength=n)
    return WalkSample(
        walks=walks,
        visit_counts=q,
        n=n,
        num_walks=len(walks),
        steps_per_walk=len(walks[0]),
        seed=0,
    )


class TestRunWalks:
    def test_consecutive_pairs_are_edges_and_q_sums(self):
        g = triangle()
        ws = run_walks(g, 1, beta=0.9, seed=3)
        # B = round(0.9 * 3) = 3 recorded nodes
        assert ws.steps_per_walk == 3
        assert ws.visit_counts.sum() == ws.s_size == 3
        for walk in ws.walks:
            for a, b in zip(walk[:-1], walk[1:]):
                assert g.has_edge(int(a), int(b))

    def test_forced_transition_on_path_endpoints(self):
        g = path3()
        ws = run_walks(g, 1, beta=0.99, seed=11)
        seq = ws.walks[0]
        for a, b in zip(seq[:-1], seq[1:]):
            if a == 0:
                assert b == 1
            if a == 2:
                assert b == 1

    def test_stationary_visits_on_k3(self):
        # stationary distribution of a regular graph is uniform
        t = 300_000
        walk = simulate_walk(triangle(), steps=t, seed=5)
        freq = np.bincount(walk, minlength=3) / t
        assert np.abs(freq - 1 / 3).max() < 0.01

    def test_determinism(self):
        g = gen_preferential_attachment(200, 3, seed=0)
        a = run_walks(g, 3, beta=0.3, seed=21)
        b = run_walks(g, 3, beta=0.3, seed=21)
        assert all(np.array_equal(x, y) for x, y in zip(a.walks, b.walks))
        c = run_walks(g, 3, beta=0.3, seed=22)
        assert any(not np.array_equal(x, y) for x, y in zip(a.walks, c.walks))

    def test_distinct_starts(self):
        g = gen_preferential_attachment(50, 2, seed=0)
        ws = run_walks(g, 10, beta=0.8, seed=1)
        starts_seen = len(ws.walks)
        assert starts_seen == 10

    def test_burn_in_keeps_recorded_length(self):
        g = gen_preferential_attachment(100, 2, seed=0)
        plain = run_walks(g, 1, beta=0.5, seed=9)
        burned = run_walks(g, 1, beta=0.5, seed=9, burn_in=40)
        assert len(burned.walks[0]) == len(plain.walks[0]) == plain.steps_per_walk
        assert not np.array_equal(plain.walks[0], burned.walks[0])

    def test_argument_errors(self):
        g = triangle()
        with pytest.raises(GraphError):
            run_walks(g, 1, beta=0.0, seed=0)
        with pytest.raises(GraphError):
            run_walks(g, 1, beta=1.0, seed=0)
        with pytest.raises(GraphError):
            run_walks(g, 0, beta=0.5, seed=0)
        with pytest.raises(GraphError):
            run_walks(g, 1, beta=0.3, seed=0)  # 0.9 steps per walk < 2
        with pytest.raises(GraphError):
            run_walks(g, 4, beta=0.9, seed=0)  # more walks than nodes
        with pytest.raises(DisconnectedGraphError):
            run_walks(two_disjoint_edges(), 1, beta=0.9, seed=0)

    def test_invariants_on_real_sample(self):
        g = gen_preferential_attachment(300, 3, seed=2)
        ws = run_walks(g, 2, beta=0.4, seed=17)
        assert ws.visit_counts.sum() == ws.s_size
        distinct = ws.distinct_nodes
        assert len(distinct) == (ws.visit_counts > 0).sum()
        assert len(distinct) <= ws.s_size


class TestInducedSubgraph:
    def test_full_coverage_equals_parent(self):
        g = triangle()
        ws = make_sample([[0, 1, 2, 0]], n=3)
        sub = induced_subgraph(g, ws)
        assert sub.subgraph.m == g.m
        assert sub.edge_fraction == 1.0
        assert np.array_equal(sub.nodes, np.arange(3))

    def test_nonadjacent_pair_yields_no_edges(self):
        g = path3()
        ws = make_sample([[0], [2]], n=3)
        sub = induced_subgraph(g, ws)
        assert sub.subgraph.m == 0
        assert sub.edge_fraction == 0.0

    def test_single_edge_of_triangle(self):
        g = triangle()
        ws = make_sample([[0], [1]], n=3)
        sub = induced_subgraph(g, ws)
        assert sub.subgraph.m == 1
        assert sub.edge_fraction == pytest.approx(1 / 3)

    def test_sample_from_other_graph_rejected(self):
        ws = make_sample([[0, 1]], n=5)
        with pytest.raises(GraphError):
            induced_subgraph(triangle(), ws)

    def test_edge_fraction_monotone_in_beta(self):
        g = gen_preferential_attachment(400, 3, seed=8)
        fractions = []
        for beta in (0.05, 0.1, 0.2, 0.4):
            ws = run_walks(g, 1, beta=beta, seed=33)
            fractions.append(induced_subgraph(g, ws).edge_fraction)
        assert fractions == sorted(fractions)


class TestDyadMultiplicities:
    def test_hand_example(self):
        ws = make_sample([[0, 1, 0]], n=3)
        node_i, node_j, q = dyad_multiplicities(ws)
        table = {(int(a), int(b)): int(v) for a, b, v in zip(node_i, node_j, q)}
        assert table == {(0, 1): 2}
        assert ws.S_size == 2

    def test_two_singletons(self):
        ws = make_sample([[0], [1]], n=2)
        _, _, q = dyad_multiplicities(ws)
        assert q.tolist() == [1]
        assert ws.S_size == 1

    def test_identity_on_real_samples(self):
        g = gen_preferential_attachment(300, 3, seed=5)
        for seed in range(3):
            ws = run_walks(g, 2, beta=0.3, seed=seed)
            _, _, q = dyad_multiplicities(ws)
            assert int(q.sum()) == ws.S_size
