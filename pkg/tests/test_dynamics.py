import math

import numpy as np
import pytest

import flockcut as fc

from testlib import connected_random_graph
from oracles import naive_misalignment, naive_step


def single_edge(d=3):
    return fc.build_graph(2, [(0, 1)])


def state_from(vectors) -> fc.VelocityState:
    return fc.VelocityState(np.asarray(vectors, dtype=np.float64))


class TestParams:
    def test_alpha_range_enforced(self):
        for alpha in (0.0, 0.5, -0.1, 0.7):
            with pytest.raises(ValueError):
                fc.DynParams(alpha=alpha)

    def test_dimension_and_tmax_enforced(self):
        with pytest.raises(ValueError):
            fc.DynParams(d=1)
        with pytest.raises(ValueError):
            fc.DynParams(t_max=0)

    def test_defaults(self):
        p = fc.DynParams()
        assert (p.alpha, p.d, p.t_max) == (0.1, 3, 100)
        assert p.floor_tol == 1e-12


class TestInitState:
    def test_unit_norms(self):
        g = fc.build_graph(5, [(0, 1)])
        s = fc.init_state(g, d=3, seed=0)
        assert np.all(np.abs(s.norms - 1.0) < 1e-12)

    def test_deterministic(self):
        g = fc.build_graph(5, [(0, 1)])
        a = fc.init_state(g, d=4, seed=42)
        b = fc.init_state(g, d=4, seed=42)
        assert np.array_equal(a.vectors, b.vectors)
        c = fc.init_state(g, d=4, seed=43)
        assert not np.array_equal(a.vectors, c.vectors)

    def test_shape_matches_request(self):
        g = fc.build_graph(800, [(0, 1)])
        s = fc.init_state(g, d=3, seed=7)
        assert s.vectors.shape == (800, 3)
        assert s.t == 0

    def test_zero_vector_rejected_by_state(self):
        with pytest.raises(ValueError):
            state_from([[0.0, 0.0], [1.0, 0.0]]).normalized


class TestStep:
    def test_aligned_fixed_point(self):
        g = single_edge()
        s = state_from([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        out = fc.step(g, s, alpha=0.2)
        assert np.allclose(out.vectors, s.vectors, atol=1e-15)
        assert fc.misalignment(g, out).values.tolist() == [0.0]
        assert out.t == 1

    def test_antipodal_equilibrium(self):
        g = single_edge()
        s = state_from([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
        alpha = 0.3
        out = fc.step(g, s, alpha)
        assert np.allclose(out.vectors, (1 - 2 * alpha) * s.vectors, atol=1e-15)
        assert np.allclose(out.normalized, s.vectors, atol=1e-15)

    def test_frozen_two_vertex_example(self):
        g = fc.build_graph(2, [(0, 1)])
        s = state_from([[1.0, 0.0], [0.0, 1.0]])
        out = fc.step(g, s, alpha=0.1)
        assert out.vectors[0].tolist() == [0.9, 0.1]
        assert out.vectors[1].tolist() == [0.1, 0.9]
        assert abs(out.norms[0] - math.sqrt(0.82)) < 1e-12

    def test_isolated_vertex_keeps_direction(self):
        g = fc.build_graph(3, [(0, 1)])
        s = state_from([[0.0, 1.0], [1.0, 0.0], [0.6, 0.8]])
        out = fc.step(g, s, alpha=0.1)
        assert np.allclose(out.vectors[2], [0.6, 0.8], atol=1e-15)

    def test_matches_naive_oracle(self):
        rng = np.random.default_rng(11)
        for trial in range(25):
            n = int(rng.integers(2, 25))
            pairs = [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(2 * n)]
            g = fc.build_graph(n, pairs)
            vectors = rng.normal(size=(n, 3))
            vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
            expected = naive_step(n, [(u, v) for _, u, v in g.edges()], vectors, 0.2)
            out = fc.step(g, state_from(vectors), alpha=0.2)
            assert np.allclose(out.vectors, expected, atol=1e-12)

    def test_alpha_validated(self):
        g = single_edge()
        s = fc.init_state(g, seed=0)
        for alpha in (0.0, 0.5, 1.0):
            with pytest.raises(ValueError):
                fc.step(g, s, alpha)

    def test_norm_bounds_preserved(self):
        rng = np.random.default_rng(3)
        g = connected_random_graph(rng, 40)
        s = fc.init_state(g, d=3, seed=1)
        for _ in range(50):
            s = fc.step(g, s, alpha=0.49)
            assert np.all(s.norms > 1e-15)
            assert np.all(s.norms <= 1.0 + 1e-12)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(7)
        n = 15
        pairs = [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(40)]
        g = fc.build_graph(n, pairs)
        perm = rng.permutation(n)
        relabeled = fc.build_graph(n, [(int(perm[u]), int(perm[v])) for u, v in pairs])
        vectors = rng.normal(size=(n, 3))
        vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
        permuted = np.empty_like(vectors)
        permuted[perm] = vectors
        out = fc.step(g, state_from(vectors), alpha=0.2)
        out_perm = fc.step(relabeled, state_from(permuted), alpha=0.2)
        assert np.allclose(out_perm.vectors[perm], out.vectors, atol=1e-13)


class TestRun:
    def test_edgeless_stops_immediately_state_unchanged(self):
        g = fc.build_graph(4, [])
        init = fc.init_state(g, seed=5)
        state, t_stop, reason = fc.run(g, fc.DynParams(), seed=5)
        assert t_stop == 1
        assert reason == "floor"
        assert np.allclose(state.vectors, init.vectors, atol=1e-12)

    def test_edgeless_without_floor_runs_to_cap(self):
        g = fc.build_graph(3, [])
        params = fc.DynParams(t_max=17, floor_tol=0.0)
        init = fc.init_state(g, seed=2)
        state, t_stop, reason = fc.run(g, params, seed=2)
        assert (t_stop, reason) == (17, "t_max")
        assert np.allclose(state.vectors, init.vectors, atol=1e-12)

    def test_connected_graph_aligns(self):
        rng = np.random.default_rng(0)
        g = connected_random_graph(rng, 60)
        params = fc.DynParams(alpha=0.05, t_max=5000)
        state, t_stop, reason = fc.run(g, params, seed=9)
        table = fc.misalignment(g, state)
        assert table.values.max() < 1e-6
        vhat = state.normalized
        pair_l1 = np.abs(vhat[:, None, :] - vhat[None, :, :]).sum(axis=2)
        assert pair_l1.max() < 1e-6
        assert reason in ("floor", "converged", "t_max")

    def test_conv_tol_stops_early(self):
        rng = np.random.default_rng(1)
        g = connected_random_graph(rng, 50)
        params = fc.DynParams(alpha=0.1, t_max=5000, conv_tol=1e-3, floor_tol=0.0)
        state, t_stop, reason = fc.run(g, params, seed=4)
        assert reason == "converged"
        assert t_stop < 5000
        assert state.t == t_stop

    def test_deterministic(self):
        g = fc.build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
        a_state, a_t, a_r = fc.run(g, fc.DynParams(t_max=40), seed=8)
        b_state, b_t, b_r = fc.run(g, fc.DynParams(t_max=40), seed=8)
        assert np.array_equal(a_state.vectors, b_state.vectors)
        assert (a_t, a_r) == (b_t, b_r)


class TestMisalignment:
    def test_frozen_values(self):
        g = single_edge()
        aligned = state_from([[1, 0, 0], [1, 0, 0]])
        assert fc.misalignment(g, aligned).values.tolist() == [0.0]
        orthogonal = state_from([[1, 0, 0], [0, 1, 0]])
        assert fc.misalignment(g, orthogonal).values.tolist() == [2.0]
        antipodal = state_from([[1, 0, 0], [-1, 0, 0]])
        assert fc.misalignment(g, antipodal).values.tolist() == [2.0]

    def test_upper_bound_two_sqrt_d(self):
        rng = np.random.default_rng(6)
        for d in (2, 3, 5):
            g = fc.build_graph(10, [(i, (i + 1) % 10) for i in range(10)])
            s = fc.init_state(g, d=d, seed=int(rng.integers(1000)))
            values = fc.misalignment(g, s).values
            assert np.all(values >= 0.0)
            assert np.all(values <= 2.0 * math.sqrt(d) + 1e-12)

    def test_matches_naive_oracle(self):
        rng = np.random.default_rng(13)
        g = fc.build_graph(8, [(0, 1), (2, 5), (3, 4), (6, 7), (1, 5)])
        s = fc.init_state(g, d=3, seed=3)
        expected = naive_misalignment(
            [(u, v) for _, u, v in g.edges()], s.normalized)
        assert np.allclose(fc.misalignment(g, s).values, expected, atol=1e-14)

    def test_tracks_live_edges_after_removal(self, two_triangles):
        s = fc.init_state(two_triangles, seed=0)
        pruned = fc.remove_edges(two_triangles, [0, 6])
        table = fc.misalignment(pruned, s)
        assert table.edge_ids.tolist() == [1, 2, 3, 4, 5]


class TestMisalignmentTable:
    def test_top_breaks_ties_by_ascending_edge_id(self):
        table = fc.MisalignmentTable(
            edge_ids=np.array([4, 2, 9, 7], dtype=np.int64),
            values=np.array([1.0, 3.0, 3.0, 0.5]),
        )
        assert table.top(3).tolist() == [2, 9, 4]

    def test_add_requires_matching_ids(self):
        a = fc.MisalignmentTable(np.array([0, 1]), np.array([1.0, 2.0]))
        b = fc.MisalignmentTable(np.array([0, 2]), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            a + b
        total = a + fc.MisalignmentTable(np.array([0, 1]), np.array([0.5, 0.5]))
        assert total.values.tolist() == [1.5, 2.5]

    def test_as_dict(self):
        table = fc.MisalignmentTable(np.array([3, 8]), np.array([0.25, 0.5]))
        assert table.as_dict() == {3: 0.25, 8: 0.5}


class TestEnergy:
    def test_aligned_is_zero(self):
        g = single_edge()
        assert fc.energy(g, state_from([[1, 0, 0], [1, 0, 0]])) == 0.0

    def test_antipodal_edge_is_two(self):
        g = single_edge()
        assert fc.energy(g, state_from([[1, 0, 0], [-1, 0, 0]])) == 2.0

    def test_descends_by_simulation(self):
        rng = np.random.default_rng(21)
        g = connected_random_graph(rng, 80)
        s = fc.init_state(g, d=3, seed=1)
        e0 = fc.energy(g, s)
        params = fc.DynParams(alpha=0.05, t_max=1000)
        state, _, _ = fc.run(g, params, seed=1)
        assert fc.energy(g, state) < 1e-3 * e0


class TestAggregateRuns:
    def test_single_run_equals_run_then_measure(self):
        g = fc.build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        params = fc.DynParams(alpha=0.1, t_max=25)
        table = fc.aggregate_runs(g, params, n_runs=1, seed=33)
        child = fc.run_seeds(33, 1)[0]
        state, _, _ = fc.run(g, params, seed=child)
        expected = fc.misalignment(g, state)
        assert np.array_equal(table.values, expected.values)

    def test_equals_sum_of_individual_runs(self):
        g = fc.build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (1, 4)])
        params = fc.DynParams(alpha=0.2, t_max=15)
        table = fc.aggregate_runs(g, params, n_runs=4, seed=100)
        total = np.zeros(g.m)
        for child in fc.run_seeds(100, 4):
            state, _, _ = fc.run(g, params, seed=child)
            total += fc.misalignment(g, state).values
        assert np.array_equal(table.values, total)

    def test_sum_dominates_componentwise_max(self):
        g = fc.build_graph(4, [(0, 1), (1, 2), (2, 3)])
        params = fc.DynParams(alpha=0.1, t_max=10)
        table = fc.aggregate_runs(g, params, n_runs=5, seed=2)
        best = np.zeros(g.m)
        for child in fc.run_seeds(2, 5):
            state, _, _ = fc.run(g, params, seed=child)
            best = np.maximum(best, fc.misalignment(g, state).values)
        assert np.all(table.values >= best - 1e-15)
        assert np.all(table.values >= 0.0)

    def test_bitwise_deterministic(self):
        g = fc.build_graph(7, [(i, i + 1) for i in range(6)])
        params = fc.DynParams(alpha=0.15, t_max=30)
        a = fc.aggregate_runs(g, params, n_runs=6, seed=9)
        b = fc.aggregate_runs(g, params, n_runs=6, seed=9)
        assert np.array_equal(a.values, b.values)

    def test_run_count_validated(self):
        g = single_edge()
        with pytest.raises(ValueError):
            fc.aggregate_runs(g, fc.DynParams(), n_runs=0, seed=0)


class TestNormBounds:
    def test_norms_within_lemma_bounds_across_alphas(self):
        rng = np.random.default_rng(17)
        for alpha in (0.01, 0.1, 0.3, 0.49):
            for _ in range(5):
                n = int(rng.integers(2, 40))
                pairs = [(int(rng.integers(n)), int(rng.integers(n)))
                         for _ in range(3 * n)]
                g = fc.build_graph(n, pairs)
                s = fc.init_state(g, d=3, seed=int(rng.integers(10_000)))
                for _ in range(200):
                    s = fc.step(g, s, alpha)
                    assert np.all(s.norms > 1e-15)
                    assert np.all(s.norms <= 1.0 + 1e-12)
                    assert np.all(s.norms > 1.0 - 2 * alpha - 1e-12)
