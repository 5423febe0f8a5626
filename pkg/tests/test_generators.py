import numpy as np
import pytest

import flockcut as fc


class TestSpecValidation:
    def test_odd_degree_rejected(self):
        with pytest.raises(ValueError):
            fc.PlantedSpec((10, 10), k_des=5)

    def test_single_community_needs_full_p_in(self):
        with pytest.raises(ValueError):
            fc.PlantedSpec((10,), k_des=2, p_in=0.66)
        fc.PlantedSpec((10,), k_des=2, p_in=1.0)

    def test_p_in_range(self):
        for p in (-0.1, 1.1):
            with pytest.raises(ValueError):
                fc.PlantedSpec((5, 5), k_des=2, p_in=p)

    def test_sizes_positive(self):
        with pytest.raises(ValueError):
            fc.PlantedSpec((5, 0), k_des=2)
        with pytest.raises(ValueError):
            fc.PlantedSpec((), k_des=2)

    def test_labels_repeat_sizes(self):
        spec = fc.PlantedSpec((2, 3), k_des=2, p_in=0.5)
        assert spec.n == 5
        assert spec.labels().tolist() == [0, 0, 1, 1, 1]


class TestPlantedPartition:
    def test_pure_intra_has_no_cross_edges(self):
        spec = fc.PlantedSpec((3, 3), k_des=2, p_in=1.0)
        g, truth = fc.planted_partition(spec, seed=0)
        labels = truth.labels
        for _, u, v in g.edges():
            assert labels[u] == labels[v]
        comps = fc.connected_components(g)
        for group in comps.groups():
            assert len(set(labels[group].tolist())) == 1

    def test_deterministic_per_seed(self):
        spec = fc.PlantedSpec((20, 20), k_des=4, p_in=0.7)
        g1, _ = fc.planted_partition(spec, seed=9)
        g2, _ = fc.planted_partition(spec, seed=9)
        assert g1.n == g2.n and g1.m == g2.m
        assert sorted((u, v) for _, u, v in g1.edges()) == sorted(
            (u, v) for _, u, v in g2.edges())
        g3, _ = fc.planted_partition(spec, seed=10)
        assert sorted((u, v) for _, u, v in g1.edges()) != sorted(
            (u, v) for _, u, v in g3.edges())

    def test_mean_degree_slightly_below_target(self):
        spec = fc.PlantedSpec((200, 200, 200, 200), k_des=10, p_in=0.66)
        g, _ = fc.planted_partition(spec, seed=1)
        mean_degree = 2.0 * g.m / g.n
        assert 8.5 < mean_degree <= 10.0

    def test_unbalanced_sizes(self):
        spec = fc.PlantedSpec((80, 40, 20, 10), k_des=4, p_in=0.66)
        g, truth = fc.planted_partition(spec, seed=3)
        assert g.n == 150
        assert truth.sizes() == {0: 80, 1: 40, 2: 20, 3: 10}

    def test_intra_fraction_increases_with_p_in(self):
        sizes = (40, 40, 40)
        fractions = []
        for p_in in (0.5, 0.66, 0.9):
            spec = fc.PlantedSpec(sizes, k_des=6, p_in=p_in)
            total_intra = total = 0
            for seed in range(20):
                g, truth = fc.planted_partition(spec, seed=seed)
                labels = truth.labels
                eu, ev = g.endpoints
                total_intra += int((labels[eu] == labels[ev]).sum())
                total += g.m
            fractions.append(total_intra / total)
        assert fractions[0] < fractions[1] < fractions[2]

    def test_ground_truth_matches_block_layout(self):
        spec = fc.PlantedSpec((5, 7), k_des=2, p_in=0.8)
        _, truth = fc.planted_partition(spec, seed=0)
        assert truth.labels.tolist() == [0] * 5 + [1] * 7
