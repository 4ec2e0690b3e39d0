import numpy as np
import pytest

from nmfa import (
    brute_force_ground,
    gen_cubic_maxcut,
    gen_dense_maxcut,
    gen_sk,
    is_connected,
    moebius_ladder,
)
from helpers_naive import naive_ground


def degrees(problem):
    return np.diff(problem.csr_indptr)


class TestSk:
    def test_complete_and_pm_one(self):
        p = gen_sk(10, seed=1)
        assert p.num_edges == 45
        assert set(np.unique(p.edge_weights)) <= {-1.0, 1.0}
        assert np.all(p.h == 0.0)

    def test_deterministic(self):
        a, b = gen_sk(20, seed=9), gen_sk(20, seed=9)
        assert np.array_equal(a.edge_weights, b.edge_weights)
        assert not np.array_equal(gen_sk(20, seed=10).edge_weights, a.edge_weights)

    def test_sign_frequency(self):
        fracs = [
            (gen_sk(200, seed=s).edge_weights == 1.0).mean() for s in range(100)
        ]
        # 3-sigma binomial bound over 100 seeds x 19900 pairs
        assert abs(np.mean(fracs) - 0.5) < 3 * np.sqrt(0.25 / (19900 * 100))

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            gen_sk(1, seed=0)


class TestDenseMaxcut:
    def test_full_probability(self):
        p = gen_dense_maxcut(5, 1.0, seed=0)
        assert p.num_edges == 10
        assert np.all(p.edge_weights == 1.0)

    def test_edge_count_concentration(self):
        counts = [gen_dense_maxcut(100, 0.5, seed=s).num_edges for s in range(100)]
        # binomial mean n(n-1)p/2 = 2475, 3-sigma bound over 100 seeds
        assert abs(np.mean(counts) - 2475) < 3 * np.sqrt(4950 * 0.25 / 100)

    def test_deterministic(self):
        a = gen_dense_maxcut(30, 0.5, seed=4)
        b = gen_dense_maxcut(30, 0.5, seed=4)
        assert np.array_equal(a.edges_i, b.edges_i)
        assert np.array_equal(a.edges_j, b.edges_j)

    @pytest.mark.parametrize("p", [0.0, -0.5, 1.5])
    def test_rejects_bad_probability(self, p):
        with pytest.raises(ValueError):
            gen_dense_maxcut(10, p, seed=0)


class TestCubic:
    def test_three_regular(self):
        for seed in range(5):
            p = gen_cubic_maxcut(100, seed=seed)
            assert np.all(degrees(p) == 3)
            assert p.num_edges == 150
            assert np.all(p.edge_weights == 1.0)
            # connectivity is reported, not enforced
            assert isinstance(is_connected(p), bool)

    def test_n4_is_complete_graph(self):
        p = gen_cubic_maxcut(4, seed=0)
        pairs = set(zip(p.edges_i.tolist(), p.edges_j.tolist()))
        assert pairs == {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}

    def test_deterministic(self):
        a, b = gen_cubic_maxcut(50, seed=3), gen_cubic_maxcut(50, seed=3)
        assert np.array_equal(a.edges_i, b.edges_i)
        assert np.array_equal(a.edges_j, b.edges_j)

    @pytest.mark.parametrize("n", [5, 2, 0])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            gen_cubic_maxcut(n, seed=0)


class TestMoebius:
    def test_sixteen_spins(self):
        p = moebius_ladder(16)
        assert p.num_edges == 24
        assert np.all(degrees(p) == 3)
        assert is_connected(p)

    def test_six_spins(self):
        assert moebius_ladder(6).num_edges == 9

    def test_ground_energy_matches_naive_enumeration(self):
        p = moebius_ladder(16)
        couplers = list(zip(p.edges_i.tolist(), p.edges_j.tolist(), p.edge_weights.tolist()))
        ref_energy, ref_deg = naive_ground(16, couplers, np.zeros(16))
        gt = brute_force_ground(p)
        assert gt.energy == ref_energy
        assert gt.degeneracy == ref_deg

    @pytest.mark.parametrize("n", [5, 4, 0])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            moebius_ladder(n)
