import numpy as np
import pytest

from nmfa import (
    IsingProblem,
    cut_value,
    energy,
    mean_field,
    moebius_ladder,
    normalizers,
    sign_round,
)
from helpers_naive import naive_energy, naive_mean_field, random_problem_data


def two_spin():
    return IsingProblem(2, [(0, 1, 1.0)])


class TestConstruction:
    def test_rejects_bad_n(self):
        with pytest.raises(ValueError):
            IsingProblem(0)

    def test_rejects_out_of_range_index(self):
        with pytest.raises(ValueError, match="out of range"):
            IsingProblem(3, [(0, 3, 1.0)])

    def test_rejects_self_coupling(self):
        with pytest.raises(ValueError, match="self"):
            IsingProblem(3, [(1, 1, 1.0)])

    def test_rejects_duplicate_pair(self):
        with pytest.raises(ValueError, match="duplicate"):
            IsingProblem(3, [(0, 1, 1.0), (1, 0, 2.0)])

    def test_rejects_zero_weight(self):
        with pytest.raises(ValueError, match="nonzero"):
            IsingProblem(2, [(0, 1, 0.0)])

    def test_rejects_bad_h_length(self):
        with pytest.raises(ValueError):
            IsingProblem(2, [(0, 1, 1.0)], h=[1.0, 2.0, 3.0])

    def test_empty_problem_ok(self):
        p = IsingProblem(3)
        assert p.num_edges == 0
        assert np.all(normalizers(p) == 0.0)

    def test_row_access_symmetry(self):
        rng = np.random.Generator(np.random.Philox(key=1))
        couplers, h = random_problem_data(rng, 12)
        p = IsingProblem(12, couplers, h=h)
        for i in range(p.n):
            idx, w = p.neighbors(i)
            for j, wij in zip(idx, w):
                back_idx, back_w = p.neighbors(int(j))
                pos = list(back_idx).index(i)
                assert back_w[pos] == wij

    def test_density_selects_dense_path(self):
        sparse = moebius_ladder(16)
        assert not sparse.is_dense
        full = IsingProblem(6, [(i, j, 1.0) for i in range(6) for j in range(i + 1, 6)])
        assert full.is_dense and full.dense_weights is not None

    def test_arrays_frozen(self):
        p = two_spin()
        with pytest.raises(ValueError):
            p.h[0] = 1.0


class TestEnergy:
    def test_single_aligned_pair(self):
        assert energy(two_spin(), np.array([1.0, 1.0])) == 1.0

    def test_single_anti_aligned_pair(self):
        assert energy(two_spin(), np.array([1.0, -1.0])) == -1.0

    def test_moebius_alternating(self):
        p = moebius_ladder(16)
        cfg = np.array([1.0 if i % 2 == 0 else -1.0 for i in range(16)])
        # 16 cycle edges cut (-16), 8 chords uncut (+8)
        assert energy(p, cfg) == -8.0

    def test_dimension_error(self):
        with pytest.raises(ValueError, match="does not match"):
            energy(two_spin(), np.array([1.0, 1.0, -1.0]))

    def test_flip_symmetry_zero_field(self):
        rng = np.random.Generator(np.random.Philox(key=2))
        couplers, _ = random_problem_data(rng, 10)
        p = IsingProblem(10, couplers)
        for _ in range(20):
            cfg = np.where(rng.random(10) < 0.5, 1.0, -1.0)
            assert energy(p, cfg) == energy(p, -cfg)

    def test_integer_parity(self):
        # all +-1 couplers, h = 0: energy is an integer with the parity of
        # the coupler count
        rng = np.random.Generator(np.random.Philox(key=3))
        for _ in range(10):
            n = int(rng.integers(3, 10))
            couplers = [
                (i, j, 1.0 if rng.random() < 0.5 else -1.0)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.7
            ]
            if not couplers:
                continue
            p = IsingProblem(n, couplers)
            cfg = np.where(rng.random(n) < 0.5, 1.0, -1.0)
            e = energy(p, cfg)
            assert e == int(e)
            assert int(e) % 2 == len(couplers) % 2


class TestCutValue:
    def test_moebius_alternating_cut(self):
        p = moebius_ladder(16)
        cfg = np.array([1.0 if i % 2 == 0 else -1.0 for i in range(16)])
        assert cut_value(p, cfg) == 16.0

    def test_all_plus_cuts_nothing(self):
        p = moebius_ladder(16)
        assert cut_value(p, np.ones(16)) == 0.0

    def test_triangle_two_of_three(self):
        p = IsingProblem(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
        assert cut_value(p, np.array([1.0, 1.0, -1.0])) == 2.0

    def test_rejects_nonzero_field(self):
        p = IsingProblem(2, [(0, 1, 1.0)], h=[0.5, 0.0])
        with pytest.raises(ValueError, match="zero fields"):
            cut_value(p, np.array([1.0, 1.0]))

    def test_cut_energy_identity(self):
        # 2*cut + energy = total weight, exact for integer weights
        rng = np.random.Generator(np.random.Philox(key=4))
        couplers, _ = random_problem_data(rng, 14)
        p = IsingProblem(14, couplers)
        for _ in range(25):
            cfg = np.where(rng.random(14) < 0.5, 1.0, -1.0)
            assert 2.0 * cut_value(p, cfg) + energy(p, cfg) == p.w_total


class TestMeanField:
    def test_two_spin(self):
        phi = mean_field(two_spin(), np.array([0.5, -0.5]))
        assert np.allclose(phi, [-0.5, 0.5], atol=0)

    def test_field_only(self):
        p = IsingProblem(2, h=[1.0, 0.0])
        assert np.array_equal(mean_field(p, np.zeros(2)), [1.0, 0.0])

    def test_matches_naive_dense_50(self):
        rng = np.random.Generator(np.random.Philox(key=5))
        couplers, h = random_problem_data(rng, 50, integer_weights=False)
        p = IsingProblem(50, couplers, h=h)
        s = rng.uniform(-1, 1, 50)
        ref = naive_mean_field(50, couplers, h, s)
        got = mean_field(p, s)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-12)

    def test_linearity_zero_field(self):
        rng = np.random.Generator(np.random.Philox(key=6))
        couplers, _ = random_problem_data(rng, 20)
        p = IsingProblem(20, couplers)
        s1 = rng.uniform(-1, 1, 20)
        s2 = rng.uniform(-1, 1, 20)
        a, b = 0.3, -1.7
        lhs = mean_field(p, a * s1 + b * s2)
        rhs = a * mean_field(p, s1) + b * mean_field(p, s2)
        assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_dimension_error(self):
        with pytest.raises(ValueError, match="does not match"):
            mean_field(two_spin(), np.zeros(3))


class TestNormalizers:
    def test_single_coupler(self):
        assert np.array_equal(normalizers(two_spin()), [1.0, 1.0])

    def test_three_four_five(self):
        p = IsingProblem(2, [(0, 1, 4.0)], h=[3.0, 0.0])
        assert normalizers(p)[0] == 5.0

    def test_isolated_spin_zero(self):
        p = IsingProblem(3, [(0, 1, 1.0)])
        assert normalizers(p)[2] == 0.0
        # solver-side substitute is 1
        assert p.normalizers_safe[2] == 1.0


class TestSignRound:
    def test_basic(self):
        assert np.array_equal(sign_round(np.array([0.3, -0.2])), [1.0, -1.0])

    def test_zero_goes_positive(self):
        assert np.array_equal(sign_round(np.array([0.0])), [1.0])
        assert np.array_equal(sign_round(np.array([-0.0])), [1.0])

    def test_identity_on_saturated(self):
        assert np.array_equal(sign_round(np.array([-1.0, 1.0])), [-1.0, 1.0])


def test_oracle_equivalence_many_instances():
    # energy and mean_field against naive references on 100 random instances
    rng = np.random.Generator(np.random.Philox(key=7))
    for trial in range(100):
        n = int(rng.integers(2, 65))
        integer = trial % 2 == 0
        couplers, h = random_problem_data(rng, n, integer_weights=integer)
        p = IsingProblem(n, couplers, h=h)
        cfg = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        e_ref = naive_energy(n, couplers, h, cfg)
        e_got = energy(p, cfg)
        if integer:
            assert e_got == e_ref
        else:
            assert abs(e_got - e_ref) <= 1e-12 * max(1.0, abs(e_ref))
        s = rng.uniform(-1, 1, n)
        phi_ref = naive_mean_field(n, couplers, h, s)
        assert np.allclose(mean_field(p, s), phi_ref, rtol=1e-12, atol=1e-12)
