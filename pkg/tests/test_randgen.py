"""Deterministic generators: stream reproducibility, spectrum placement,
family construction, and spec validation."""

import math

import numpy as np
import pytest

from opmeans.linalg import frobenius_norm, is_positive_definite
from opmeans.randgen import (
    GenSpec,
    InvalidSpec,
    SplitMix64,
    mix_seed,
    near_commuting_pair,
    random_commuting_pair,
    random_hpd,
)
from opmeans.verify import commutator_gap


class TestSplitMix64:
    def test_deterministic_stream(self):
        a = SplitMix64(12345)
        b = SplitMix64(12345)
        assert [a.next_u64() for _ in range(8)] == [b.next_u64() for _ in range(8)]

    def test_distinct_seeds_distinct_streams(self):
        assert SplitMix64(1).next_u64() != SplitMix64(2).next_u64()

    def test_doubles_in_unit_interval(self):
        rng = SplitMix64(99)
        for _ in range(1000):
            u = rng.next_double()
            assert 0.0 <= u < 1.0

    def test_gauss_pairs_finite_and_centered(self):
        rng = SplitMix64(7)
        vals = rng.gaussians(4000)
        assert all(math.isfinite(v) for v in vals)
        mean = sum(vals) / len(vals)
        var = sum(v * v for v in vals) / len(vals)
        assert abs(mean) < 0.1
        assert abs(var - 1.0) < 0.1

    def test_odd_count_discards_sine(self):
        a = SplitMix64(5).gaussians(3)
        b = SplitMix64(5).gaussians(4)
        assert a == b[:3]

    def test_mix_seed_spread(self):
        seeds = {mix_seed(42, i) for i in range(100)}
        assert len(seeds) == 100


class TestGenSpec:
    def test_valid(self):
        GenSpec(dim=3, seed=0, cond_target=1.0)

    def test_rejects_bad_dim(self):
        with pytest.raises(InvalidSpec):
            GenSpec(dim=0, seed=1)

    def test_rejects_bad_seed(self):
        with pytest.raises(InvalidSpec):
            GenSpec(dim=2, seed=-1)
        with pytest.raises(InvalidSpec):
            GenSpec(dim=2, seed=1 << 64)

    def test_rejects_cond_below_one(self):
        with pytest.raises(InvalidSpec):
            GenSpec(dim=2, seed=1, cond_target=0.5)

    def test_rejects_unknown_family(self):
        with pytest.raises(InvalidSpec):
            GenSpec(dim=2, seed=1, family="weird")

    def test_rejects_negative_epsilon(self):
        with pytest.raises(InvalidSpec):
            GenSpec(dim=2, seed=1, family="near_commuting", epsilon=-0.1)

    def test_rejects_epsilon_outside_near_commuting(self):
        with pytest.raises(InvalidSpec):
            GenSpec(dim=2, seed=1, family="generic", epsilon=0.1)


class TestRandomHpd:
    def test_bit_identical_reruns(self):
        spec = GenSpec(dim=5, seed=77, cond_target=30.0)
        assert np.array_equal(random_hpd(spec), random_hpd(spec))

    def test_positive_definite(self):
        for seed in range(10):
            m = random_hpd(GenSpec(dim=2 + seed % 6, seed=seed, cond_target=1000.0))
            assert is_positive_definite(m)

    def test_condition_number_hits_target(self):
        m = random_hpd(GenSpec(dim=4, seed=42, cond_target=100.0))
        lam = np.linalg.eigvalsh(m)
        realized = lam[-1] / lam[0]
        assert abs(realized - 100.0) <= 5.0

    def test_cond_one_is_identity(self):
        m = random_hpd(GenSpec(dim=3, seed=11, cond_target=1.0))
        assert frobenius_norm(m - np.eye(3)) <= 1e-10 * math.sqrt(3)

    def test_spectrum_inside_band(self):
        cond = 50.0
        m = random_hpd(GenSpec(dim=6, seed=13, cond_target=cond))
        lam = np.linalg.eigvalsh(m)
        lo, hi = 1 / math.sqrt(cond), math.sqrt(cond)
        assert lam[0] >= lo * (1 - 1e-10)
        assert lam[-1] <= hi * (1 + 1e-10)

    def test_dim_one(self):
        m = random_hpd(GenSpec(dim=1, seed=3, cond_target=9.0))
        assert m.shape == (1, 1)
        assert m[0, 0].real > 0


class TestCommutingPair:
    def test_commutator_within_tolerance(self):
        for seed in range(10):
            p = random_commuting_pair(GenSpec(dim=2 + seed % 6, seed=seed, cond_target=100.0, family="commuting"))
            assert commutator_gap(p.a, p.b) <= 1e-10

    def test_both_positive(self):
        p = random_commuting_pair(GenSpec(dim=4, seed=5, cond_target=100.0, family="commuting"))
        assert is_positive_definite(p.a)
        assert is_positive_definite(p.b)

    def test_deterministic(self):
        spec = GenSpec(dim=3, seed=21, cond_target=10.0, family="commuting")
        p1 = random_commuting_pair(spec)
        p2 = random_commuting_pair(spec)
        assert np.array_equal(p1.a, p2.a)
        assert np.array_equal(p1.b, p2.b)

    def test_dim_one(self):
        p = random_commuting_pair(GenSpec(dim=1, seed=2, cond_target=4.0, family="commuting"))
        assert p.a[0, 0].real > 0
        assert p.b[0, 0].real > 0


class TestNearCommutingPair:
    def test_requires_family(self):
        with pytest.raises(InvalidSpec):
            near_commuting_pair(GenSpec(dim=2, seed=1, family="generic"))

    def test_epsilon_zero_exactly_commuting(self):
        spec0 = GenSpec(dim=3, seed=9, cond_target=20.0, family="near_commuting", epsilon=0.0)
        p0 = near_commuting_pair(spec0)
        base = random_commuting_pair(GenSpec(dim=3, seed=9, cond_target=20.0, family="commuting"))
        assert np.array_equal(p0.a, base.a)
        assert np.array_equal(p0.b, base.b)

    def test_small_epsilon_small_gap(self):
        gaps = []
        for eps in (0.0, 1e-3, 1e-1):
            spec = GenSpec(dim=3, seed=15, cond_target=20.0, family="near_commuting", epsilon=eps)
            p = near_commuting_pair(spec)
            assert is_positive_definite(p.b)
            gaps.append(commutator_gap(p.a, p.b))
        assert gaps[0] <= 1e-12
        assert gaps[0] < gaps[1] < gaps[2]

    def test_epsilon_half_both_gaps_positive(self):
        from opmeans.verify import pair_gaps

        spec = GenSpec(dim=3, seed=4, cond_target=10.0, family="near_commuting", epsilon=0.5)
        p = near_commuting_pair(spec)
        mg, cg = pair_gaps(p)
        assert mg > 1e-6
        assert cg > 1e-6

    def test_shared_base_across_epsilons(self):
        # A is the same matrix for every epsilon at a fixed seed
        ps = [
            near_commuting_pair(GenSpec(dim=3, seed=31, cond_target=10.0, family="near_commuting", epsilon=e))
            for e in (0.0, 0.25, 0.5)
        ]
        assert np.array_equal(ps[0].a, ps[1].a)
        assert np.array_equal(ps[1].a, ps[2].a)
