import math

import pytest

from alphahash.bounds import (
    BoundPoint,
    LOG2_E,
    entropy_to_length_bound,
    mixture_rate_bound,
    perfect_length_bound,
    sampling_length_bound,
    sampling_rate_bound,
    sweep,
    sweep_csv,
    uniform_grid,
)
from alphahash.schemes import lambda_for_alpha
from alphahash.urn import UrnDistribution

INV_E = math.exp(-1.0)


class TestPerfectLengthBound:
    def test_values(self):
        assert abs(perfect_length_bound(1) - 4.4427) < 1e-4
        assert abs(perfect_length_bound(16) - 26.083) < 1e-3

    def test_dominates_exact_index_entropy_scale(self):
        # k log2(e) + 3 >= log2(k^k / k!) + 3 for all k up to 1e4
        log2_fact = 0.0
        for k in range(1, 10**4 + 1):
            log2_fact += math.log2(k)
            assert perfect_length_bound(k) >= k * math.log2(k) - log2_fact + 3

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            perfect_length_bound(0)


class TestMixtureRateBound:
    def test_zero_below_threshold(self):
        for alpha in (0.0, 0.1, INV_E):
            assert mixture_rate_bound(alpha) == 0.0

    def test_log2e_at_one(self):
        assert abs(mixture_rate_bound(1.0) - LOG2_E) < 1e-12

    def test_value_at_09(self):
        assert abs(mixture_rate_bound(0.9) - 1.21446) < 1e-5


class TestEntropyToLengthBound:
    def test_zero_divergence(self):
        assert entropy_to_length_bound(4, 8.0) == 5.0

    def test_one_bit_divergence(self):
        # k=2 with exact entropy 1 bit: divergence 1, log2(2) = 1, plus 5
        assert entropy_to_length_bound(2, 1.0) == 7.0

    def test_monotone_decreasing_in_entropy(self):
        values = [entropy_to_length_bound(4, h / 10) for h in range(0, 81)]
        assert all(a >= b for a, b in zip(values, values[1:]))


class TestSamplingRateBound:
    def test_boundaries(self):
        assert sampling_rate_bound(0.2) == 0.0
        assert sampling_rate_bound(INV_E) == 0.0
        assert abs(sampling_rate_bound(1.0) - LOG2_E) < 1e-12

    def test_value_at_09(self):
        assert abs(sampling_rate_bound(0.9) - 0.9842) < 1e-4

    def test_dominated_by_mixture_rate(self):
        for alpha in uniform_grid(1001):
            assert sampling_rate_bound(alpha) <= mixture_rate_bound(alpha) + 1e-12
            if INV_E < alpha < 1.0 and lambda_for_alpha(alpha) > 0:
                assert sampling_rate_bound(alpha) < mixture_rate_bound(alpha)


class TestSamplingLengthBound:
    def test_residue_only_below_threshold(self):
        k = 8
        residue = math.log2(k * math.log2(k) + 1) + 5
        assert sampling_length_bound(k, 0.2) == residue

    @pytest.mark.parametrize("k", [2, 5, 12, 64])
    @pytest.mark.parametrize("alpha", [0.5, 0.75, 0.9, 1.0])
    def test_main_terms_compose_from_entropy_bound(self, k, alpha):
        lam = lambda_for_alpha(alpha)
        residue = math.log2(k * math.log2(k) + 1) + 5
        main = sampling_length_bound(k, alpha) - residue
        divergence = k * math.log2(k) - UrnDistribution(k, lam).entropy_lower_bound()
        assert abs(main - divergence) <= 1e-9 * max(1.0, abs(divergence))

    def test_rate_limit_at_large_k(self):
        for alpha in (0.5, 0.8, 1.0):
            per_key = sampling_length_bound(10**4, alpha) / 10**4
            assert abs(per_key - sampling_rate_bound(alpha)) <= 0.01

    def test_rejects_k_below_two(self):
        with pytest.raises(ValueError):
            sampling_length_bound(1, 0.9)


class TestSweep:
    def test_boundary_grid(self):
        points = sweep([0.0, INV_E, 1.0])
        assert points[0] == BoundPoint(0.0, 0.0, 0.0)
        assert points[1].mixture_bits_per_key == 0.0
        assert points[1].sampling_bits_per_key == 0.0
        assert abs(points[2].mixture_bits_per_key - LOG2_E) < 1e-9
        assert abs(points[2].sampling_bits_per_key - LOG2_E) < 1e-9

    def test_curves_nondecreasing(self):
        points = sweep(uniform_grid(101))
        for a, b in zip(points, points[1:]):
            assert b.mixture_bits_per_key >= a.mixture_bits_per_key
            assert b.sampling_bits_per_key >= a.sampling_bits_per_key

    def test_csv_format(self):
        text = sweep_csv(sweep(uniform_grid(3)))
        lines = text.strip().split("\n")
        assert lines[0] == "alpha,mixture_bits_per_key,sampling_bits_per_key"
        assert lines[1] == "0.000000,0.000000,0.000000"
        assert lines[2] == "0.500000,0.301540,0.055110"
        assert lines[3] == "1.000000,1.442695,1.442695"
        for line in lines[1:]:
            assert all(len(part.split(".")[1]) == 6 for part in line.split(","))

    def test_uniform_grid_validation(self):
        assert uniform_grid(2) == [0.0, 1.0]
        with pytest.raises(ValueError):
            uniform_grid(1)
