import math
from fractions import Fraction

import pytest

from alphahash.oracle import (
    INV_E_UPPER,
    calibrated_lambda,
    conditional_entropy_identity,
    enumerate_urn_distribution,
    exact_entropy,
    exact_expected_distortion,
    perfect_success_probability,
    pre_permutation_entropy,
    _enumerate_pre_permutation,
    verification_table,
    verify_grid,
)
from alphahash.schemes import lambda_for_alpha

GRID = [(k, w) for k in range(1, 6) for w in range(0, k + 1)]


class TestEnumeration:
    def test_k2_w1_atoms(self):
        dist = enumerate_urn_distribution(2, 1)
        assert dict(dist.masses) == {
            (1, 2): Fraction(1, 2),
            (2, 1): Fraction(1, 2),
        }

    def test_w0_is_uniform(self):
        dist = enumerate_urn_distribution(3, 0)
        assert len(dist.masses) == 27
        assert set(dist.masses.values()) == {Fraction(1, 27)}

    def test_w_equals_k_is_uniform_on_permutations(self):
        dist = enumerate_urn_distribution(3, 3)
        assert len(dist.masses) == 6
        assert set(dist.masses.values()) == {Fraction(1, 6)}
        assert all(sorted(x) == [1, 2, 3] for x in dist.masses)

    @pytest.mark.parametrize("k,w", GRID)
    def test_normalized(self, k, w):
        assert enumerate_urn_distribution(k, w).total() == 1

    def test_rejects_oversize(self):
        with pytest.raises(ValueError):
            enumerate_urn_distribution(7, 0)
        with pytest.raises(ValueError):
            enumerate_urn_distribution(3, 4)


class TestEntropy:
    def test_two_equal_atoms(self):
        assert exact_entropy(enumerate_urn_distribution(2, 1)) == 1.0

    def test_uniform_cube(self):
        h = exact_entropy(enumerate_urn_distribution(3, 0))
        assert abs(h - 3 * math.log2(3)) < 1e-12

    def test_uniform_permutations(self):
        h = exact_entropy(enumerate_urn_distribution(3, 3))
        assert abs(h - math.log2(6)) < 1e-12


class TestPrePermutationEntropy:
    @pytest.mark.parametrize("k,w,expected", [
        (2, 1, 1.0),
        (4, 2, math.log2(12) + 2.0),
        (3, 0, 3 * math.log2(3)),
    ])
    def test_examples(self, k, w, expected):
        assert abs(pre_permutation_entropy(k, w) - expected) < 1e-12

    @pytest.mark.parametrize("k,w", GRID + [(6, 4), (6, 5), (6, 6)])
    def test_formula_matches_enumeration(self, k, w):
        enumerated = exact_entropy(_enumerate_pre_permutation(k, w))
        assert abs(pre_permutation_entropy(k, w) - enumerated) < 1e-9

    @pytest.mark.parametrize("k", range(1, 7))
    def test_stirling_consequence(self, k):
        # closed form dominates k log2 k - w log2 e over the whole grid
        for w in range(0, k + 1):
            lower = k * math.log2(k) - w * math.log2(math.e)
            assert pre_permutation_entropy(k, w) >= lower - 1e-9

    @pytest.mark.parametrize("k,w", GRID)
    def test_permuting_cannot_reduce_entropy(self, k, w):
        assert (
            exact_entropy(enumerate_urn_distribution(k, w))
            >= pre_permutation_entropy(k, w) - 1e-9
        )


class TestExpectedDistortion:
    def test_permutations_have_no_collisions(self):
        assert exact_expected_distortion(enumerate_urn_distribution(3, 3)) == 0

    def test_k2_w1_support_has_no_collisions(self):
        assert exact_expected_distortion(enumerate_urn_distribution(2, 1)) == 0

    def test_uniform_cube_k3_two_routes(self):
        # enumeration vs the per-coordinate symmetry formula 1-(1-1/k)^(k-1)
        got = exact_expected_distortion(enumerate_urn_distribution(3, 0))
        assert got == 1 - Fraction(2, 3) ** 2 == Fraction(5, 9)

    @pytest.mark.parametrize("k,w", GRID)
    def test_within_closed_form_bound(self, k, w):
        mean_d = exact_expected_distortion(enumerate_urn_distribution(k, w))
        assert mean_d <= (1 - INV_E_UPPER) * Fraction(k - w, k)


class TestConditionalEntropyIdentity:
    @pytest.mark.parametrize("k,w", GRID)
    def test_identity_holds_exactly(self, k, w):
        lhs, rhs, equal = conditional_entropy_identity(k, w)
        assert equal, f"H(X|v(X))={lhs} != H(Y|v(Y))={rhs}"

    def test_rejects_oversize(self):
        with pytest.raises(ValueError):
            conditional_entropy_identity(6, 2)


class TestPerfectSuccessProbability:
    @pytest.mark.parametrize("k,expected", [
        (1, Fraction(1)),
        (2, Fraction(1, 2)),
        (3, Fraction(2, 9)),
        (8, Fraction(math.factorial(8), 8**8)),
    ])
    def test_values(self, k, expected):
        assert perfect_success_probability(k) == expected

    def test_documented_cap(self):
        with pytest.raises(ValueError):
            perfect_success_probability(9)


class TestCalibratedLambda:
    @pytest.mark.parametrize("k", range(1, 6))
    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 0.9, 1.0])
    def test_meets_budget_exactly(self, k, alpha):
        lam = calibrated_lambda(k, alpha)
        w = math.ceil(lam * k)
        mean_d = exact_expected_distortion(enumerate_urn_distribution(k, w))
        assert float(mean_d) <= 1 - alpha + 1e-12

    @pytest.mark.parametrize("k", range(2, 6))
    @pytest.mark.parametrize("alpha", [0.5, 0.75, 0.9, 1.0])
    def test_never_exceeds_default(self, k, alpha):
        calibrated_w = math.ceil(calibrated_lambda(k, alpha) * k)
        default_w = math.ceil(lambda_for_alpha(alpha) * k)
        assert calibrated_w <= default_w

    def test_exposes_slack_at_k4(self):
        # one with-replacement draw can never collide, so w = 3 already
        # achieves zero distortion at k = 4; and at alpha = 0.75 the
        # exact distortion of w = 2 is exactly 1/4
        assert calibrated_lambda(4, 1.0) == 0.75
        assert calibrated_lambda(4, 0.75) == 0.5
        assert math.ceil(lambda_for_alpha(0.75) * 4) == 3

    def test_free_region_needs_no_draws(self):
        assert calibrated_lambda(4, 0.3) == 0.0

    def test_monotone_in_alpha(self):
        values = [calibrated_lambda(5, a / 20) for a in range(21)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_rejects_bad_alpha(self):
        with pytest.raises(ValueError):
            calibrated_lambda(3, 1.5)


class TestVerifyGrid:
    def test_full_grid_passes(self):
        checks = verify_grid(3)
        assert checks and all(c.passed for c in checks)

    def test_table_rendering(self):
        checks = verify_grid(2)
        table = verification_table(checks)
        assert "PASS" in table and "FAIL" not in table
        assert table.splitlines()[-1].endswith("checks passed")

    def test_rejects_bad_kmax(self):
        with pytest.raises(ValueError):
            verify_grid(0)
        with pytest.raises(ValueError):
            verify_grid(6)
