"""Constant-weight GV lower bound."""

import math

import numpy as np
import pytest

from vcbounds.cw_lower import WeightedGVQuery, cw_gv_exponent, cwc_rate
from vcbounds.numeric import DomainError, binary_entropy
from vcbounds.upper import BoundQuery, Method

H = binary_entropy


def pair_exponent(w: float, x: float) -> float:
    return w * H(x / w) + (1.0 - w) * H(x / (1.0 - w))


class TestWeightedGVQuery:
    def test_validation(self):
        with pytest.raises(DomainError):
            WeightedGVQuery(1.2, 0.1)
        with pytest.raises(DomainError):
            WeightedGVQuery(0.5, 0.6)


class TestCwGvExponent:
    def test_delta_zero_is_entropy(self):
        assert cw_gv_exponent(WeightedGVQuery(0.3, 0.0)) == pytest.approx(
            H(0.3), abs=1e-12
        )

    @pytest.mark.parametrize("delta", [0.05, 0.15, 0.3, 0.5])
    def test_weight_half_reduces_to_one_minus_entropy(self, delta):
        # At w = 1/2 the pair exponent is h(2x), maximized at x = delta/2.
        assert cw_gv_exponent(WeightedGVQuery(0.5, delta)) == pytest.approx(
            1.0 - H(delta), abs=1e-9
        )

    def test_matches_dense_x_grid(self):
        # Oracle: dense grid over the inner maximization variable.
        w, delta = 0.375, 0.25
        xs = np.linspace(0.0, min(delta / 2.0, w), 10**6)
        dense = H(w) - float(
            (w * H(xs / w) + (1.0 - w) * H(xs / (1.0 - w))).max()
        )
        assert cw_gv_exponent(WeightedGVQuery(w, delta)) == pytest.approx(
            dense, abs=1e-9
        )

    def test_reflection_above_half(self):
        assert cw_gv_exponent(WeightedGVQuery(0.7, 0.2)) == pytest.approx(
            cw_gv_exponent(WeightedGVQuery(0.3, 0.2)), abs=1e-12
        )

    def test_inner_max_not_at_endpoint(self):
        # For w = delta/2 the pair exponent peaks at x = w * (1 - w), which
        # is interior; the exponent is then exactly zero, not h(w) - b(w).
        w, delta = 0.1, 0.2
        assert cw_gv_exponent(WeightedGVQuery(w, delta)) == pytest.approx(
            0.0, abs=1e-9
        )
        assert pair_exponent(w, w * (1.0 - w)) == pytest.approx(H(w), abs=1e-12)

    @pytest.mark.parametrize("w", [0.1, 0.25, 0.4])
    def test_nonincreasing_in_delta(self, w):
        values = [
            cw_gv_exponent(WeightedGVQuery(w, float(dd)))
            for dd in np.linspace(0.0, 0.5, 26)
        ]
        assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))

    def test_degenerate_weight(self):
        assert cw_gv_exponent(WeightedGVQuery(0.0, 0.3)) == 0.0
        assert cw_gv_exponent(WeightedGVQuery(1.0, 0.3)) == 0.0


class TestCwcRate:
    def test_delta_zero_is_entropy(self):
        assert cwc_rate(BoundQuery(0.25, 0.0)).rate == pytest.approx(
            H(0.25), abs=1e-12
        )

    def test_weight_saturates_at_half(self):
        # d = 0.4, delta = 0.3 gives w = 0.55 >= 1/2, so the rate is
        # 1 - h(0.3); independent value via log identities.
        expected = 1.0 - (
            -0.3 * math.log2(0.3) - 0.7 * math.log2(0.7)
        )
        assert cwc_rate(BoundQuery(0.4, 0.3)).rate == pytest.approx(
            expected, abs=1e-12
        )

    def test_zero_vc_against_finite_counting(self):
        # Oracle: finite-length count of the GV ratio at n = 10^4 for
        # d = 0, delta = 0.2 (weight w = 0.1) via log-binomials.
        n, wn, dn = 10_000, 1_000, 2_000

        def log2_comb(a, b):
            return (
                math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)
            ) / math.log(2.0)

        log_pairs = [
            log2_comb(wn, i) + log2_comb(n - wn, i) for i in range(dn // 2)
        ]
        peak = max(log_pairs)
        log_denominator = peak + math.log2(
            sum(2.0 ** (lp - peak) for lp in log_pairs)
        )
        finite_exponent = (log2_comb(n, wn) - log_denominator) / n
        assert cwc_rate(BoundQuery(0.0, 0.2)).rate == pytest.approx(
            finite_exponent, abs=1e-2
        )

    def test_method_tag(self):
        assert cwc_rate(BoundQuery(0.1, 0.1)).method is Method.CWC

    def test_floor_at_zero(self):
        # d = 0 with any delta: the inner maximum reaches h(w), so the raw
        # exponent is ~0 and the rate must not go negative.
        for delta in (0.1, 0.2, 0.4, 0.5):
            rate = cwc_rate(BoundQuery(0.0, delta)).rate
            assert 0.0 <= rate <= 1e-9


class TestFiniteLengthConsistency:
    def test_exponent_matches_exact_ratio_at_thousand(self):
        # Exact integer right side of the GV inequality at n = 1000 on
        # rational grid points, compared to the asymptotic exponent.
        n = 1000
        for wn, dn in [(250, 100), (375, 250), (500, 300), (125, 50)]:
            w, delta = wn / n, dn / n
            numerator = math.comb(n, wn)
            denominator = sum(
                math.comb(wn, i) * math.comb(n - wn, i) for i in range(dn // 2)
            )
            exact = (math.log2(numerator) - math.log2(denominator)) / n
            asymptotic = cw_gv_exponent(WeightedGVQuery(w, delta))
            assert asymptotic == pytest.approx(exact, abs=0.02)
