"""Entropy functions and minimizers."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcbounds.numeric import (
    DEFAULT_CONFIG,
    BracketingError,
    DomainError,
    NonFiniteObjectiveError,
    ToleranceConfig,
    binary_entropy,
    clamp_half,
    minimize_convex_2d,
    minimize_scalar,
    mrrw_g,
)

# Independent high-precision value of h(1/4) = 2 - (3/4) * log2(3).
H_QUARTER = 2.0 - 0.75 * math.log2(3.0)


class TestBinaryEntropy:
    def test_zero_convention(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_maximum(self):
        assert binary_entropy(0.5) == 1.0

    def test_quarter(self):
        assert binary_entropy(0.25) == pytest.approx(H_QUARTER, abs=1e-15)

    def test_clamps_within_tolerance(self):
        assert binary_entropy(-1e-12) == 0.0
        assert binary_entropy(1.0 + 1e-12) == 0.0

    def test_rejects_beyond_tolerance(self):
        with pytest.raises(DomainError):
            binary_entropy(-1e-3)
        with pytest.raises(DomainError):
            binary_entropy(1.001)

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_symmetry(self, p):
        assert binary_entropy(p) == pytest.approx(binary_entropy(1.0 - p), abs=1e-12)

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_range(self, p):
        assert -1e-15 <= binary_entropy(p) <= 1.0 + 1e-15

    def test_array_path_matches_scalar(self):
        ps = np.linspace(0.0, 1.0, 257)
        vec = binary_entropy(ps)
        by_point = np.array([binary_entropy(float(p)) for p in ps])
        np.testing.assert_allclose(vec, by_point, atol=1e-15)


class TestMrrwG:
    def test_endpoints(self):
        assert mrrw_g(0.0) == 0.0
        assert mrrw_g(1.0) == 1.0

    def test_three_quarters(self):
        # (1 - sqrt(1 - 3/4)) / 2 = 1/4, so g(3/4) = h(1/4).
        assert mrrw_g(0.75) == pytest.approx(H_QUARTER, abs=1e-15)

    def test_monotone_on_grid(self):
        xs = np.linspace(0.0, 1.0, 10_000)
        ys = mrrw_g(xs)
        assert (np.diff(ys) >= -1e-12).all()

    def test_rejects_outside(self):
        with pytest.raises(DomainError):
            mrrw_g(1.01)


class TestClampHalf:
    @pytest.mark.parametrize("a,expected", [(0.3, 0.3), (0.5, 0.5), (7.0, 0.5)])
    def test_values(self, a, expected):
        assert clamp_half(a) == expected

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            clamp_half(-0.1)


class TestToleranceConfig:
    def test_defaults(self):
        assert DEFAULT_CONFIG.abs_tol == 1e-9
        assert DEFAULT_CONFIG.grid_points == 2048
        assert DEFAULT_CONFIG.max_refinements == 60

    @pytest.mark.parametrize(
        "kwargs",
        [{"abs_tol": 0.0}, {"abs_tol": -1.0}, {"grid_points": 2}, {"max_refinements": 0}],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            ToleranceConfig(**kwargs)


class TestMinimizeScalar:
    def test_quadratic(self):
        arg, val = minimize_scalar(lambda u: (u - 0.3) ** 2, 0.0, 1.0)
        assert arg == pytest.approx(0.3, abs=1e-6)
        assert val == pytest.approx(0.0, abs=1e-12)

    def test_boundary_minimum(self):
        arg, val = minimize_scalar(lambda u: u, 0.0, 1.0)
        assert arg == pytest.approx(0.0, abs=1e-9)
        assert val == pytest.approx(0.0, abs=1e-9)

    def test_degenerate_interval(self):
        assert minimize_scalar(lambda u: u * u + 1.0, 0.25, 0.25) == (0.25, 1.0625)

    def test_lp_objective_matches_dense_grid(self):
        # Oracle: brute minimum of the LP-bound objective at delta = 0.1 on
        # a one-million-point grid.
        delta = 0.1

        def objective(u):
            uu = u * u
            return 1.0 + mrrw_g(uu) - mrrw_g(uu + 2 * delta * u + 2 * delta)

        us = np.linspace(0.0, 1.0 - 2 * delta, 10**6)
        dense_min = float(objective(us).min())
        _, val = minimize_scalar(objective, 0.0, 1.0 - 2 * delta)
        assert val <= dense_min + 1e-12
        assert val == pytest.approx(dense_min, abs=1e-9)

    def test_beats_random_points_on_convex_objectives(self):
        rng = random.Random(7)
        for _ in range(20):
            c = rng.uniform(-1.0, 2.0)
            a = rng.uniform(0.1, 5.0)
            b = rng.uniform(0.0, 3.0)
            f = lambda u: a * (u - c) ** 2 + b * abs(u - c)
            _, val = minimize_scalar(f, 0.0, 1.0)
            for _ in range(100):
                u = rng.uniform(0.0, 1.0)
                assert val <= f(u) + DEFAULT_CONFIG.abs_tol

    def test_deterministic(self):
        f = lambda u: math.sin(7.0 * u) + 0.5 * u
        first = minimize_scalar(f, 0.0, 3.0)
        second = minimize_scalar(f, 0.0, 3.0)
        assert first == second

    def test_non_finite_objective(self):
        with pytest.raises(NonFiniteObjectiveError):
            minimize_scalar(lambda u: math.inf if u > 0.5 else u, 0.0, 1.0)

    def test_rejects_reversed_interval(self):
        with pytest.raises(DomainError):
            minimize_scalar(lambda u: u, 1.0, 0.0)


class TestMinimizeConvex2d:
    def test_paraboloid(self):
        (x, z), val = minimize_convex_2d(lambda x, z: x * x + z * z)
        assert val == pytest.approx(0.0, abs=1e-9)
        assert x == pytest.approx(0.0, abs=1e-4)
        assert z == pytest.approx(0.0, abs=1e-4)

    def test_boundary_active_in_z(self):
        (x, z), val = minimize_convex_2d(lambda x, z: x * x + z)
        assert val == pytest.approx(0.0, abs=1e-9)
        assert z == pytest.approx(0.0, abs=1e-6)

    def test_diverging_infimum(self):
        with pytest.raises(BracketingError) as excinfo:
            minimize_convex_2d(lambda x, z: x + z)
        assert math.isfinite(excinfo.value.best_value)

    def test_offset_quadratic(self):
        (x, z), val = minimize_convex_2d(
            lambda x, z: (x - 3.0) ** 2 + 2.0 * (z - 2.0) ** 2 + 1.0
        )
        assert val == pytest.approx(1.0, abs=1e-9)
        assert x == pytest.approx(3.0, abs=1e-4)
        assert z == pytest.approx(2.0, abs=1e-4)

    def test_correlated_quadratic(self):
        # Cross terms make coordinate descent iterate; still must converge.
        f = lambda x, z: x * x + z * z + 1.2 * x * z - x - z
        (_, _), val = minimize_convex_2d(f)
        xs = np.linspace(-3, 3, 1201)
        zs = np.linspace(0, 3, 601)
        dense = min(
            f(xx, zz) for xx in xs for zz in zs
        )
        assert val <= dense + 1e-9
