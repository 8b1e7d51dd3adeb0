"""Entropy functions and deterministic minimizers shared by all bounds.

All logarithms are base 2 (binary alphabet). Every function here is pure:
identical arguments and configuration produce bit-identical results, so the
module is safe for unrestricted concurrent use.

The scalar minimizer is a dense grid followed by golden-section refinement
of the best bracket, which is robust to the mildly non-convex objectives
that arise in the linear-programming bound. The 2-D minimizer assumes a
jointly convex objective (the caller guarantees this) and runs alternating
coordinate descent with expanding brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "DomainError",
    "NonFiniteObjectiveError",
    "BracketingError",
    "ToleranceConfig",
    "DEFAULT_CONFIG",
    "binary_entropy",
    "mrrw_g",
    "clamp_half",
    "minimize_scalar",
    "minimize_convex_2d",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0   # 1/phi
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


class DomainError(ValueError):
    """An argument lies outside its documented domain beyond tolerance."""


class NonFiniteObjectiveError(ArithmeticError):
    """An objective evaluated to NaN or infinity during minimization."""

    def __init__(self, point, value):
        self.point = point
        self.value = value
        super().__init__(f"objective is not finite at {point!r}: {value!r}")


class BracketingError(RuntimeError):
    """Expanding brackets never contained a minimizer (diverging infimum).

    ``best_arg``/``best_value`` record the best point seen before giving up.
    """

    def __init__(self, message, best_arg, best_value):
        self.best_arg = best_arg
        self.best_value = best_value
        super().__init__(f"{message} (best value found: {best_value!r})")


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy: absolute value tolerance, grid density, bracket caps."""

    abs_tol: float = 1e-9
    grid_points: int = 2048
    max_refinements: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.grid_points < 3:
            raise DomainError(f"grid_points must be >= 3, got {self.grid_points}")
        if self.max_refinements < 1:
            raise DomainError(f"max_refinements must be >= 1, got {self.max_refinements}")


DEFAULT_CONFIG = ToleranceConfig()


def check_unit_range(value: float, lo: float, hi: float, abs_tol: float, name: str) -> float:
    """Validate ``lo <= value <= hi``, clamping round-off within ``abs_tol``."""
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    if value < lo - abs_tol or value > hi + abs_tol:
        raise DomainError(f"{name} must lie in [{lo}, {hi}], got {value}")
    return min(max(value, lo), hi)


def binary_entropy(p, abs_tol: float = DEFAULT_CONFIG.abs_tol):
    """Binary entropy -p*log2(p) - (1-p)*log2(1-p) with 0*log2(0) = 0.

    Accepts a scalar in [0, 1] (inputs within ``abs_tol`` outside are
    clamped) or a numpy array for elementwise evaluation.
    """
    if isinstance(p, np.ndarray):
        if (p < -abs_tol).any() or (p > 1.0 + abs_tol).any():
            raise DomainError("probability array has entries outside [0, 1]")
        q = np.clip(p, 0.0, 1.0)
        out = np.zeros_like(q, dtype=float)
        inner = (q > 0.0) & (q < 1.0)
        qi = q[inner]
        out[inner] = -qi * np.log2(qi) - (1.0 - qi) * np.log2(1.0 - qi)
        return out
    p = check_unit_range(p, 0.0, 1.0, abs_tol, "probability")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def mrrw_g(x, abs_tol: float = DEFAULT_CONFIG.abs_tol):
    """The auxiliary function h((1 - sqrt(1 - x)) / 2) of the LP bound.

    Nondecreasing on [0, 1]; accepts scalars or numpy arrays. Inputs within
    ``abs_tol`` outside [0, 1] are clamped (grid endpoints such as
    u^2 + 2*delta*u + 2*delta = 1 overflow the domain by round-off).
    """
    if isinstance(x, np.ndarray):
        if (x < -abs_tol).any() or (x > 1.0 + abs_tol).any():
            raise DomainError("argument array has entries outside [0, 1]")
        xc = np.clip(x, 0.0, 1.0)
        return binary_entropy((1.0 - np.sqrt(1.0 - xc)) / 2.0, abs_tol)
    x = check_unit_range(x, 0.0, 1.0, abs_tol, "argument")
    return binary_entropy((1.0 - math.sqrt(1.0 - x)) / 2.0, abs_tol)


def clamp_half(a: float) -> float:
    """min(a, 1/2) for a >= 0."""
    a = float(a)
    if not (a >= 0.0):
        raise DomainError(f"expected a nonnegative number, got {a}")
    return min(a, 0.5)


def _finite(value, point) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteObjectiveError(point, value)
    return value


def _golden_section(
    f: Callable[[float], float],
    a: float,
    b: float,
    best_arg: float,
    best_val: float,
    xtol: float,
    max_iter: int = 256,
) -> tuple[float, float]:
    """Golden-section refinement on [a, b]; never returns worse than the seed."""
    c = a + _INVPHI2 * (b - a)
    d = a + _INVPHI * (b - a)
    fc = _finite(f(c), c)
    fd = _finite(f(d), d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = a + _INVPHI2 * (b - a)
            fc = _finite(f(c), c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = _finite(f(d), d)
    x, fx = (c, fc) if fc < fd else (d, fd)
    if fx < best_val:
        return x, fx
    return best_arg, best_val


def minimize_scalar(
    objective: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    """Deterministic minimum of a continuous objective on [lo, hi].

    Dense grid of ``cfg.grid_points`` followed by golden-section refinement
    of the best bracket. The grid stage evaluates the objective on a numpy
    array when the objective supports it, falling back to pointwise calls.
    Returns ``(argmin, minimum)``.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"interval endpoints must be finite, got [{lo}, {hi}]")
    if lo > hi:
        raise DomainError(f"expected lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return lo, _finite(objective(lo), lo)

    xs = np.linspace(lo, hi, cfg.grid_points)
    ys = None
    try:
        vec = objective(xs)
        if isinstance(vec, np.ndarray) and vec.shape == xs.shape:
            vec = vec.astype(float, copy=False)
            if np.isfinite(vec).all():
                ys = vec
    except Exception:
        ys = None
    if ys is None:
        ys = np.array([_finite(objective(float(x)), float(x)) for x in xs])

    i = int(np.argmin(ys))
    best_arg, best_val = float(xs[i]), float(ys[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, cfg.grid_points - 1)])
    xtol = max(1e-14, 1e-12 * max(abs(a), abs(b), 1.0))
    return _golden_section(objective, a, b, best_arg, best_val, xtol)


def _bracket_line(
    f: Callable[[float], float],
    center: float,
    max_refinements: int,
) -> tuple[float, float, float, float]:
    """Bracket the minimizer of a convex function on the whole real line.

    Doubles an initial bracket around ``center`` until the midpoint value is
    no larger than both endpoint values, which by convexity certifies that a
    minimizer lies inside. Returns (a, b, best_arg, best_val).
    """
    w = 1.0
    a, m, b = center - w, center, center + w
    fa = _finite(f(a), a)
    fm = _finite(f(m), m)
    fb = _finite(f(b), b)
    for _ in range(max_refinements):
        if fm <= fa and fm <= fb:
            return a, b, m, fm
        if fa < fb:
            a, m, b = a - 2.0 * w, a, m
            fa, fm, fb = _finite(f(a), a), fa, fm
        else:
            a, m, b = m, b, b + 2.0 * w
            fa, fm, fb = fm, fb, _finite(f(b), b)
        w *= 2.0
    best = min((fa, a), (fm, m), (fb, b))
    raise BracketingError("bracket expansion on the real line diverged", best[1], best[0])


def _bracket_ray(
    f: Callable[[float], float],
    start: float,
    max_refinements: int,
) -> tuple[float, float, float, float]:
    """Bracket the minimizer of a convex function on [0, infinity)."""
    f0 = _finite(f(0.0), 0.0)
    t = max(start, 1.0)
    ft = _finite(f(t), t)
    if ft >= f0:
        return 0.0, t, 0.0, f0
    prev, fprev = 0.0, f0
    cur, fcur = t, ft
    for _ in range(max_refinements):
        nxt = 2.0 * cur
        fnxt = _finite(f(nxt), nxt)
        if fnxt >= fcur:
            return prev, nxt, cur, fcur
        prev, fprev, cur, fcur = cur, fcur, nxt, fnxt
    raise BracketingError("bracket expansion on the half line diverged", cur, fcur)


def minimize_convex_2d(
    objective: Callable[[float, float], float],
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    start: tuple[float, float] = (0.0, 1.0),
) -> tuple[tuple[float, float], float]:
    """Infimum of a jointly convex objective over x in R, z in [0, infinity).

    The caller guarantees convexity. Alternating coordinate descent: each
    sweep minimizes over x with an expanding bracket, then over z on the
    nonnegative half line, stopping once successive sweep values differ by
    less than ``cfg.abs_tol``. Raises :class:`BracketingError` when a bracket
    keeps expanding past ``cfg.max_refinements`` doublings (diverging
    infimum); the error carries the best value found.

    Returns ``((x, z), minimum)``.
    """
    x, z = float(start[0]), max(float(start[1]), 0.0)
    value = _finite(objective(x, z), (x, z))
    for _ in range(1000):
        a, b, seed_arg, seed_val = _bracket_line(
            lambda t: objective(t, z), x, cfg.max_refinements
        )
        xtol = max(1e-14, 1e-11 * max(abs(a), abs(b), 1.0))
        x, _ = _golden_section(
            lambda t: objective(t, z), a, b, seed_arg, seed_val, xtol
        )
        a, b, seed_arg, seed_val = _bracket_ray(
            lambda t: objective(x, t), z, cfg.max_refinements
        )
        xtol = max(1e-14, 1e-11 * max(abs(b), 1.0))
        z, new_value = _golden_section(
            lambda t: objective(x, t), a, b, seed_arg, seed_val, xtol
        )
        converged = abs(value - new_value) < cfg.abs_tol
        value = new_value
        if converged:
            break
    return (x, z), value
