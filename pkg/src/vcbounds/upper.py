"""Asymptotic upper bounds on rates of binary codes with VC-dimension at
most d*n and minimum distance at least delta*n.

Four bounds: the closed-form second linear-programming (MRRW) bound, which
depends on delta only; the Sauer-Shelah entropy cap h(d); the Haussler
packing bound; and the shortening bound that mixes the entropy cap on a
prefix with the LP bound on the suffixes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .numeric import (
    DEFAULT_CONFIG,
    DomainError,
    ToleranceConfig,
    binary_entropy,
    check_unit_range,
    clamp_half,
    minimize_scalar,
    mrrw_g,
)

__all__ = [
    "Method",
    "BoundQuery",
    "RateValue",
    "r_lp",
    "sauer_shelah_rate",
    "haussler_rate",
    "shortening_rate",
]

# Slop for clamping grid-generated queries that overshoot [0, 1/2] by round-off.
_QUERY_SLOP = 1e-12


class Method(enum.Enum):
    """Tags for the bound families; values are the stable CLI/CSV names."""

    MRRW = "mrrw"
    SAUER_SHELAH = "sauer"
    HAUSSLER = "haussler"
    SHORTENING = "shortening"
    CWC = "cwc"
    MARKOV = "markov"

    @classmethod
    def from_name(cls, name: str) -> "Method":
        for member in cls:
            if member.value == name:
                return member
        raise DomainError(f"unknown method {name!r}; choose from "
                          f"{', '.join(m.value for m in cls)}")


@dataclass(frozen=True)
class BoundQuery:
    """Normalized VC-dimension ``d`` and distance ``delta``, both in [0, 1/2]."""

    d: float
    delta: float

    def __post_init__(self):
        object.__setattr__(
            self, "d", check_unit_range(self.d, 0.0, 0.5, _QUERY_SLOP, "d")
        )
        object.__setattr__(
            self, "delta", check_unit_range(self.delta, 0.0, 0.5, _QUERY_SLOP, "delta")
        )


@dataclass(frozen=True)
class RateValue:
    """A rate in [0, 1] together with the bound family that produced it."""

    rate: float
    method: Method

    def __post_init__(self):
        rate = float(self.rate)
        if not math.isfinite(rate) or rate < -1e-9 or rate > 1.0 + 1e-9:
            raise DomainError(f"rate must lie in [0, 1], got {rate}")
        object.__setattr__(self, "rate", min(max(rate, 0.0), 1.0))


@lru_cache(maxsize=1 << 20)
def _r_lp_value(delta: float, cfg: ToleranceConfig) -> float:
    def objective(u):
        # The g-difference is grouped first so the delta = 0 objective is
        # exactly 1 (no associativity loss).
        uu = u * u
        return 1.0 + (
            mrrw_g(uu, cfg.abs_tol)
            - mrrw_g(uu + 2.0 * delta * u + 2.0 * delta, cfg.abs_tol)
        )

    return minimize_scalar(objective, 0.0, 1.0 - 2.0 * delta, cfg)[1]


def r_lp(delta: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RateValue:
    """Second MRRW bound: min over u in [0, 1-2*delta] of
    1 + g(u^2) - g(u^2 + 2*delta*u + 2*delta).

    At delta = 0 the objective is identically 1; at delta = 1/2 the u-range
    collapses to {0} and the value is 0. Results are cached per (delta, cfg).
    """
    delta = check_unit_range(delta, 0.0, 0.5, cfg.abs_tol, "delta")
    return RateValue(_r_lp_value(delta, cfg), Method.MRRW)


def sauer_shelah_rate(d: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RateValue:
    """Entropy cap h(d) implied by the Sauer-Shelah cardinality bound."""
    d = check_unit_range(d, 0.0, 0.5, cfg.abs_tol, "d")
    return RateValue(binary_entropy(d, cfg.abs_tol), Method.SAUER_SHELAH)


def haussler_rate(q: BoundQuery, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RateValue:
    """Packing bound (2d / (delta + 2d)) * h(<(delta + 2d) / 2>).

    The 0/0 ratio at d = delta = 0 is defined as 0; more generally d = 0
    gives rate 0 (the numerator vanishes).
    """
    if q.d == 0.0:
        return RateValue(0.0, Method.HAUSSLER)
    s = q.delta + 2.0 * q.d
    rate = (2.0 * q.d / s) * binary_entropy(clamp_half(s / 2.0), cfg.abs_tol)
    return RateValue(rate, Method.HAUSSLER)


def shortening_rate(q: BoundQuery, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RateValue:
    """Shortening bound: min over s in [0, 1-2*delta] of
    s*h(<d/s>) + (1-s)*R_LP(delta/(1-s)).

    Endpoints are computed by their limit values: at s = 0 the first term
    vanishes, leaving R_LP(delta); at s = 1 (reachable only when delta = 0)
    the second term vanishes, leaving h(d).
    """
    d, delta = q.d, q.delta

    def objective(s):
        s = float(s)
        first = 0.0 if (s <= 0.0 or d == 0.0) else s * binary_entropy(
            clamp_half(d / s), cfg.abs_tol
        )
        rem = 1.0 - s
        if rem <= 0.0:
            return first
        arg = check_unit_range(delta / rem, 0.0, 0.5, cfg.abs_tol, "delta/(1-s)")
        return first + rem * _r_lp_value(arg, cfg)

    value = minimize_scalar(objective, 0.0, 1.0 - 2.0 * delta, cfg)[1]
    return RateValue(value, Method.SHORTENING)
