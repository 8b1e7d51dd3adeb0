"""Constant-weight Gilbert-Varshamov lower bound.

The ambient set is the sphere of normalized weight w. A GV-type counting
argument gives the achievable exponent h(w) minus the exponent of the
distance-(delta*n) pair count, and choosing w = d + delta/2 keeps the
VC-dimension of any distance-(delta*n) subcode below d*n (up to an additive
constant that vanishes in rate).
"""

from __future__ import annotations

from dataclasses import dataclass

from .numeric import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    binary_entropy,
    check_unit_range,
    minimize_scalar,
)
from .upper import BoundQuery, Method, RateValue

__all__ = ["WeightedGVQuery", "cw_gv_exponent", "cwc_rate"]

_QUERY_SLOP = 1e-12


@dataclass(frozen=True)
class WeightedGVQuery:
    """Normalized constant weight ``w`` in [0, 1] and distance ``delta`` in [0, 1/2]."""

    w: float
    delta: float

    def __post_init__(self):
        object.__setattr__(
            self, "w", check_unit_range(self.w, 0.0, 1.0, _QUERY_SLOP, "w")
        )
        object.__setattr__(
            self, "delta", check_unit_range(self.delta, 0.0, 0.5, _QUERY_SLOP, "delta")
        )


def cw_gv_exponent(q: WeightedGVQuery, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Exponent of the GV count inside the weight-w sphere:

        h(w) - max over x in [0, min(delta/2, w)] of
               [w*h(x/w) + (1-w)*h(x/(1-w))].

    Weights above 1/2 are reflected to 1-w (complementing every word is a
    distance-preserving bijection between the spheres). The x-cap at w is
    forced by the inner binomial; the raw exponent is returned and may be
    negative when the pair count dominates.
    """
    w, delta = q.w, q.delta
    if w > 0.5:
        w = 1.0 - w
    if w == 0.0:
        return 0.0

    def neg_pair_exponent(x):
        return -(
            w * binary_entropy(x / w, cfg.abs_tol)
            + (1.0 - w) * binary_entropy(x / (1.0 - w), cfg.abs_tol)
        )

    hi = min(delta / 2.0, w)
    max_term = -minimize_scalar(neg_pair_exponent, 0.0, hi, cfg)[1]
    return binary_entropy(w, cfg.abs_tol) - max_term


def cwc_rate(q: BoundQuery, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RateValue:
    """Constant-weight GV lower bound with the weight choice w = d + delta/2.

    For w >= 1/2 the weight is pinned at 1/2, where the exponent reduces to
    1 - h(delta). The returned rate is floored at 0 (a rate-0 family always
    exists, so the trivial bound remains valid when the exponent is negative).
    """
    w = q.d + q.delta / 2.0
    if w < 0.5:
        raw = cw_gv_exponent(WeightedGVQuery(w, q.delta), cfg)
    else:
        raw = 1.0 - binary_entropy(q.delta, cfg.abs_tol)
    return RateValue(max(raw, 0.0), Method.CWC)
