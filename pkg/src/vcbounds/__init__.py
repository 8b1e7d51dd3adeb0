"""Bounds engine and exact verification toolkit for binary codes constrained
by minimum distance and VC-dimension.

Asymptotic upper bounds (second LP bound, Sauer-Shelah cap, Haussler packing
bound, shortening combination), lower bounds (constant-weight and Markov-type
GV arguments), and exact finite-length oracles that cross-validate every
asymptotic claim at small block length.
"""

from .cw_lower import WeightedGVQuery, cw_gv_exponent, cwc_rate
from .curves import BoundCurve, SweepRequest, bound_rate, evaluate_query, run_sweep
from .markov_lower import (
    GRAPH_G,
    PRODUCT_GXG,
    CyclePath,
    EdgeDistribution,
    capital_f,
    capital_g,
    conditional_entropy,
    count_switch_bounded,
    empirical_distribution,
    lambda_g,
    lambda_gxg,
    lambda_power_iteration,
    r_ma,
)
from .numeric import (
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
from .oracle import (
    BinaryCode,
    BudgetExceededError,
    CoordinateSet,
    constant_weight_set,
    gv_greedy,
    is_shattered,
    kk_bound,
    max_code_size_exact,
    min_distance,
    sauer_shelah_cap,
    switch_bounded_set,
    switches,
    ud_weight,
    vc_dimension,
)
from .upper import (
    BoundQuery,
    Method,
    RateValue,
    haussler_rate,
    r_lp,
    sauer_shelah_rate,
    shortening_rate,
)

__version__ = "0.1.0"
