"""Finite-length invariant suite: exact checks of the combinatorial lemmas
behind the asymptotic bounds, runnable at configurable sizes.

Each checker returns a :class:`PropertyResult`; the CLI ``oracle props``
command prints one pass/fail line per property, and the acceptance tests
run the same checkers at their full sizes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .markov_lower import (
    GRAPH_G,
    CyclePath,
    count_switch_bounded,
    empirical_distribution,
)
from .oracle import (
    BinaryCode,
    BudgetExceededError,
    CoordinateSet,
    constant_weight_set,
    gv_greedy,
    kk_bound,
    max_code_size_exact,
    min_distance,
    sauer_shelah_cap,
    switch_bounded_set,
    ud_weight,
    vc_dimension,
)

__all__ = [
    "PropertyResult",
    "random_code",
    "check_sauer_shelah",
    "check_cw_vc_lemma",
    "check_switch_vc_fact",
    "check_kk_existence",
    "check_ud_weight_inequality",
    "check_switch_count_agreement",
    "check_cycle_switch_identity",
    "check_gv_cube_bound",
    "run_property_suite",
]


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  [{'; '.join(self.failures[:3])}]"
        return f"{status} {self.name} ({self.checked} cases){extra}"


def random_code(rng: random.Random, max_n: int) -> BinaryCode:
    """Deterministic random code: uniform n in [2, max_n], uniform size."""
    n = rng.randint(2, max_n)
    size = rng.randint(1, 1 << n)
    return BinaryCode.from_words(n, rng.sample(range(1 << n), size))


def check_sauer_shelah(seed: int, trials: int, max_n: int) -> PropertyResult:
    """|C| <= sum_{i<=D} C(n, i) with D the exact VC-dimension."""
    rng = random.Random(seed)
    result = PropertyResult("sauer-shelah cardinality cap", True, 0)
    for _ in range(trials):
        code = random_code(rng, max_n)
        cap = sauer_shelah_cap(code.n, vc_dimension(code))
        result.checked += 1
        if len(code) > cap:
            result.passed = False
            result.failures.append(f"|C|={len(code)} > cap={cap} at n={code.n}")
    return result


def check_cw_vc_lemma(max_n: int) -> PropertyResult:
    """Constant-weight codes with min distance D have VC-dim <= k - ceil(D/2) + 1.

    Verified on every greedy code over every constant-weight ambient with at
    least two codewords (a singleton has no minimum distance).
    """
    result = PropertyResult("constant-weight VC-dimension lemma", True, 0)
    for n in range(2, max_n + 1):
        for k in range(0, n + 1):
            ambient = constant_weight_set(n, k)
            for dist in range(1, n + 1):
                code = gv_greedy(ambient, dist)
                if len(code) < 2:
                    continue
                actual = min_distance(code)
                bound = k - math.ceil(actual / 2) + 1
                result.checked += 1
                if vc_dimension(code) > bound:
                    result.passed = False
                    result.failures.append(
                        f"n={n} k={k} dist={dist}: vc={vc_dimension(code)} > {bound}"
                    )
    return result


def check_switch_vc_fact(max_n: int) -> PropertyResult:
    """Words with at most k switches have VC-dimension at most k + 1.

    Checking the full switch-bounded set covers all subsets, since the
    VC-dimension is monotone under inclusion.
    """
    result = PropertyResult("switch-bounded VC-dimension cap", True, 0)
    for n in range(2, max_n + 1):
        for k in range(0, n):
            result.checked += 1
            vc = vc_dimension(switch_bounded_set(n, k))
            if vc > k + 1:
                result.passed = False
                result.failures.append(f"n={n} k={k}: vc={vc} > {k + 1}")
    return result


def check_kk_existence(max_n: int, exact_max_n: int, node_budget: int) -> PropertyResult:
    """Expurgation bound: some distance-d code in S has size >= ceil(kk_bound).

    For ambients up to ``exact_max_n`` the optimum is computed exactly by
    branch and bound. Beyond that, the greedy code certifies the inequality
    (greedy size <= optimum); exact search is escalated only if the greedy
    certificate falls short, so a pass is always a rigorous verification.
    """
    result = PropertyResult("expurgation (pair-counting) existence bound", True, 0)
    for n in range(2, max_n + 1):
        for k in range(0, n):
            ambient = switch_bounded_set(n, k)
            for dist in range(1, n + 1):
                need = math.ceil(kk_bound(ambient, dist))
                result.checked += 1
                if n <= exact_max_n:
                    witness = max_code_size_exact(ambient, dist, node_budget=node_budget)
                else:
                    witness = len(gv_greedy(ambient, dist))
                    if witness < need:
                        try:
                            witness = max_code_size_exact(
                                ambient, dist, node_budget=node_budget
                            )
                        except BudgetExceededError as err:
                            witness = err.best_found
                if witness < need:
                    result.passed = False
                    result.failures.append(
                        f"n={n} k={k} dist={dist}: witness {witness} < ceil(kk)={need}"
                    )
    return result


def check_ud_weight_inequality(
    seed: int, trials: int, coord_trials: int, max_n: int
) -> PropertyResult:
    """Projected unit-distance weight satisfies W <= 2 * D * |C| for every
    coordinate set, with D the exact VC-dimension."""
    rng = random.Random(seed)
    result = PropertyResult("unit-distance weight inequality", True, 0)
    for _ in range(trials):
        code = random_code(rng, max_n)
        cap = 2 * vc_dimension(code) * len(code)
        for _ in range(coord_trials):
            coords = CoordinateSet(code.n, rng.randrange(1 << code.n))
            weight = ud_weight(code, coords)
            result.checked += 1
            if weight > cap:
                result.passed = False
                result.failures.append(
                    f"n={code.n} |C|={len(code)} mask={coords.mask}: W={weight} > {cap}"
                )
    return result


def check_switch_count_agreement(max_n: int) -> PropertyResult:
    """Enumerated switch-bounded sets match the transfer-matrix count."""
    result = PropertyResult("switch-bounded enumeration vs count", True, 0)
    for n in range(1, max_n + 1):
        for k in range(0, n):
            result.checked += 1
            enumerated = len(switch_bounded_set(n, k))
            counted = count_switch_bounded(n, k)
            if enumerated != counted:
                result.passed = False
                result.failures.append(f"n={n} k={k}: {enumerated} != {counted}")
    return result


def check_cycle_switch_identity(max_n: int) -> PropertyResult:
    """n * E_P(f) - f(e1) equals the switch count of the label word, for
    every closed walk of length <= max_n (exhaustive)."""
    f_of = {e.key: e.f for e in GRAPH_G.edges}
    result = PropertyResult("cycle switch identity", True, 0)
    for n in range(1, max_n + 1):
        for start in GRAPH_G.vertices:
            for bits in range(1 << (n - 1)):
                verts = [start]
                for i in range(n - 1):
                    verts.append(GRAPH_G.vertices[(bits >> i) & 1])
                verts.append(start)
                edges = tuple(zip(verts, verts[1:]))
                path = CyclePath(GRAPH_G, edges)
                emp = empirical_distribution(path)
                lhs = n * emp.expectation(lambda e: e.f) - f_of[edges[0]]
                word = path.label_word()
                rhs = sum(1 for a, b in zip(word, word[1:]) if a != b)
                result.checked += 1
                if lhs != rhs:
                    result.passed = False
                    result.failures.append(f"walk {edges}: {lhs} != {rhs}")
    return result


def check_gv_cube_bound(max_n: int) -> PropertyResult:
    """Classical GV anchor: the greedy code over the full cube has size at
    least 2^n / sum_{i <= dist-1} C(n, i)."""
    result = PropertyResult("greedy GV size over the full cube", True, 0)
    for n in range(2, max_n + 1):
        cube = BinaryCode.full_cube(n)
        for dist in range(1, n + 1):
            ball = sum(math.comb(n, i) for i in range(dist))
            need = math.ceil((1 << n) / ball)
            size = len(gv_greedy(cube, dist))
            result.checked += 1
            if size < need:
                result.passed = False
                result.failures.append(f"n={n} dist={dist}: {size} < {need}")
    return result


def run_property_suite(
    seed: int = 2024,
    trials: int = 200,
    max_n: int = 10,
    exact_max_n: int = 6,
    node_budget: int = 2_000_000,
) -> list[PropertyResult]:
    """Scaled-down version of the full invariant suite (CLI entry point)."""
    return [
        check_sauer_shelah(seed, trials, min(max_n, 12)),
        check_cw_vc_lemma(max_n),
        check_switch_vc_fact(max_n),
        check_kk_existence(max_n, exact_max_n, node_budget),
        check_ud_weight_inequality(seed + 1, trials // 4, 20, min(max_n, 12)),
        check_switch_count_agreement(max_n),
        check_cycle_switch_identity(min(max_n, 12)),
        check_gv_cube_bound(max_n),
    ]
