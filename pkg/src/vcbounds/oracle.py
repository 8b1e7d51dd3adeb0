"""Exact finite-length ground truth for codes stored as machine integers.

Words live in [0, 2^n) with n <= 64; coordinate i (0-based) is the i-th
character of the word written MSB-first, i.e. bit position n-1-i. Everything
here is exact: distances and projections by bit arithmetic, cardinalities in
arbitrary precision, the expurgation bound as a Fraction, and maximum code
sizes by branch and bound with an explicit node budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np

from .numeric import DomainError

__all__ = [
    "BinaryCode",
    "CoordinateSet",
    "BudgetExceededError",
    "DEFAULT_NODE_BUDGET",
    "min_distance",
    "is_shattered",
    "vc_dimension",
    "switches",
    "constant_weight_set",
    "switch_bounded_set",
    "gv_greedy",
    "max_code_size_exact",
    "kk_bound",
    "sauer_shelah_cap",
    "ud_weight",
]

DEFAULT_NODE_BUDGET = 5_000_000


class BudgetExceededError(RuntimeError):
    """Branch-and-bound ran out of nodes; carries the best size proven so far."""

    def __init__(self, nodes: int, best_found: int):
        self.nodes = nodes
        self.best_found = best_found
        super().__init__(
            f"search budget of {nodes} nodes exhausted; best clique found has "
            f"size {best_found} (a valid lower bound, not proven optimal)"
        )


def _popcount_array(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr)


@dataclass(frozen=True)
class BinaryCode:
    """Nonempty set of length-n binary words as sorted, distinct integers."""

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.n <= 64):
            raise DomainError(f"n must lie in [1, 64], got {self.n}")
        limit = 1 << self.n
        prev = -1
        for w in self.words:
            if not (0 <= w < limit):
                raise DomainError(f"word {w} out of range for n={self.n}")
            if w <= prev:
                raise DomainError("words must be sorted strictly ascending")
            prev = w

    @classmethod
    def from_words(cls, n: int, words) -> "BinaryCode":
        return cls(n, tuple(sorted(set(int(w) for w in words))))

    @classmethod
    def from_strings(cls, bits) -> "BinaryCode":
        bits = list(bits)
        if not bits:
            raise DomainError("need at least one word")
        n = len(bits[0])
        if any(len(b) != n for b in bits):
            raise DomainError("all words must have equal length")
        return cls.from_words(n, (int(b, 2) for b in bits))

    @classmethod
    def full_cube(cls, n: int) -> "BinaryCode":
        return cls(n, tuple(range(1 << n)))

    def __len__(self) -> int:
        return len(self.words)

    @cached_property
    def as_array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.uint64)


@dataclass(frozen=True)
class CoordinateSet:
    """Subset of the n coordinates, stored as a bit mask."""

    n: int
    mask: int

    def __post_init__(self):
        if not (1 <= self.n <= 64):
            raise DomainError(f"n must lie in [1, 64], got {self.n}")
        if not (0 <= self.mask < (1 << self.n)):
            raise DomainError(f"mask {self.mask} out of range for n={self.n}")

    @classmethod
    def from_indices(cls, n: int, indices) -> "CoordinateSet":
        mask = 0
        for i in indices:
            if not (0 <= i < n):
                raise DomainError(f"coordinate index {i} out of range for n={n}")
            mask |= 1 << (n - 1 - i)
        return cls(n, mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def bit_positions(self) -> tuple[int, ...]:
        return tuple(b for b in range(self.n) if self.mask >> b & 1)


def _check_same_length(code: BinaryCode, coords: CoordinateSet) -> None:
    if code.n != coords.n:
        raise DomainError(
            f"coordinate set is for n={coords.n} but code has n={code.n}"
        )


def _project(word: int, bits: tuple[int, ...]) -> int:
    pattern = 0
    for j, b in enumerate(bits):
        pattern |= (word >> b & 1) << j
    return pattern


def min_distance(code: BinaryCode) -> int:
    """Smallest Hamming distance between two distinct codewords."""
    if len(code) < 2:
        raise DomainError("minimum distance needs at least two codewords")
    arr = code.as_array
    best = code.n
    for i in range(len(arr) - 1):
        d = int(_popcount_array(arr[i + 1:] ^ arr[i]).min())
        if d < best:
            best = d
            if best == 1:
                break
    return best


def is_shattered(code: BinaryCode, coords: CoordinateSet) -> bool:
    """True iff the projection onto the coordinate set attains all patterns."""
    _check_same_length(code, coords)
    k = coords.size
    need = 1 << k
    if need > len(code):
        return False
    bits = coords.bit_positions()
    seen: set[int] = set()
    for w in code.words:
        seen.add(_project(w, bits))
        if len(seen) == need:
            return True
    return False


def _shattered_projection(arr: np.ndarray, bits: tuple[int, ...]) -> bool:
    k = len(bits)
    proj = np.zeros_like(arr)
    for j, b in enumerate(bits):
        proj |= ((arr >> np.uint64(b)) & np.uint64(1)) << np.uint64(j)
    counts = np.bincount(proj.astype(np.int64), minlength=1 << k)
    return bool((counts[: 1 << k] > 0).all())


def _some_subset_shattered(code: BinaryCode, size: int) -> bool:
    """True iff some coordinate subset of the given size is shattered.

    Subsets are scanned in lexicographic order of their sorted bit tuples,
    so the search is deterministic.
    """
    if size == 0:
        return True
    if (1 << size) > len(code):
        return False
    arr = code.as_array
    for bits in combinations(range(code.n), size):
        if _shattered_projection(arr, bits):
            return True
    return False


def vc_dimension(code: BinaryCode) -> int:
    """Largest size of a shattered coordinate set.

    Ascends by subset size and stops at the first size with no shattered
    set, which is correct because shattering is downward closed.
    """
    if len(code) == 0:
        raise DomainError("VC-dimension needs a nonempty code")
    cap = min(code.n, len(code).bit_length() - 1)
    for size in range(1, cap + 1):
        if not _some_subset_shattered(code, size):
            return size - 1
    return cap


def switches(word: int, n: int) -> int:
    """Number of adjacent coordinate pairs where the word changes value."""
    if not (1 <= n <= 64):
        raise DomainError(f"n must lie in [1, 64], got {n}")
    if not (0 <= word < (1 << n)):
        raise DomainError(f"word {word} out of range for n={n}")
    return ((word ^ (word >> 1)) & ((1 << (n - 1)) - 1)).bit_count()


def constant_weight_set(n: int, k: int) -> BinaryCode:
    """All words of length n and Hamming weight exactly k, ascending."""
    if not (0 <= k <= n):
        raise DomainError(f"weight k must lie in [0, n], got k={k}, n={n}")
    if k == 0:
        return BinaryCode(n, (0,))
    words = []
    v = (1 << k) - 1
    limit = 1 << n
    while v < limit:
        words.append(v)
        # Gosper's hack: next integer with the same popcount.
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r
    return BinaryCode(n, tuple(words))


def switch_bounded_set(n: int, k: int) -> BinaryCode:
    """All words of length n with at most k switches, ascending."""
    if not (0 <= k <= n - 1):
        raise DomainError(f"k must lie in [0, n-1], got k={k}, n={n}")
    arr = np.arange(1 << n, dtype=np.uint64)
    mask = np.uint64((1 << (n - 1)) - 1)
    sw = _popcount_array((arr ^ (arr >> np.uint64(1))) & mask)
    return BinaryCode(n, tuple(int(w) for w in arr[sw <= k]))


def gv_greedy(ambient: BinaryCode, dist: int) -> BinaryCode:
    """Greedy code of minimum distance >= dist inside the ambient set.

    Scans ambient words in ascending order and keeps a word iff it is at
    distance >= dist from every word kept so far. Deterministic.
    """
    if dist < 1:
        raise DomainError(f"dist must be >= 1, got {dist}")
    if dist == 1:
        return ambient
    kept = np.empty(len(ambient), dtype=np.uint64)
    count = 0
    for w in ambient.as_array:
        if count == 0 or int(_popcount_array(kept[:count] ^ w).min()) >= dist:
            kept[count] = w
            count += 1
    return BinaryCode(ambient.n, tuple(int(w) for w in kept[:count]))


def _distance_adjacency(arr: np.ndarray, dist: int) -> list[int]:
    """Bitset adjacency: i ~ j iff the words are at Hamming distance >= dist."""
    m = len(arr)
    adj = [0] * m
    for i in range(m - 1):
        ok = np.nonzero(_popcount_array(arr[i + 1:] ^ arr[i]) >= dist)[0]
        row = 0
        for j in ok:
            row |= 1 << (int(j) + i + 1)
        adj[i] |= row
        for j in ok:
            adj[int(j) + i + 1] |= 1 << i
    return adj


def _greedy_clique_size(adj: list[int]) -> int:
    cand = (1 << len(adj)) - 1
    size = 0
    while cand:
        v = (cand & -cand).bit_length() - 1
        size += 1
        cand &= adj[v]
    return size


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes


def _max_clique(adj: list[int], budget: _Budget, incumbent: int) -> int:
    """Branch and bound with greedy-coloring upper bounds (Tomita style)."""
    best = incumbent
    total = budget.left

    def expand(cand: int, size: int) -> None:
        nonlocal best
        budget.left -= 1
        if budget.left < 0:
            raise BudgetExceededError(total, best)
        order: list[int] = []
        color_of: list[int] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                bit = 1 << v
                avail &= ~bit & ~adj[v]
                rest &= ~bit
                order.append(v)
                color_of.append(color)
        for i in range(len(order) - 1, -1, -1):
            if size + color_of[i] <= best:
                return
            v = order[i]
            if size + 1 > best:
                best = size + 1
            nxt = cand & adj[v]
            if nxt:
                expand(nxt, size + 1)
            cand &= ~(1 << v)

    expand((1 << len(adj)) - 1, 0)
    return best


def _vc_at_most(words: list[int], n: int, cap: int) -> bool:
    """True iff no coordinate subset of size cap+1 is shattered."""
    if cap >= n:
        return True
    need = 1 << (cap + 1)
    if need > len(words):
        return True
    for bits in combinations(range(n), cap + 1):
        seen = set()
        for w in words:
            seen.add(_project(w, bits))
            if len(seen) == need:
                return False
    return True


def _max_code_vc_capped(
    words: tuple[int, ...], n: int, adj: list[int], vc_cap: int, budget: _Budget
) -> int:
    """Exhaustive include/exclude search with distance and VC pruning.

    The VC constraint is downward closed (adding words never lowers the
    VC-dimension), so a violating partial set prunes its whole subtree.
    """
    m = len(words)
    total = budget.left
    cube_cap = sauer_shelah_cap(n, vc_cap)
    best = 0

    def expand(chosen: list[int], cand: int) -> None:
        nonlocal best
        budget.left -= 1
        if budget.left < 0:
            raise BudgetExceededError(total, best)
        if len(chosen) > best:
            best = len(chosen)
        if len(chosen) + cand.bit_count() <= best or len(chosen) >= cube_cap:
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            if len(chosen) + 1 + cand.bit_count() <= best:
                return
            chosen.append(words[v])
            if _vc_at_most(chosen, n, vc_cap):
                expand(chosen, cand & adj[v])
            chosen.pop()

    expand([], (1 << m) - 1)
    return best


def max_code_size_exact(
    ambient: BinaryCode,
    dist: int,
    vc_cap: int | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> int:
    """Exact maximum size of a subset of ambient with minimum distance >=
    dist (a maximum clique of the distance graph), optionally also requiring
    VC-dimension <= vc_cap.

    Deterministic; raises :class:`BudgetExceededError` once the node budget
    is exhausted, carrying the best size found so far. The VC-capped search
    is exhaustive over subsets and practical only for small ambients
    (roughly |ambient| <= 24).
    """
    if dist < 1:
        raise DomainError(f"dist must be >= 1, got {dist}")
    if len(ambient) == 0:
        return 0
    budget = _Budget(node_budget)
    if vc_cap is not None:
        if vc_cap < 0:
            raise DomainError(f"vc_cap must be >= 0, got {vc_cap}")
        if len(ambient) > 64:
            raise DomainError(
                "VC-capped exhaustive search is limited to 64 ambient words"
            )
        adj = _distance_adjacency(ambient.as_array, dist)
        return _max_code_vc_capped(ambient.words, ambient.n, adj, vc_cap, budget)
    if dist == 1:
        return len(ambient)
    adj = _distance_adjacency(ambient.as_array, dist)
    incumbent = _greedy_clique_size(adj)
    return _max_clique(adj, budget, incumbent)


def kk_bound(ambient: BinaryCode, dist: int) -> Fraction:
    """Expurgation lower bound |S|^2 / (4 * |pairs at distance <= dist-1|)
    on the maximum size of a distance-dist code inside S; the pair count is
    over ordered pairs and includes the diagonal. Exact rational.
    """
    if dist < 1:
        raise DomainError(f"dist must be >= 1, got {dist}")
    arr = ambient.as_array
    m = len(arr)
    close = m  # the diagonal
    for i in range(m - 1):
        close += 2 * int((_popcount_array(arr[i + 1:] ^ arr[i]) <= dist - 1).sum())
    return Fraction(m * m, 4 * close)


def sauer_shelah_cap(n: int, vc_dim: int) -> int:
    """Cardinality cap sum_{i=0..D} C(n, i) for codes of VC-dimension D."""
    if not (0 <= vc_dim <= n):
        raise DomainError(f"vc_dim must lie in [0, n], got {vc_dim}, n={n}")
    return sum(math.comb(n, i) for i in range(vc_dim + 1))


def ud_weight(code: BinaryCode, coords: CoordinateSet) -> int:
    """Total weight of the unit-distance graph of the projected code.

    Projection multiplicities weight each projected word; an edge joins
    projected words at Hamming distance 1 and carries the smaller endpoint
    multiplicity. Returns the sum of edge weights.
    """
    _check_same_length(code, coords)
    bits = coords.bit_positions()
    if not bits:
        return 0
    counts: dict[int, int] = {}
    for w in code.words:
        p = _project(w, bits)
        counts[p] = counts.get(p, 0) + 1
    total = 0
    for u, cu in counts.items():
        for j in range(len(bits)):
            v = u ^ (1 << j)
            if v > u and v in counts:
                total += min(cu, counts[v])
    return total
