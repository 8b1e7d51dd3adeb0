"""Exact finite-length oracles, cross-checked against brute force."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcbounds.markov_lower import count_switch_bounded
from vcbounds.numeric import DomainError
from vcbounds.oracle import (
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


def brute_vc_dimension(code: BinaryCode) -> int:
    """Independent oracle: check every coordinate subset by direct projection."""
    best = 0
    for size in range(1, code.n + 1):
        for idx in combinations(range(code.n), size):
            bits = [code.n - 1 - i for i in idx]
            seen = {tuple((w >> b) & 1 for b in bits) for w in code.words}
            if len(seen) == 1 << size:
                best = max(best, size)
    return best


def brute_max_code(code: BinaryCode, dist: int, vc_cap=None) -> int:
    """Independent oracle: scan subsets by size, largest first."""
    words = code.words
    for size in range(len(words), 1, -1):
        if vc_cap is not None and size > sauer_shelah_cap(code.n, vc_cap):
            continue
        for subset in combinations(words, size):
            if any(
                bin(u ^ v).count("1") < dist
                for u, v in combinations(subset, 2)
            ):
                continue
            if vc_cap is not None:
                sub = BinaryCode(code.n, subset)
                if brute_vc_dimension(sub) > vc_cap:
                    continue
            return size
    return min(1, len(words))


class TestBinaryCode:
    def test_normalizes(self):
        code = BinaryCode.from_words(3, [5, 1, 5, 0])
        assert code.words == (0, 1, 5)

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            BinaryCode(3, (0, 8))

    def test_rejects_unsorted(self):
        with pytest.raises(DomainError):
            BinaryCode(3, (3, 1))

    def test_from_strings(self):
        code = BinaryCode.from_strings(["000", "111"])
        assert code.n == 3 and code.words == (0, 7)


class TestCoordinateSet:
    def test_from_indices_msb_first(self):
        # Coordinate 0 is the leftmost character of the word string.
        coords = CoordinateSet.from_indices(3, [0])
        assert coords.mask == 0b100

    def test_rejects_bad_mask(self):
        with pytest.raises(DomainError):
            CoordinateSet(3, 8)


class TestMinDistance:
    def test_examples(self):
        assert min_distance(BinaryCode.from_strings(["000", "111"])) == 3
        assert min_distance(BinaryCode.from_strings(["00", "01"])) == 1

    def test_constant_weight_two(self):
        code = constant_weight_set(6, 2)
        assert len(code) == math.comb(6, 2)
        # Oracle: exhaustive pair scan.
        brute = min(
            bin(u ^ v).count("1")
            for u, v in combinations(code.words, 2)
        )
        assert brute == 2
        assert min_distance(code) == 2

    def test_needs_two_words(self):
        with pytest.raises(DomainError):
            min_distance(BinaryCode(4, (3,)))


class TestIsShattered:
    def test_full_cube_shatters_everything(self):
        cube = BinaryCode.full_cube(3)
        for mask in range(1, 8):
            assert is_shattered(cube, CoordinateSet(3, mask))

    def test_repetition_pair(self):
        code = BinaryCode.from_strings(["000", "111"])
        assert not is_shattered(code, CoordinateSet.from_indices(3, [0, 1]))
        assert is_shattered(code, CoordinateSet.from_indices(3, [0]))

    def test_mismatched_length(self):
        with pytest.raises(DomainError):
            is_shattered(BinaryCode.full_cube(3), CoordinateSet(4, 1))


class TestVcDimension:
    def test_examples(self):
        assert vc_dimension(BinaryCode.full_cube(3)) == 3
        assert vc_dimension(BinaryCode(5, (17,))) == 0
        assert vc_dimension(BinaryCode.from_strings(["000", "111"])) == 1

    def test_against_brute_force(self):
        rng = random.Random(123)
        for _ in range(60):
            n = rng.randint(2, 7)
            size = rng.randint(1, 1 << n)
            code = BinaryCode.from_words(n, rng.sample(range(1 << n), size))
            assert vc_dimension(code) == brute_vc_dimension(code)


class TestSwitches:
    @pytest.mark.parametrize(
        "bits,expected", [("0101", 3), ("0000", 0), ("0011", 1), ("1", 0)]
    )
    def test_examples(self, bits, expected):
        assert switches(int(bits, 2), len(bits)) == expected

    @given(st.integers(min_value=1, max_value=30), st.data())
    @settings(max_examples=80, deadline=None)
    def test_matches_string_count(self, n, data):
        word = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
        text = format(word, f"0{n}b")
        expected = sum(1 for a, b in zip(text, text[1:]) if a != b)
        assert switches(word, n) == expected


class TestAmbientSets:
    def test_constant_weight_examples(self):
        assert constant_weight_set(3, 1).words == (1, 2, 4)
        assert constant_weight_set(5, 0).words == (0,)
        assert len(constant_weight_set(6, 3)) == 20

    def test_switch_bounded_examples(self):
        assert switch_bounded_set(3, 0).words == (0, 7)
        assert len(switch_bounded_set(3, 1)) == 6
        assert switch_bounded_set(4, 3).words == tuple(range(16))

    def test_switch_bounded_matches_count(self):
        for n in range(1, 15):
            for k in range(n):
                assert len(switch_bounded_set(n, k)) == count_switch_bounded(n, k)


class TestGvGreedy:
    def test_repetition_code(self):
        assert gv_greedy(BinaryCode.full_cube(3), 3).words == (0, 7)

    def test_distance_one_keeps_everything(self):
        cube = BinaryCode.full_cube(4)
        assert gv_greedy(cube, 1) is cube

    def test_weight_three_words(self):
        code = gv_greedy(constant_weight_set(6, 3), 4)
        assert len(code) >= 2  # GV counting: 20 / 10
        assert min_distance(code) >= 4

    def test_classical_gv_size(self):
        for n in range(2, 11):
            cube = BinaryCode.full_cube(n)
            for dist in range(1, n + 1):
                ball = sum(math.comb(n, i) for i in range(dist))
                assert len(gv_greedy(cube, dist)) >= math.ceil((1 << n) / ball)

    def test_output_satisfies_distance(self):
        rng = random.Random(5)
        for _ in range(20):
            n = rng.randint(2, 10)
            size = rng.randint(2, 1 << n)
            ambient = BinaryCode.from_words(n, rng.sample(range(1 << n), size))
            dist = rng.randint(1, n)
            result = gv_greedy(ambient, dist)
            if len(result) >= 2:
                assert min_distance(result) >= dist


class TestMaxCodeSizeExact:
    def test_tiny_cubes(self):
        assert max_code_size_exact(BinaryCode.full_cube(2), 2) == 2
        assert max_code_size_exact(BinaryCode.full_cube(3), 1) == 8
        assert max_code_size_exact(BinaryCode.full_cube(3), 3) == 2
        assert max_code_size_exact(BinaryCode.full_cube(4), 2) == 8

    def test_against_brute_force(self):
        rng = random.Random(77)
        for _ in range(25):
            n = rng.randint(2, 5)
            size = rng.randint(2, min(1 << n, 12))
            ambient = BinaryCode.from_words(n, rng.sample(range(1 << n), size))
            dist = rng.randint(1, n)
            assert max_code_size_exact(ambient, dist) == brute_max_code(ambient, dist)

    def test_vc_capped_against_brute_force(self):
        cube = BinaryCode.full_cube(4)
        expected = brute_max_code(cube, 2, vc_cap=1)
        assert max_code_size_exact(cube, 2, vc_cap=1) == expected
        # The cap binds: the unconstrained optimum is larger.
        assert expected < max_code_size_exact(cube, 2)

    def test_vc_cap_large_recovers_unconstrained(self):
        cube = BinaryCode.full_cube(3)
        assert max_code_size_exact(cube, 2, vc_cap=3) == max_code_size_exact(cube, 2)

    def test_budget_exhaustion(self):
        rng = random.Random(3)
        ambient = BinaryCode.from_words(10, rng.sample(range(1 << 10), 200))
        with pytest.raises(BudgetExceededError) as excinfo:
            max_code_size_exact(ambient, 3, node_budget=10)
        assert excinfo.value.best_found >= 1


class TestKkBound:
    def test_square_examples(self):
        cube = BinaryCode.full_cube(2)
        assert kk_bound(cube, 1) == Fraction(1)
        assert kk_bound(cube, 2) == Fraction(1, 3)

    def test_degenerate_quarter(self):
        code = BinaryCode.from_strings(["00", "01"])
        # dist - 1 >= n makes every ordered pair close: bound is exactly 1/4.
        assert kk_bound(code, 3) == Fraction(1, 4)


class TestSauerShelahCap:
    def test_examples(self):
        assert sauer_shelah_cap(3, 1) == 4
        assert sauer_shelah_cap(7, 7) == 128
        assert sauer_shelah_cap(10, 3) == 176

    def test_random_codes_respect_cap(self):
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.randint(2, 10)
            size = rng.randint(1, 1 << n)
            code = BinaryCode.from_words(n, rng.sample(range(1 << n), size))
            assert len(code) <= sauer_shelah_cap(n, vc_dimension(code))


class TestUdWeight:
    def test_chain_of_three(self):
        code = BinaryCode.from_strings(["00", "01", "11"])
        assert ud_weight(code, CoordinateSet(2, 0b11)) == 2

    def test_empty_coordinate_set(self):
        code = BinaryCode.from_strings(["00", "01", "11"])
        assert ud_weight(code, CoordinateSet(2, 0)) == 0

    def test_projection_with_multiplicities(self):
        # Words 000, 001, 011, 111 projected onto the last two coordinates
        # give 00, 01, 11, 11; edges 00-01 and 01-11 with weights 1 and 1.
        code = BinaryCode.from_strings(["000", "001", "011", "111"])
        coords = CoordinateSet.from_indices(3, [1, 2])
        assert ud_weight(code, coords) == 2

    def test_haussler_inequality_random(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(2, 9)
            size = rng.randint(1, 1 << n)
            code = BinaryCode.from_words(n, rng.sample(range(1 << n), size))
            cap = 2 * vc_dimension(code) * len(code)
            for _ in range(10):
                coords = CoordinateSet(n, rng.randrange(1 << n))
                assert ud_weight(code, coords) <= cap
