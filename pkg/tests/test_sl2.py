"""Tests for the single-block SL(2, Z/nZ) word solver."""

import itertools
import random

import numpy as np
import pytest

from mcgorbits.sl2 import (
    BlockWord, clear_alpha, generate_sl2, pair_content, sl2_group_order,
    solve_pair,
)
from mcgorbits.action import parse_word
from mcgorbits.space import SpaceParams, apply_affine, make_element
from mcgorbits.action import word_action


def brute_force_sl2_count(n):
    """Independent oracle: count 2x2 matrices with det = 1 mod n."""
    return sum(1 for a, b, c, d in itertools.product(range(n), repeat=4)
               if (a * d - b * c) % n == 1 % n)


def test_generate_sl2_small_sizes():
    assert len(generate_sl2(1)) == 1
    assert len(generate_sl2(2)) == 6
    assert len(generate_sl2(3)) == 24


def test_generate_sl2_is_entire_group():
    # closure equals the full det-1 matrix set, counted independently
    for n in (2, 3, 4, 5, 6):
        words = generate_sl2(n)
        assert len(words) == brute_force_sl2_count(n)
        dets = {(a * d - b * c) % n for (a, b, c, d) in words}
        assert dets == {1 % n}


def test_generate_sl2_witness_words():
    for n in (2, 5):
        for key, word in generate_sl2(n).items():
            m = word.matrix(n)
            assert (int(m[0, 0]), int(m[0, 1]), int(m[1, 0]), int(m[1, 1])) == key


def test_order_formula_matches_brute_force():
    for n in range(1, 9):
        assert sl2_group_order(n) == brute_force_sl2_count(n)


def test_generate_sl2_cap():
    with pytest.raises(ValueError):
        generate_sl2(100, cap=10 ** 6)


def test_clear_alpha_examples():
    assert len(clear_alpha((0, 5), 7)) == 0
    # the explicit B A B route sends (1,0) to (0,4) mod 5 [(a,b) -> (b,-a)]
    bab = BlockWord((2, 0, 2))
    assert np.array_equal(bab.matrix(5), np.array([[0, 1], [4, 0]]))
    assert bab.apply((1, 0), 5) == (0, 4)
    # the solver may return any word landing on (0, *)
    w = clear_alpha((1, 0), 5)
    assert w.apply((1, 0), 5)[0] == 0
    w = clear_alpha((2, 2), 4)
    assert w.apply((2, 2), 4) == (0, 2)


def test_clear_alpha_preserves_content():
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randrange(1, 13)
        pair = (rng.randrange(n), rng.randrange(n))
        image = clear_alpha(pair, n).apply(pair, n)
        assert image[0] == 0
        assert pair_content(image, n) == pair_content(pair, n)


def test_solve_pair_identity_and_examples():
    assert len(solve_pair((3, 4), (3, 4), 6)) == 0
    # (0, b-1) -> (b-1, 0) is solvable for every b
    for n in (4, 5, 9):
        for b in range(n):
            w = solve_pair((0, (b - 1) % n), ((b - 1) % n, 0), n)
            assert w is not None
            assert w.apply((0, (b - 1) % n), n) == ((b - 1) % n, 0)
    assert solve_pair((1, 0), (2, 0), 4) is None


def test_solve_pair_iff_content_matches():
    # exhaustive over all pair pairs for n <= 12 (sampled n values)
    for n in (2, 3, 4, 6, 12):
        pairs = [(a, b) for a in range(n) for b in range(n)]
        for u in pairs:
            cu = pair_content(u, n)
            for v in pairs:
                w = solve_pair(u, v, n)
                if cu == pair_content(v, n):
                    assert w is not None and w.apply(u, n) == v
                else:
                    assert w is None


def test_block_word_translation_touches_only_its_block():
    rng = random.Random(29)
    p = SpaceParams(3, 6, strict_euler=False)
    for _ in range(40):
        pair = (rng.randrange(6), rng.randrange(6))
        target = clear_alpha(pair, 6)
        block = rng.randrange(1, 4)
        word = target.on_block(block)
        coords = [rng.randrange(6) for _ in range(6)]
        coords[2 * block - 2], coords[2 * block - 1] = pair
        x = make_element(p, coords)
        y = apply_affine(word_action(word, p), x)
        assert y.block(block) == target.apply(pair, 6)
        for other in range(1, 4):
            if other != block:
                assert y.block(other) == x.block(other)


def test_block_word_round_trips_through_word_grammar():
    w = clear_alpha((1, 1), 5).on_block(2)
    from mcgorbits.action import format_word
    assert parse_word(format_word(w)) == w
