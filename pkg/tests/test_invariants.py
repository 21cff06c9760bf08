"""Tests for the closed-form invariants."""

import itertools
import random

import numpy as np
import pytest

from mcgorbits.action import (
    Generator, GeneratorWord, MultiTwist, apply_word, multi_twist_action,
)
from mcgorbits.invariants import (
    InvariantUndefinedError, beta_sum, block_content, vanishing_number,
    vanishing_number_array,
)
from mcgorbits.space import (
    SpaceParams, apply_affine, decode, decode_array, make_element,
    zero_element,
)


def params(g, n):
    return SpaceParams(g, n, strict_euler=False)


def test_vanishing_number_examples():
    p = params(2, 2)
    assert vanishing_number(make_element(p, [0, 0, 0, 0])) == 0
    assert vanishing_number(make_element(p, [0, 0, 0, 1])) == 1
    p34 = params(3, 4)
    assert vanishing_number(make_element(p34, [2, 0, 1, 1, 0, 2])) == 0
    with pytest.raises(InvariantUndefinedError):
        vanishing_number(zero_element(params(2, 3)))


def test_vanishing_number_array_agrees():
    p = params(3, 4)
    idx = np.arange(0, p.size, 13)
    values = vanishing_number_array(decode_array(idx, p))
    for k in (0, 7, len(idx) - 1):
        assert values[k] == vanishing_number(decode(int(idx[k]), p))


def test_vanishing_number_invariant_under_all_generators():
    # exhaustive over the whole space for small even cases
    for g, n in ((2, 2), (2, 4), (2, 6), (3, 2), (3, 4)):
        p = params(g, n)
        gens = [Generator("A", 1), Generator("B", g), Generator("C", 1),
                Generator("C", g - 1), Generator("D", 1), Generator("s")]
        for i in range(p.size):
            x = decode(i, p)
            v = vanishing_number(x)
            for gen in gens:
                for e in (1, -1):
                    token = Generator(gen.kind, gen.index, e) \
                        if gen.kind != "s" else Generator("s")
                    y = apply_word(GeneratorWord((token,)), x)
                    assert vanishing_number(y) == v, (g, n, i, token)


def test_beta_sum_examples():
    p = params(2, 2)
    assert beta_sum(zero_element(p)) == 0
    assert beta_sum(make_element(p, [0, 1, 0, 1])) == 0
    assert beta_sum(make_element(params(3, 5), [1, 2, 0, 4, 3, 3])) == 4


def test_beta_sum_invariant_under_multi_twists():
    p = params(3, 4)
    twists = [MultiTwist(k) for k in itertools.product((-2, -1, 0, 1, 2), repeat=2)]
    rng = random.Random(9)
    for _ in range(50):
        x = make_element(p, [rng.randrange(4) for _ in range(6)])
        for mt in twists:
            assert beta_sum(apply_affine(multi_twist_action(mt, p), x)) == beta_sum(x)


def test_beta_sum_not_invariant_under_a():
    # A_1 on (1, 0, ...) changes the beta sum; the invariance is C-specific
    p = params(2, 4)
    x = make_element(p, [1, 0, 0, 0])
    y = apply_word(GeneratorWord((Generator("A", 1),)), x)
    assert beta_sum(y) != beta_sum(x)


def test_block_content_examples():
    p = params(2, 4)
    assert block_content(make_element(p, [0, 0, 1, 1]), 1) == 4
    assert block_content(make_element(p, [2, 2, 0, 0]), 1) == 2
    with pytest.raises(ValueError):
        block_content(zero_element(p), 3)


def test_block_content_invariant_under_block_words():
    rng = random.Random(13)
    for n in (2, 3, 4, 6, 8):
        p = params(2, n)
        for _ in range(30):
            x = make_element(p, [rng.randrange(n) for _ in range(4)])
            i = rng.randrange(1, 3)
            tokens = tuple(
                Generator(rng.choice("AB"), i, rng.choice([-2, -1, 1, 2]))
                for _ in range(rng.randrange(1, 6)))
            y = apply_word(GeneratorWord(tokens), x)
            assert block_content(y, i) == block_content(x, i)
