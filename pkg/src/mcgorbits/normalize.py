"""Reduction of any state to a canonical representative, with certificate.

Every state can be moved by twist words to (0, ..., 0, t) where t = 0
when n is odd and t is the last coordinate's parity when n is even.  The
reduction runs in three stages:

  (i)   per-block A/B words clear every alpha coordinate;
  (ii)  one multi-twist concentrates the remaining betas into the last
        block (the beta sum is what survives);
  (iii) a five-part macro word adds 2 to the final beta; repeating it
        walks the residue to the canonical target.

The emitted word is the concatenation of all stages, applied first token
first, and replaying it on the input must land exactly on the canonical
representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .action import (
    EMPTY_WORD, Generator, GeneratorWord, MultiTwist, apply_token, apply_word,
    simplify_word,
)
from .sl2 import clear_alpha, solve_pair
from .space import GnElement, SpaceParams, make_element


@dataclass(frozen=True)
class CanonicalForm:
    """Representative (0, ..., 0, t); t is the parity class for even n."""

    representative: GnElement
    parity_class: int


@dataclass(frozen=True)
class Certificate:
    """Word mapping `source` to `target`, first token first."""

    word: GeneratorWord
    source: GnElement
    target: GnElement

    def replays(self) -> bool:
        return apply_word(self.word, self.source) == self.target


def _signed_exponent(e: int, n: int) -> int:
    """Residue representative of minimal magnitude, for shorter words."""
    e %= n
    return e - n if e > n // 2 else e


def _append(tokens: list, word: GeneratorWord, coords: list, params: SpaceParams):
    for t in word.tokens:
        tokens.append(t)
        apply_token(t, coords, params)


def normalize(x: GnElement, verify: bool = True):
    """Return (CanonicalForm, Certificate) for a state.

    `verify=False` skips the final independent replay; bulk callers that
    replay certificates themselves use it to avoid doing the work twice.
    """
    params = x.params
    g, n = params.g, params.n
    if n == 1:
        form = CanonicalForm(x, 0)
        return form, Certificate(EMPTY_WORD, x, x)

    tokens: list = []
    coords = list(x.coords)

    # stage (i): clear the alphas block by block
    for i in range(1, g + 1):
        a, b = coords[2 * i - 2], coords[2 * i - 1]
        if a != 0:
            _append(tokens, clear_alpha((a, b), n).on_block(i), coords, params)

    # stage (ii): concentrate the betas into the last block
    exponents = []
    acc = 0
    for i in range(g - 1):
        acc = (acc + coords[2 * i + 1]) % n
        exponents.append(_signed_exponent(-acc, n))
    _append(tokens, MultiTwist(tuple(exponents)).to_word(), coords, params)

    # stage (iii): add 2 to the last beta as many times as needed; the
    # +2 steps reach exactly the residues of the same parity, so the
    # target is 0 for odd n and the stage-(ii) parity for even n
    beta = coords[2 * g - 1]
    target = 0 if n % 2 else beta % 2
    if n % 2:
        steps = ((target - beta) * pow(2, -1, n)) % n
    else:
        steps = ((target - beta) % n) // 2
    for _ in range(steps):
        beta = coords[2 * g - 1]
        macro = _macro_word(beta, g, n)
        _append(tokens, macro, coords, params)

    rep = make_element(params, coords)
    expected = (0,) * (2 * g - 1) + (target,)
    if rep.coords != expected:
        raise AssertionError(
            f"normalization of {x} landed on {rep}, expected {expected}")
    form = CanonicalForm(rep, target if n % 2 == 0 else 0)
    cert = Certificate(simplify_word(GeneratorWord(tuple(tokens))), x, rep)
    if verify and not cert.replays():
        raise AssertionError(f"certificate for {x} does not replay")
    return form, cert


@lru_cache(maxsize=8192)
def _macro_word(beta: int, g: int, n: int) -> GeneratorWord:
    """Word sending (0, ..., 0, beta) to (0, ..., 0, beta + 2).

    Twist the previous handle in, rotate the last block, twist again,
    steer the last block to (0, 1), then unwind the previous handle:

        (0,0,0,b) -> (0,1,0,b-1) -> (0,1,b-1,0) -> (0,b+1,b-1,-b)
                  -> (0,b+1,0,1) -> (0,0,0,b+2)
    """
    c = Generator("C", g - 1)
    w1 = solve_pair((0, beta - 1), (beta - 1, 0), n)
    w2 = solve_pair((beta - 1, -beta), (0, 1), n)
    if w1 is None or w2 is None:
        raise AssertionError(f"macro block moves unsolvable for beta={beta}, n={n}")
    tokens = [c]
    tokens.extend(w1.on_block(g).tokens)
    tokens.append(c)
    tokens.extend(w2.on_block(g).tokens)
    tail = _signed_exponent(-1 - beta, n)
    if tail != 0:
        tokens.append(Generator("C", g - 1, tail))
    return GeneratorWord(tuple(tokens))


def macro_word(beta: int, params: SpaceParams) -> GeneratorWord:
    """Public form of the +2 macro at the given parameters."""
    return _macro_word(beta % params.n, params.g, params.n)


def same_orbit(x: GnElement, y: GnElement):
    """(True, certificate x -> y) when canonical forms agree, else (False, None)."""
    if x.params != y.params:
        raise ValueError("elements live in different spaces")
    form_x, cert_x = normalize(x)
    form_y, cert_y = normalize(y)
    if form_x.representative != form_y.representative:
        return False, None
    word = simplify_word(cert_x.word.then(cert_y.word.inverse()))
    cert = Certificate(word, x, y)
    if not cert.replays():
        raise AssertionError(f"joined certificate {x} -> {y} does not replay")
    return True, cert
