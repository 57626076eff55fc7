import random
from fractions import Fraction

import pytest

from fusion_sos import ModelParams


def rand_rat(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_rat_noninteger(rng: random.Random, span: int = 9) -> Fraction:
    while True:
        x = Fraction(rng.randint(-4 * span, 4 * span), rng.randint(2, span))
        if x.denominator != 1:
            return x


def spectral_pair(rng: random.Random) -> tuple[Fraction, Fraction]:
    """A pair (u, v) with u, v, and u - v all non-integer.

    Fusion normalization degenerates at integer spectral values, so sampled
    identity checks stay away from those isolated points.
    """
    while True:
        u = rand_rat_noninteger(rng)
        v = rand_rat_noninteger(rng)
        if (u - v).denominator != 1:
            return u, v


def valid_quads(n: int, m: int, span: int):
    """All height quadruples (a, b, b', c) with |a|, |c| <= span and full adjacency."""
    for a in range(-span, span + 1):
        for b in range(a - n, a + n + 1, 2):
            for c in range(b - m, b + m + 1, 2):
                if abs(c) > span:
                    continue
                for bp in range(c - n, c + n + 1, 2):
                    if abs(bp - a) <= m and (bp - a + m) % 2 == 0:
                        yield a, b, bp, c


@pytest.fixture
def params() -> ModelParams:
    # w = 1/2
    return ModelParams(Fraction(3, 2), Fraction(1, 3), Fraction(2, 3))


@pytest.fixture
def params_unit() -> ModelParams:
    # alpha = 1, w = 1/2
    return ModelParams(1, 0, 1)
