import random
from fractions import Fraction

import pytest
from hypothesis import settings

from tnncells import VarRegistry

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def reg22() -> VarRegistry:
    return VarRegistry.grid(2, 2)


def rand_fraction(rng: random.Random, span: int = 30, allow_zero: bool = True) -> Fraction:
    num = rng.randint(-span, span)
    if not allow_zero and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, span))


def rand_matrix(rng: random.Random, m: int, p: int, span: int = 30) -> list:
    return [[rand_fraction(rng, span) for _ in range(p)] for _ in range(m)]
