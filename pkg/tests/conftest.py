import random

import pytest

from totally_padic.intpoly import IntPolynomial


def random_monic(rng: random.Random, degree: int, bound: int) -> IntPolynomial:
    return IntPolynomial([rng.randint(-bound, bound) for _ in range(degree)] + [1])


def random_poly(rng: random.Random, degree: int, bound: int) -> IntPolynomial:
    while True:
        lead = rng.randint(-bound, bound)
        if lead:
            return IntPolynomial(
                [rng.randint(-bound, bound) for _ in range(degree)] + [lead]
            )


@pytest.fixture
def rng():
    return random.Random(20240817)
