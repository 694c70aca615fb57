import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from omegarep.algebra import FIXTURE_NAMES, fixture

FIXTURES = {name: fixture(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def alg():
    return FIXTURES


def cofactor_det(u):
    n = len(u)
    if n == 1:
        return u[0][0]
    total = 0
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in u[1:]]
        total += (-1) ** c * u[0][c] * cofactor_det(minor)
    return total


def random_rational(rng, span=5):
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def random_matrix(rng, rows, cols):
    return [[random_rational(rng) for _ in range(cols)] for _ in range(rows)]


@pytest.fixture
def rng():
    return random.Random(20261015)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
