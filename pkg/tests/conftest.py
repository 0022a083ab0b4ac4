import random
from fractions import Fraction

import pytest

from crag.poly import SparsePoly


@pytest.fixture
def xy():
    return SparsePoly.variables(2)


@pytest.fixture
def xyz():
    return SparsePoly.variables(3)


def random_poly(rng: random.Random, nvars, degree, terms=4, bound=9):
    out = {}
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
    return SparsePoly(nvars, out)


def random_point(rng, n, bound=5):
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)]
