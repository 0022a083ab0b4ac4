"""Seeded instance generators shared by the acceptance and module tests."""

import random
from fractions import Fraction

from crag.euler import BasicBlock
from crag.gadgets import Rel, SignClause
from crag.poly import SparsePoly

(T,) = SparsePoly.variables(1)


def rand_univariate(rng, lo=1, hi=3, bound=4):
    d = rng.randint(lo, hi)
    # products of rational linear factors and an occasional irreducible quadratic
    p = SparsePoly.constant(1, rng.choice([1, -1, 2]))
    k = 0
    while k < d:
        if d - k >= 2 and rng.random() < 0.25:
            p = p * (T * T + rng.randint(1, 3))
            k += 2
        else:
            p = p * (T - Fraction(rng.randint(-bound, bound), rng.randint(1, 2)))
            k += 1
    return p


def sign_corpus(size=200, seed=2024):
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        g = rand_univariate(rng, 1, 3)
        atoms = [(rand_univariate(rng, 1, 2), rng.choice([Rel.LT, Rel.EQ, Rel.GT]))
                 for _ in range(rng.randint(0, 2))]
        out.append(SignClause(g, Rel.EQ, atoms))
    return out


def block_corpus(size=50, seed=7):
    """Univariate basic blocks with at most one strict inequality."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        if rng.random() < 0.5:
            out.append(BasicBlock(rand_univariate(rng, 1, 3)))
        else:
            a = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
            b = a + rng.randint(1, 3)
            out.append(BasicBlock(SparsePoly.zero(1), [(T - a) * (b - T)]))
    return out


def disjoint_pairs(size=50, seed=11):
    """Pairs of univariate blocks supported in [-10, -1] and [1, 10]."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        blocks = []
        for side in (-1, 1):
            kind = rng.choice(["points", "interval"])
            if kind == "points":
                k = rng.randint(1, 3)
                roots = rng.sample(range(1, 11), k)
                g = SparsePoly.constant(1, 1)
                for r in roots:
                    g = g * (T - side * r)
                blocks.append(BasicBlock(g))
            else:
                a = rng.randint(1, 8)
                lo, hi = sorted([side * a, side * (a + rng.randint(1, 2))])
                blocks.append(BasicBlock(SparsePoly.zero(1), [(T - lo) * (hi - T)]))
        out.append(tuple(blocks))
    return out
