import random

import pytest

from crag.errors import BitBudgetExceeded, NoMajority, WitnessBudgetExhausted
from crag.witness import (
    QeBounds,
    WitnessMode,
    alpha_sequence,
    majority,
    qe_bounds,
    with_retries,
    witness_sequence,
)


def test_alpha_fixtures():
    assert alpha_sequence(2, 1, 1) == [2, 9]
    assert alpha_sequence(3, 2, 2) == [4, 193, 1340965]
    assert alpha_sequence(1, 3, 5) == [8]
    seq = alpha_sequence(6, 1, 1)
    assert all(a < b for a, b in zip(seq, seq[1:]))
    with pytest.raises(BitBudgetExceeded):
        alpha_sequence(12, 8, 8, bit_limit=1 << 12)


def test_qe_bound_fixtures():
    assert qe_bounds(1, 2, 1, 3, 2, 1, constant=2).logD == 11
    assert qe_bounds(1, 1, 1, 1, 2, 1).logM == 2
    b = qe_bounds(2, 3, 2, 2, 3, 4)
    assert b.constant_policy == "2^w" and b.inputs["blocks"] == [2, 2]


def test_witness_sequences():
    b = QeBounds(logD=0, logL=0, logM=0)
    ws = witness_sequence(1, 2, WitnessMode.PAPER_SLP, bounds=b)
    flat = alpha_sequence(6, 1, 1)
    assert [list(v) for v in ws] == [flat[0:2], flat[2:4], flat[4:6]]
    r1 = witness_sequence(1, 2, WitnessMode.SEEDED_RANDOM, 42)
    r2 = witness_sequence(1, 2, WitnessMode.SEEDED_RANDOM, 42)
    assert r1 == r2 and len(r1) == 3
    assert len(witness_sequence(0, 4, "random", 1)) == 1
    with pytest.raises(ValueError):
        witness_sequence(1, 2, WitnessMode.PAPER_SLP)


def test_majority():
    assert majority([2, 2, 3]) == 2
    assert majority([5]) == 5
    with pytest.raises(NoMajority):
        majority([1, 2, 3])


def test_retries():
    calls = []

    def run(s):
        calls.append(s)
        if s < 12:
            raise NoMajority("not yet")
        return s

    assert with_retries(run, 10) == 12 and calls == [10, 11, 12]
    with pytest.raises(WitnessBudgetExhausted):
        with_retries(lambda s: majority([1, 2]), 0, budget=3)


def test_alpha_nonvanishing_sample():
    rng = random.Random(1)
    alpha = alpha_sequence(3, 4, 3)
    for _ in range(200):
        h = {}
        while not any(h.values()):
            h = {}
            for _ in range(rng.randint(1, 6)):
                e = [0, 0, 0]
                for _ in range(rng.randint(0, 3)):
                    e[rng.randrange(3)] += 1
                h[tuple(e)] = rng.randint(-15, 15)
        val = sum(c * alpha[0] ** e[0] * alpha[1] ** e[1] * alpha[2] ** e[2] for e, c in h.items())
        assert val != 0
