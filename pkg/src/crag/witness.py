"""Generic parameter points: the alpha recursion, quantifier-elimination
bound formulas, witness sequences and majority voting."""

from __future__ import annotations

import enum
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BitBudgetExceeded, NoMajority, WitnessBudgetExhausted

DEFAULT_BIT_LIMIT = 1 << 22
DEFAULT_RETRY_BUDGET = 16


def alpha_sequence(k: int, L: int, D: int, bit_limit=DEFAULT_BIT_LIMIT):
    """alpha_1 = 2^L and alpha_j = 1 + alpha_1 (D+1)^(j-1) alpha_(j-1)^D.

    A nonzero integer polynomial of degree <= D with coefficients below
    2^L in absolute value does not vanish at the result."""
    if min(k, L, D) < 1:
        raise ValueError("k, L and D must be positive")
    out = [1 << L]
    total = L + 1
    if total > bit_limit:
        raise BitBudgetExceeded(f"alpha_1 alone needs {total} bits")
    for j in range(2, k + 1):
        prev = out[-1]
        est = L + (j - 1) * math.log2(D + 1) + D * prev.bit_length() + 1
        total += est
        if total > bit_limit:
            raise BitBudgetExceeded(
                f"alpha_{j} needs about {int(est)} bits; limit is {bit_limit} in total")
        out.append(1 + out[0] * (D + 1) ** (j - 1) * prev ** D)
    return out


def ceil_log2(x: int) -> int:
    """Smallest t with 2^t >= x, for a positive integer x."""
    if x < 1:
        raise ValueError("ceil_log2 needs a positive integer")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class QeBounds:
    logD: int
    logL: int
    logM: int
    inputs: dict = field(default_factory=dict)
    constant_policy: str = "2^w"
    constant: int = 2

    @property
    def D(self):
        return 1 << self.logD

    @property
    def L(self):
        return 1 << self.logL

    @property
    def M(self):
        return 1 << self.logM


def qe_bounds(k, n, w, m, delta, ell, *, constant=None, blocks=None) -> QeBounds:
    """Evaluate the degree, bit-size and atom-count bounds of quantifier
    elimination with w blocks of sizes n_i.

    The unspecified 2^O(w) factor defaults to 2^w; block sizes default to
    the even split ceil(n/w).  Ceilings are computed exactly in integers."""
    if min(k, n, w, m, ell) < 1 or delta < 2:
        raise ValueError("inputs must be >= 1 and delta >= 2")
    c = (1 << w) if constant is None else int(constant)
    sizes = list(blocks) if blocks is not None else [-(-n // w)] * w
    prod = math.prod(sizes)
    base = m * delta
    logD = ceil_log2(base ** (c * prod))
    logL = ceil_log2(base ** (c * prod) * (k + ell))
    logM = ceil_log2(base ** (c * k * prod))
    policy = "2^w" if constant is None else f"fixed {c}"
    return QeBounds(logD, logL, logM,
                    inputs=dict(k=k, n=n, w=w, m=m, delta=delta, ell=ell, blocks=sizes),
                    constant_policy=policy, constant=c)


class WitnessMode(enum.Enum):
    PAPER_SLP = "paper"
    SEEDED_RANDOM = "random"


@dataclass(frozen=True)
class WitnessSequence:
    vectors: tuple
    mode: WitnessMode
    seed: int | None
    p: int

    @property
    def k(self):
        return len(self.vectors[0]) if self.vectors else 0

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def witness_sequence(p: int, k: int, mode=WitnessMode.SEEDED_RANDOM, seed=None,
                     bounds: QeBounds | None = None, *, bound=1 << 16,
                     bit_limit=DEFAULT_BIT_LIMIT) -> WitnessSequence:
    """2p+1 parameter vectors of length k."""
    mode = WitnessMode(mode)
    count = 2 * p + 1
    if mode is WitnessMode.PAPER_SLP:
        if bounds is None:
            raise ValueError("the straight-line construction needs QE bounds")
        flat = alpha_sequence(k * count, bounds.L, bounds.D, bit_limit)
        vecs = tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(count))
        return WitnessSequence(vecs, mode, seed, p)
    if seed is None:
        raise ValueError("seeded witnesses need a seed")
    rng = random.Random(f"witness:{seed}:{p}:{k}")
    vecs = tuple(
        tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(k))
        for _ in range(count))
    return WitnessSequence(vecs, mode, seed, p)


def majority(values):
    """The value occurring in more than half of ``values``."""
    values = list(values)
    if not values:
        raise ValueError("majority of an empty list")
    value, hits = Counter(values).most_common(1)[0]
    if 2 * hits > len(values):
        return value
    raise NoMajority(f"no strict majority among {values}")


def retry_seeds(seed: int, budget=DEFAULT_RETRY_BUDGET):
    return range(seed, seed + budget)


def with_retries(run, seed, budget=DEFAULT_RETRY_BUDGET, retry_on=(NoMajority,)):
    """Call run(s) for s = seed, seed+1, ... until it returns."""
    last = None
    for s in retry_seeds(seed, budget):
        try:
            return run(s)
        except retry_on as exc:
            last = exc
    raise WitnessBudgetExhausted(f"no certified result for seeds {seed}..{seed + budget - 1}: {last}")
