"""Univariate exact root counting and isolation via Sturm sequences.

Internally univariate polynomials are dense lists of Fractions, lowest
degree first.  Public functions accept univariate SparsePoly objects too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import DimensionMismatch, ZeroPolynomial
from .intervals import Interval
from .poly import SparsePoly


def dense(p):
    if isinstance(p, SparsePoly):
        if p.nvars != 1:
            raise DimensionMismatch("expected a univariate polynomial")
        if p.is_complex:
            raise DimensionMismatch("expected real coefficients")
        if not p.terms:
            return []
        out = [Fraction(0)] * (p.degree + 1)
        for (k,), c in p.terms.items():
            out[k] = c
        return out
    return trim([Fraction(c) for c in p])


def sparse(coeffs):
    return SparsePoly.from_dense_univariate(coeffs)


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def primitive(a):
    """Positive multiple of ``a`` with coprime integer coefficients."""
    a = trim(a)
    if not a:
        return a
    den = reduce(math.lcm, (c.denominator for c in a), 1)
    ints = [int(c * den) for c in a]
    g = reduce(math.gcd, ints, 0)
    return [Fraction(v // g) for v in ints]


def derivative(a):
    return [k * c for k, c in enumerate(a)][1:]


def divmod_poly(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[i + shift] -= c * bc
        r = trim(r)
    return trim(q), r


def rem(a, b):
    return divmod_poly(a, b)[1]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, primitive(rem(a, b))
    if not a:
        return a
    return [c / a[-1] for c in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def squarefree_part(a):
    a = trim(a)
    if deg(a) < 1:
        return a
    g = gcd(a, derivative(a))
    return primitive(divmod_poly(a, g)[0])


def squarefree_factorization(a):
    """Yun's algorithm: list of (factor, multiplicity) with monic factors."""
    a = trim(a)
    if deg(a) < 1:
        return []
    a = [c / a[-1] for c in a]
    da = derivative(a)
    g = gcd(a, da)
    b = divmod_poly(a, g)[0]
    c = divmod_poly(da, g)[0]
    d = [x - y for x, y in _pad(c, derivative(b))]
    out = []
    i = 1
    while deg(b) >= 1:
        d = trim(d)
        f = gcd(b, d) if d else b
        if deg(f) >= 1:
            out.append((f, i))
        b = divmod_poly(b, f)[0]
        c = divmod_poly(d, f)[0] if d else []
        d = [x - y for x, y in _pad(c, derivative(b))]
        i += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [Fraction(0)] * (n - len(a)), list(b) + [Fraction(0)] * (n - len(b)))


def evaluate(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign(v):
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class SturmChain:
    sequence: tuple

    @classmethod
    def of(cls, p):
        a = squarefree_part(dense(p))
        if not a:
            raise ZeroPolynomial("Sturm chain of the zero polynomial")
        seq = [a]
        if deg(a) >= 1:
            seq.append(primitive(derivative(a)))
            while True:
                r = rem(seq[-2], seq[-1])
                if not r:
                    break
                seq.append(primitive([-c for c in r]))
        return cls(tuple(tuple(s) for s in seq))

    def polys(self):
        return [sparse(s) for s in self.sequence]

    def variations(self, x):
        """Sign changes at a rational x, or at +-inf when x is +-math.inf."""
        if x == math.inf:
            signs = [sign(s[-1]) for s in self.sequence]
        elif x == -math.inf:
            signs = [sign(s[-1]) * (-1) ** deg(s) for s in self.sequence]
        else:
            x = Fraction(x)
            signs = [sign(evaluate(s, x)) for s in self.sequence]
        signs = [s for s in signs if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    def count(self, lo=-math.inf, hi=math.inf):
        """Distinct roots in the closed interval [lo, hi]."""
        if lo > hi:
            return 0
        n = self.variations(lo) - self.variations(hi)
        if lo != -math.inf and evaluate(self.sequence[0], Fraction(lo)) == 0:
            n += 1
        return n


def _bounds(interval):
    if interval is None:
        return -math.inf, math.inf
    if isinstance(interval, Interval):
        return interval.lo, interval.hi
    lo, hi = interval
    lo = -math.inf if lo is None else lo
    hi = math.inf if hi is None else hi
    return lo, hi


def sturm_count(p, interval=None) -> int:
    """Number of distinct real roots of ``p`` in a closed interval.

    ``interval`` is None for the whole line, an Interval, or a pair whose
    entries may be None for an infinite end.
    """
    a = dense(p)
    if not a:
        raise ZeroPolynomial("sturm_count of the zero polynomial")
    if deg(a) == 0:
        return 0
    lo, hi = _bounds(interval)
    return SturmChain.of(a).count(lo, hi)


def root_bound(a):
    """Cauchy bound: every root has absolute value below the result."""
    a = trim(a)
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=Fraction(0))


def isolate_real_roots(p, precision=Fraction(1, 2 ** 20)):
    """Disjoint closed intervals of width <= precision, one per distinct
    real root, sorted.  Exact rational roots come back as points."""
    a = squarefree_part(dense(p))
    if not a:
        raise ZeroPolynomial("isolate_real_roots of the zero polynomial")
    if deg(a) == 0:
        return []
    chain = SturmChain.of(a)
    precision = Fraction(precision)
    b = root_bound(a)
    # power of two keeps the midpoints dyadic
    B = Fraction(2) ** max(0, math.ceil(math.log2(b)) + 1)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = chain.count(lo, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= precision:
            out.append(_shrink(a, lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(a, mid) == 0:
            out.append(Interval(mid))
            # open halves around the exact root
            eps = (hi - lo) / 4
            while chain.count(mid - eps, mid + eps) > 1:
                eps /= 2
            stack.append((mid + eps, hi))
            stack.append((lo, mid - eps))
            continue
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda iv: iv.lo)
    return out


def _shrink(a, lo, hi):
    if evaluate(a, lo) == 0:
        return Interval(lo)
    if evaluate(a, hi) == 0:
        return Interval(hi)
    return Interval(lo, hi)


def refine_root(p, iv: Interval, precision):
    """Bisect an isolating interval of a square-free ``p`` to width <= precision."""
    a = dense(p)
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    slo = sign(evaluate(a, lo))
    while hi - lo > precision:
        mid = (lo + hi) / 2
        sm = sign(evaluate(a, mid))
        if sm == 0:
            return Interval(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)
