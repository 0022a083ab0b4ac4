"""Closed intervals with exact rational endpoints."""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def _lift(v):
        return v if isinstance(v, Interval) else Interval(v)

    def __add__(self, other):
        o = self._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._lift(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Interval):
            c = Fraction(other)
            a, b = self.lo * c, self.hi * c
            return Interval(min(a, b), max(a, b))
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k == 0:
            return Interval(1)
        a, b = self.lo ** k, self.hi ** k
        if k % 2 == 0:
            if self.lo <= 0 <= self.hi:
                return Interval(0, max(a, b))
            return Interval(min(a, b), max(a, b))
        return Interval(a, b)

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def contains(self, v):
        return self.lo <= v <= self.hi

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def rad(self):
        return (self.hi - self.lo) / 2

    @property
    def width(self):
        return self.hi - self.lo

    def sign(self):
        """+1 or -1 when the sign is certain, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def hull(self, other):
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"


class BoxEvaluator:
    """Evaluate many polynomials over one box, sharing power tables."""

    def __init__(self, box):
        self.box = list(box)
        self._powers = [dict() for _ in self.box]

    def _power(self, i, k):
        got = self._powers[i].get(k)
        if got is None:
            got = self.box[i] ** k
            self._powers[i][k] = got
        return got

    def __call__(self, p):
        if len(self.box) != p.nvars:
            raise DimensionMismatch("box dimension differs from nvars")
        lo = hi = Fraction(0)
        for e, c in p.terms.items():
            t_lo = t_hi = c
            for i, k in enumerate(e):
                if k:
                    iv = self._power(i, k)
                    ps = (t_lo * iv.lo, t_lo * iv.hi, t_hi * iv.lo, t_hi * iv.hi)
                    t_lo, t_hi = min(ps), max(ps)
            lo += t_lo
            hi += t_hi
        return Interval(lo, hi)


def eval_box(p, box):
    """Enclosure of a real SparsePoly over a box of Intervals."""
    return BoxEvaluator(box)(p)
