"""Exact sparse multivariate polynomials over Q and Q(i).

Variables are positional: a polynomial in ``nvars`` variables maps exponent
tuples of length ``nvars`` to nonzero coefficients.  Coefficients are
``fractions.Fraction`` or :class:`GaussianRational`; a Gaussian value with
zero imaginary part is always collapsed to a ``Fraction`` so that real
polynomials never carry complex wrappers.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    CenterOnVariety,
    DimensionMismatch,
    EmptyInput,
    ExponentTooSmall,
    IndexOutOfRange,
)

Rational = Fraction
NEG_INF = -math.inf


class GaussianRational:
    """A number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return _collapse(GaussianRational(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return _collapse(GaussianRational(self.re - o.re, self.im - o.im))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return _collapse(GaussianRational(self.re * o.re - self.im * o.im,
                                          self.re * o.im + self.im * o.re))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        num = self._lift(num)
        return _collapse(GaussianRational(num.re / den, num.im / den))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        out = GaussianRational(1, 0)
        base = self
        if e < 0:
            base = GaussianRational(1, 0) / base
            e = -e
        for _ in range(e):
            out = GaussianRational._lift(out * base)
        return _collapse(out)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _collapse(z):
    if isinstance(z, GaussianRational) and z.im == 0:
        return z.re
    return z


def coerce_coefficient(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, GaussianRational):
        return _collapse(c)
    if isinstance(c, complex):
        raise TypeError("floating point complex numbers are not exact")
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SparsePoly:
    """Immutable sparse polynomial in ``nvars`` positional variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise DimensionMismatch("negative variable count")
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise DimensionMismatch(
                        f"exponent {exps} has length {len(exps)}, expected {nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = coerce_coefficient(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = coerce_coefficient(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise IndexOutOfRange(f"variable {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def variables(cls, nvars):
        return [cls.variable(nvars, i) for i in range(nvars)]

    @classmethod
    def from_dense_univariate(cls, coeffs):
        """Coefficients listed from degree 0 upwards."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs) if c})

    # -- basic queries --------------------------------------------------
    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    @property
    def is_complex(self):
        return any(isinstance(c, GaussianRational) for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def used_variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _wrap(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        try:
            return SparsePoly.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _collapse(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return SparsePoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            try:
                c = coerce_coefficient(other)
            except TypeError:
                return NotImplemented
            if not c:
                return SparsePoly.zero(self.nvars)
            return SparsePoly._raw(self.nvars,
                                   {e: _collapse(v * c) for e, v in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        out = {e: _collapse(c) for e, c in out.items() if c}
        return SparsePoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = coerce_coefficient(c)
        return self * (Fraction(1) / c if isinstance(c, Fraction) else GaussianRational(1) / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == SparsePoly.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and transforms ---------------------------------------
    def evaluate(self, x):
        return evaluate(self, x)

    def diff(self, i):
        return partial_derivative(self, i)

    def gradient(self):
        return [partial_derivative(self, i) for i in range(self.nvars)]

    def extend(self, nvars, offset=0):
        """Embed into ``nvars`` variables, old variable j becoming offset+j."""
        if offset < 0 or offset + self.nvars > nvars:
            raise DimensionMismatch("cannot embed polynomial")
        pre = (0,) * offset
        post = (0,) * (nvars - offset - self.nvars)
        return SparsePoly._raw(nvars, {pre + e + post: c for e, c in self.terms.items()})

    def compose(self, subs: Sequence["SparsePoly"]):
        """Substitute ``subs[i]`` for variable i."""
        if len(subs) != self.nvars:
            raise DimensionMismatch("substitution length differs from nvars")
        if not subs:
            return self
        m = subs[0].nvars
        cache = [dict() for _ in subs]

        def power(i, k):
            got = cache[i].get(k)
            if got is None:
                got = subs[i] ** k if k <= 1 else power(i, k - 1) * subs[i]
                cache[i][k] = got
            return got

        out = SparsePoly.zero(m)
        for e, c in self.terms.items():
            term = SparsePoly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def top_form(self):
        d = self.degree
        return SparsePoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def homogenize(self, exponent):
        return homogenize(self, exponent)

    def to_str(self, names=None):
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.to_str()})"


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class PolySystem:
    """A finite list of polynomials sharing ``nvars``; ``field`` says where
    solutions are sought."""

    __slots__ = ("nvars", "field", "polys")

    def __init__(self, nvars, polys: Iterable[SparsePoly] = (), field=Field.COMPLEX):
        field = Field(field)
        polys = tuple(polys)
        for p in polys:
            if p.nvars != nvars:
                raise DimensionMismatch(f"polynomial in {p.nvars} variables, system has {nvars}")
            if field is Field.REAL and p.is_complex:
                raise DimensionMismatch("complex coefficients in a real system")
        self.nvars = nvars
        self.field = field
        self.polys = polys

    def with_polys(self, polys):
        return PolySystem(self.nvars, polys, self.field)

    def __eq__(self, other):
        return (isinstance(other, PolySystem) and self.nvars == other.nvars
                and self.field == other.field and self.polys == other.polys)

    def __hash__(self):
        return hash((self.nvars, self.field, self.polys))

    def __repr__(self):
        return f"PolySystem({self.nvars}, {self.field.value}, {list(self.polys)})"


# -- free functions --------------------------------------------------------

def evaluate(p: SparsePoly, x):
    if len(x) != p.nvars:
        raise DimensionMismatch(f"point of length {len(x)} for {p.nvars} variables")
    x = [coerce_coefficient(v) for v in x]
    total = Fraction(0)
    for e, c in p.terms.items():
        term = c
        for xi, k in zip(x, e):
            if k:
                term = term * xi ** k
        total = total + term
    return _collapse(total)


def partial_derivative(p: SparsePoly, var_index: int) -> SparsePoly:
    if not 0 <= var_index < p.nvars:
        raise IndexOutOfRange(f"variable {var_index} out of range for {p.nvars} variables")
    out = {}
    for e, c in p.terms.items():
        k = e[var_index]
        if k:
            ne = e[:var_index] + (k - 1,) + e[var_index + 1:]
            out[ne] = _collapse(c * k)
    return SparsePoly._raw(p.nvars, out)


def homogenize(p: SparsePoly, exponent: int) -> SparsePoly:
    """X_0^E p(X_1/X_0, ..., X_n/X_0) with the new variable X_0 first."""
    if p.is_zero():
        raise ExponentTooSmall("the zero polynomial has degree -inf and is not homogenized")
    if exponent < p.degree:
        raise ExponentTooSmall(f"exponent {exponent} below degree {p.degree}")
    return SparsePoly._raw(p.nvars + 1,
                           {(exponent - sum(e),) + e: c for e, c in p.terms.items()})


def dehomogenize(p: SparsePoly) -> SparsePoly:
    """Set the leading variable X_0 to 1."""
    out = SparsePoly.zero(p.nvars - 1)
    return out + SparsePoly(p.nvars - 1, _merge((e[1:], c) for e, c in p.terms.items()))


def _merge(items):
    out = {}
    for e, c in items:
        out[e] = out.get(e, 0) + c
    return out


def norm_squared(nvars, center=None) -> SparsePoly:
    """||X - center||^2 as a polynomial."""
    xs = SparsePoly.variables(nvars)
    center = center or [0] * nvars
    return reduce(lambda a, b: a + b,
                  [(x - c) ** 2 for x, c in zip(xs, center)],
                  SparsePoly.zero(nvars))


def inversion_transform(p: SparsePoly, center) -> SparsePoly:
    """Image of Z(p) under inversion in the unit sphere around ``center``.

    Uses  f^xi = sum_a c_a s^(d-|a|) prod_i (xi_i s + Y_i)^(a_i)  with
    Y = X - xi and s = |Y|^2, which is the polynomial form of
    |X-xi|^(2d) p(xi + (X-xi)/|X-xi|^2).
    """
    if p.is_complex:
        raise DimensionMismatch("inversion needs real coefficients")
    n = p.nvars
    if len(center) != n:
        raise DimensionMismatch("center has wrong length")
    xi = [Fraction(c) for c in center]
    if evaluate(p, xi) == 0:
        raise CenterOnVariety("the inversion center lies on the zero set")
    d = p.degree
    xs = SparsePoly.variables(n)
    s = norm_squared(n, xi)
    factors = [s * c + (x - c) for x, c in zip(xs, xi)]
    spow = [SparsePoly.constant(n, 1)]
    for _ in range(d):
        spow.append(spow[-1] * s)
    fpow = [[SparsePoly.constant(n, 1)] for _ in range(n)]
    out = SparsePoly.zero(n)
    for e, c in p.terms.items():
        term = spow[d - sum(e)] * c
        for i, k in enumerate(e):
            while len(fpow[i]) <= k:
                fpow[i].append(fpow[i][-1] * factors[i])
            if k:
                term = term * fpow[i][k]
        out = out + term
    return out


def inversion_map(x, center):
    """The point map iota_xi(x) = xi + (x - xi)/|x - xi|^2."""
    y = [Fraction(a) - Fraction(c) for a, c in zip(x, center)]
    s = sum(v * v for v in y)
    if s == 0:
        raise ZeroDivisionError("inversion is undefined at the center")
    return [Fraction(c) + v / s for c, v in zip(center, y)]


class Combine(enum.Enum):
    SUM_OF_SQUARES = "sum_of_squares"
    PRODUCT = "product"


def combine(polys: Sequence[SparsePoly], mode=Combine.SUM_OF_SQUARES) -> SparsePoly:
    polys = list(polys)
    if not polys:
        raise EmptyInput("combine needs at least one polynomial")
    n = polys[0].nvars
    for q in polys:
        if q.nvars != n:
            raise DimensionMismatch("mixed variable counts")
    mode = Combine(mode)
    if mode is Combine.SUM_OF_SQUARES:
        return reduce(lambda a, b: a + b, [q * q for q in polys])
    return reduce(lambda a, b: a * b, polys)


def conjugate(p: SparsePoly) -> SparsePoly:
    return SparsePoly._raw(p.nvars, {
        e: (c.conjugate() if isinstance(c, GaussianRational) else c)
        for e, c in p.terms.items()})


def real_part(p: SparsePoly) -> SparsePoly:
    return SparsePoly(p.nvars, {
        e: (c.re if isinstance(c, GaussianRational) else c) for e, c in p.terms.items()})


def imag_part(p: SparsePoly) -> SparsePoly:
    return SparsePoly(p.nvars, {
        e: c.im for e, c in p.terms.items() if isinstance(c, GaussianRational)})


def integer_primitive(p: SparsePoly):
    """Positive rational multiple of a real ``p`` with coprime integer
    coefficients, as a dict of exponent -> int."""
    if p.is_complex:
        raise DimensionMismatch("integer_primitive needs real coefficients")
    if not p.terms:
        return {}
    den = reduce(math.lcm, (c.denominator for c in p.terms.values()), 1)
    ints = {e: int(c * den) for e, c in p.terms.items()}
    g = reduce(math.gcd, ints.values(), 0)
    return {e: v // g for e, v in ints.items()}
