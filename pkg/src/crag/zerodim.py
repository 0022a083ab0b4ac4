"""Counting and isolating the solutions of zero-dimensional systems.

Univariate systems are handled directly with gcds and Sturm sequences.
Multivariate systems go to msolve.  An independent elimination route
(sheared iterated resultants) is exposed as :func:`eliminant`; the test
suite uses it to cross-check the msolve counts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import flint

from . import msolve, sturm
from .errors import (
    InvariantViolation,
    NotZeroDimensional,
    RefinementLimit,
    ScaleLimit,
    ShearBudgetExhausted,
)
from .intervals import Interval
from .linalg import negative_eigenvalues  # noqa: F401  (part of the oracle API)
from .poly import (
    Field,
    PolySystem,
    SparsePoly,
    imag_part,
    integer_primitive,
    real_part,
)
from .sturm import sturm_count  # noqa: F401


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = _Infinite()


@dataclass(frozen=True)
class CountResult:
    count: object   # int or INFINITE

    @property
    def is_infinite(self):
        return self.count is INFINITE

    def __int__(self):
        if self.is_infinite:
            raise ValueError("infinite count")
        return self.count


@dataclass(frozen=True)
class IsolatingBox:
    intervals: tuple
    certified: bool = True

    def contains(self, point):
        return all(iv.contains(Fraction(v)) for iv, v in zip(self.intervals, point))

    @property
    def width(self):
        return max((iv.width for iv in self.intervals), default=Fraction(0))

    def midpoint(self):
        return [iv.mid for iv in self.intervals]

    def disjoint(self, other):
        return any(a.hi < b.lo or b.hi < a.lo for a, b in zip(self.intervals, other.intervals))


@dataclass(frozen=True)
class Eliminant:
    q: SparsePoly
    shear: tuple


@dataclass
class Limits:
    max_vars: int = 8
    max_degree: int = 32


LIMITS = Limits()


def check_scale(sys: PolySystem, limits=None):
    limits = limits or LIMITS
    if sys.nvars > limits.max_vars:
        raise ScaleLimit(f"{sys.nvars} variables exceed the limit {limits.max_vars}")
    for p in sys.polys:
        if not p.is_zero() and p.degree > limits.max_degree:
            raise ScaleLimit(f"degree {p.degree} exceeds the limit {limits.max_degree}")


def _nonzero(sys):
    return [p for p in sys.polys if not p.is_zero()]


def _univariate_gcd(polys):
    dense = [sturm.dense(p) for p in polys]
    return reduce(sturm.gcd, dense[1:], sturm.primitive(dense[0]))


def _split_gaussian(sys):
    """Encode a system with Gaussian coefficients as a real one in an extra
    variable I with I^2 + 1 = 0.  The encoded system has exactly twice as
    many complex solutions: the solutions of the system and of its
    conjugate, which are in bijection."""
    n = sys.nvars
    i_var = SparsePoly.variable(n + 1, n)
    out = [i_var * i_var + 1]
    for p in sys.polys:
        out.append(real_part(p).extend(n + 1) + i_var * imag_part(p).extend(n + 1))
    return out


def complex_count(sys: PolySystem, limits=None):
    polys = _nonzero(sys)
    if any(p.is_constant() for p in polys):
        return CountResult(0)
    n = sys.nvars
    if n == 0:
        return CountResult(1)
    if not polys:
        return CountResult(INFINITE)
    check_scale(sys, limits)
    if any(p.is_complex for p in polys):
        res = msolve.solve(_split_gaussian(PolySystem(n, polys, Field.COMPLEX)), n + 1,
                           parametrize=True, precision=32)
        if res.status == "empty":
            return CountResult(0)
        if res.status == "positive":
            return CountResult(INFINITE)
        return CountResult(_distinct_roots(res.eliminant) // 2)
    if n == 1:
        g = _univariate_gcd(polys)
        return CountResult(max(sturm.deg(sturm.squarefree_part(g)), 0))
    res = msolve.solve(polys, n, parametrize=True, precision=32)
    if res.status == "empty":
        return CountResult(0)
    if res.status == "positive":
        return CountResult(INFINITE)
    return CountResult(_distinct_roots(res.eliminant))


def _distinct_roots(coeffs):
    a = sturm.trim([Fraction(c) for c in coeffs])
    return sturm.deg(sturm.squarefree_part(a)) if len(a) > 1 else 0


def sos_critical_system(polys, n):
    """{F, dF/dx_1, ..., dF/dx_n} for F the sum of squares of ``polys``.

    Over the reals its solutions are exactly the common real zeros of
    ``polys``, since those are the global minima of F."""
    F = reduce(lambda a, b: a + b, [p * p for p in polys])
    return [F] + [F.diff(i) for i in range(n)]


def critical_system(f: SparsePoly, a):
    """f together with all 2x2 minors of the matrix with rows grad f and x - a.

    Its real solutions are the critical points of the squared distance to
    ``a`` on the regular part of Z(f), together with the singular points."""
    n = f.nvars
    grad = f.gradient()
    xs = SparsePoly.variables(n)
    shifted = [x - Fraction(c) for x, c in zip(xs, a)]
    out = [f]
    for i in range(n):
        for j in range(i + 1, n):
            m = grad[i] * shifted[j] - grad[j] * shifted[i]
            if not m.is_zero():
                out.append(m)
    return out


def saturated(polys, f):
    """Append z * |grad f|^2 - 1 in a fresh last variable z."""
    n = f.nvars
    z = SparsePoly.variable(n + 1, n)
    g2 = reduce(lambda a, b: a + b, [d * d for d in f.gradient()]).extend(n + 1)
    return [p.extend(n + 1) for p in polys] + [z * g2 - 1]


def projection_point(n, seed, j, bound=2 ** 10):
    rng = random.Random(f"point:{seed}:{j}")
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 16)) for _ in range(n)]


def _nearest_point_count(f, seed=0, tries=2):
    """Real count of the distance-critical system of a hypersurface f whose
    real points are all regular; None when no try is zero-dimensional."""
    n = f.nvars
    for j in range(tries):
        a = projection_point(n, seed, j)
        crit = critical_system(f, a)
        res = msolve.solve(crit, n, precision=32)
        if res.status == "positive":
            res = msolve.solve(saturated(crit, f), n + 1, precision=32)
        if res.status == "empty":
            return 0
        if res.status == "finite":
            return len(res.boxes)
    return None


def takes_sign(f: SparsePoly, sigma: int, seed=0):
    """Does f take a value of sign sigma somewhere on R^n?

    Decided through the hypersurface sigma*f*w^2 = 1, which is regular at
    every real point and is nonempty exactly when f does take that sign.
    Returns None if undecided."""
    n = f.nvars
    w = SparsePoly.variable(n + 1, n)
    g = f.extend(n + 1) * w * w * sigma - 1
    got = _nearest_point_count(g, seed)
    return None if got is None else got > 0


def definite_sign(f: SparsePoly, seed=0):
    """+1 if f >= 0 on R^n, -1 if f <= 0, 0 if f takes both signs, None if
    undecided."""
    rng = random.Random(f"signs:{seed}")
    seen = set()
    for _ in range(64):
        x = [Fraction(rng.randint(-64, 64), rng.randint(1, 8)) for _ in range(f.nvars)]
        v = f.evaluate(x)
        if v:
            seen.add(1 if v > 0 else -1)
    if len(seen) == 2:
        return 0
    for sigma in (1, -1):
        if sigma in seen:
            continue
        got = takes_sign(f, sigma, seed)
        if got is None:
            return None
        if got:
            seen.add(sigma)
    if len(seen) == 2:
        return 0
    return seen.pop() if seen else 1


def _check_sos(polys, sos):
    if sos is None:
        return False
    if len(polys) != 1:
        raise InvariantViolation("a sum-of-squares certificate needs a single polynomial")
    total = reduce(lambda a, b: a + b, [q * q for q in sos])
    if total != polys[0]:
        raise InvariantViolation("the sum-of-squares certificate does not match")
    return True


def _real_solve(polys, n, precision_bits, sos=None):
    res = msolve.solve(polys, n, precision=precision_bits)
    if res.status != "positive":
        return res
    if len(polys) == 1:
        F = polys[0]
        s = 1 if _check_sos(polys, sos) else definite_sign(F)
        if s == 0:
            # a sign change of f in n >= 2 variables means Z(f) separates
            # R^n, so the real zero set is infinite
            return msolve.MsolveResult("positive")
        if s is None:
            return res
        if s < 0:
            F = -F
    else:
        F = reduce(lambda a, b: a + b, [p * p for p in polys])
    # F >= 0 now, so its real zeros are critical points of F
    res = msolve.solve([F] + F.gradient(), n, precision=precision_bits)
    if res.status != "positive":
        return res
    for j in range(2):
        res = msolve.solve(critical_system(F, projection_point(n, 0, j)), n,
                           precision=precision_bits)
        if res.status != "positive":
            return res
    return res


def real_count(sys: PolySystem, limits=None, sos=None):
    polys = _nonzero(sys)
    if any(p.is_complex for p in polys):
        polys = [q for p in polys for q in (real_part(p), imag_part(p)) if not q.is_zero()]
    if any(p.is_constant() for p in polys):
        return CountResult(0)
    n = sys.nvars
    if n == 0:
        return CountResult(1)
    if not polys:
        return CountResult(INFINITE)
    check_scale(sys, limits)
    if n == 1:
        g = _univariate_gcd(polys)
        return CountResult(sturm.sturm_count(g))
    res = _real_solve(polys, n, 32, sos)
    if res.status == "empty":
        return CountResult(0)
    if res.status == "positive":
        return CountResult(INFINITE)
    return CountResult(len(res.boxes))


def _check_pieces(polys, pieces):
    if len(polys) != 1:
        raise InvariantViolation("a piece certificate needs a single polynomial")
    prod = reduce(lambda a, b: a * b,
                  [reduce(lambda u, v: u + v, [q * q for q in piece]) for piece in pieces])
    if prod != polys[0] and prod * prod != polys[0]:
        raise InvariantViolation("the pieces do not multiply out to the polynomial")


def count_points(sys: PolySystem, limits=None, sos=None, pieces=None) -> CountResult:
    """Distinct solutions over sys.field, or INFINITE.

    Over the reals, a positive-dimensional complex solution set is reduced
    to a zero-dimensional critical system when the real zeros are known to
    be minima of a nonnegative polynomial; INFINITE is returned when that
    reduction fails or the single equation changes sign (n >= 2).
    ``sos`` optionally lists q_i with sys.polys == [sum q_i^2], which
    certifies nonnegativity without a search.  ``pieces`` lists equation
    systems E_l with sys.polys == [prod_l sum_{q in E_l} q^2] (or its
    square) whose real zero sets are pairwise disjoint, as produced by the
    exclusive sign-pattern gadget; the count is then the sum over pieces."""
    if pieces is not None and sys.field is Field.REAL:
        _check_pieces(_nonzero(sys), pieces)
        total = 0
        for piece in pieces:
            got = real_count(PolySystem(sys.nvars, piece, Field.REAL), limits)
            if got.is_infinite:
                return got
            total += got.count
        return CountResult(total)
    if sys.field is Field.COMPLEX:
        return complex_count(sys, limits)
    return real_count(sys, limits, sos)


def is_zero_dimensional(sys: PolySystem, limits=None) -> bool:
    polys = _nonzero(sys)
    if any(p.is_constant() for p in polys):
        return True
    if sys.nvars == 0:
        return True
    if not polys:
        return False
    return not complex_count(PolySystem(sys.nvars, polys, Field.COMPLEX), limits).is_infinite


def isolate_real_points(sys: PolySystem, precision=Fraction(1, 2 ** 20), *, max_bits=4096,
                        limits=None):
    """Certified disjoint boxes of width <= precision, one per real solution."""
    precision = Fraction(precision)
    polys = _nonzero(sys)
    if any(p.is_complex for p in polys):
        polys = [q for p in polys for q in (real_part(p), imag_part(p)) if not q.is_zero()]
    if any(p.is_constant() for p in polys):
        return []
    n = sys.nvars
    if n == 0:
        return [IsolatingBox(())]
    if not polys:
        raise NotZeroDimensional("no equations")
    check_scale(sys, limits)
    if n == 1:
        g = _univariate_gcd(polys)
        return [IsolatingBox((iv,)) for iv in sturm.isolate_real_roots(g, precision)]
    bits = max(32, math.ceil(-math.log2(precision)) + 8)
    while bits <= max_bits:
        res = _real_solve(polys, n, bits)
        if res.status == "empty":
            return []
        if res.status == "positive":
            raise NotZeroDimensional("the real solution set could not be shown finite")
        boxes = [IsolatingBox(tuple(b)) for b in res.boxes]
        if all(b.width <= precision for b in boxes):
            return boxes
        bits *= 2
    raise RefinementLimit(f"boxes wider than {precision} at {max_bits} bits")


# -- independent elimination route ------------------------------------------

def shear_vector(n, seed, j):
    """Deterministic shear number j for a given seed; entries in [1, 2^(8+j)]."""
    rng = random.Random(f"shear:{seed}:{j}")
    return (1,) + tuple(rng.randint(1, 2 ** (8 + j)) for _ in range(n - 1))


def _fmpq(c):
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _from_fmpq(c):
    return Fraction(int(c.p), int(c.q))


def _to_flint(p, ctx):
    ints = integer_primitive(p)
    return ctx.from_dict({e: v for e, v in ints.items()})


def _eliminate_once(polys, n, lam, rng):
    """Univariate polynomial in t = lam . x vanishing on the solutions."""
    names = tuple(f"v{i}" for i in range(n))
    ctx = flint.fmpq_mpoly_ctx.get(names, "lex")
    gens = ctx.gens()
    # x_0 = t - sum lam_j x_j, with t stored in slot 0
    x0 = gens[0] - sum((_fmpq(lam[j]) * gens[j] for j in range(1, n)), ctx.from_dict({}))
    subs = [x0] + list(gens[1:])
    current = [_to_flint(p, ctx).compose(*subs) for p in polys]
    for var in reversed(range(1, n)):
        name = names[var]
        holding = [q for q in current if q.degrees()[var] == 0]
        moving = [q for q in current if q.degrees()[var] > 0]
        if not moving:
            current = holding
            continue
        if len(moving) == 1:
            # the projection of a single hypersurface is everything, so only
            # the other equations constrain the remaining coordinates
            current = holding
            if not current:
                return None
            continue
        nxt = []
        for _ in range(2):
            a = sum((rng.randint(1, 97) * q for q in moving), ctx.from_dict({}))
            b = sum((rng.randint(1, 97) * q for q in moving), ctx.from_dict({}))
            r = a.resultant(b, name)
            if not r.is_zero():
                nxt.append(r)
        current = holding + nxt
        if not current:
            return None
    out = None
    for q in current:
        d = q.to_dict()
        uni = {}
        for e, c in d.items():
            if any(e[1:]):
                uni = None
                break
            uni[e[0]] = uni.get(e[0], 0) + _from_fmpq(c)
        if uni is None:
            continue
        dense = [Fraction(uni.get(k, 0)) for k in range(max(uni) + 1)] if uni else []
        out = dense if out is None else sturm.gcd(out, dense)
    return out


def eliminant(sys: PolySystem, seed=0, *, shear=None, max_shears=8) -> Eliminant:
    """Square-free univariate polynomial whose roots contain the values of
    t = shear . x on the solutions, computed by iterated resultants.

    Accepts the first shear whose degree agrees with the next one."""
    polys = _nonzero(sys)
    n = sys.nvars
    if any(p.is_complex for p in polys):
        raise NotZeroDimensional("eliminant needs rational coefficients")
    if not polys:
        raise NotZeroDimensional("no equations")
    if any(p.is_constant() for p in polys):
        return Eliminant(SparsePoly.constant(1, 1), (Fraction(1),) * n)
    if n == 1:
        g = sturm.squarefree_part(_univariate_gcd(polys))
        return Eliminant(sturm.sparse(g), (Fraction(1),))

    def attempt(lam, j):
        rng = random.Random(f"combo:{seed}:{j}")
        q = _eliminate_once(polys, n, lam, rng)
        if q is None or not sturm.trim(q):
            return None
        return sturm.squarefree_part(q)

    if shear is not None:
        lam = tuple(Fraction(v) for v in shear)
        if lam[0] == 0:
            raise ValueError("the first shear coordinate must be nonzero")
        scaled = tuple(v / lam[0] for v in lam)
        q = attempt(scaled, 0)
        if q is None:
            raise NotZeroDimensional("resultants vanish identically")
        # t was normalised by lam[0]; rescale the root variable back
        q = [c / lam[0] ** k for k, c in enumerate(q)]
        return Eliminant(sturm.sparse(sturm.primitive(q)), lam)

    prev = None
    zero_hits = 0
    for j in range(max_shears):
        lam = shear_vector(n, seed, j)
        q = attempt(lam, j)
        if q is None:
            zero_hits += 1
            if zero_hits >= 2:
                raise NotZeroDimensional("resultants vanish identically")
            continue
        if prev is not None and sturm.deg(prev[1]) == sturm.deg(q):
            return Eliminant(sturm.sparse(prev[1]), tuple(Fraction(v) for v in prev[0]))
        prev = (lam, q)
    raise ShearBudgetExhausted(f"no stable eliminant after {max_shears} shears")


def project_box(box: IsolatingBox, lam):
    """Enclosure of lam . x over a box."""
    total = Interval(0)
    for iv, c in zip(box.intervals, lam):
        total = total + iv * Fraction(c)
    return total

