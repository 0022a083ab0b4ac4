"""Dimension and geometric degree of complex affine varieties by generic
affine slicing, with an explicit transversality certificate per slice."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import flint

from . import msolve
from .errors import (
    DegenerateSlice,
    DimensionMismatch,
    NoMajority,
    NonReducedInput,
    NotZeroDimensional,
)
from .poly import Field, PolySystem, SparsePoly, coerce_coefficient, integer_primitive
from .witness import (
    DEFAULT_RETRY_BUDGET,
    WitnessMode,
    WitnessSequence,
    majority,
    with_retries,
    witness_sequence,
)
from .zerodim import INFINITE, _split_gaussian, complex_count


@dataclass(frozen=True)
class AffineSubspace:
    """Zero set of d affine forms a_i0 + sum_j a_ij x_j in C^n, packed
    row by row into ``a`` of length d(n+1)."""

    n: int
    d: int
    a: tuple

    def __post_init__(self):
        if len(self.a) != self.d * (self.n + 1):
            raise DimensionMismatch(f"need {self.d * (self.n + 1)} coefficients, got {len(self.a)}")
        object.__setattr__(self, "a", tuple(coerce_coefficient(v) for v in self.a))
        if _rank([self.row(i)[1:] for i in range(self.d)]) < self.d:
            raise DegenerateSlice("the linear parts are not independent")

    def row(self, i):
        k = self.n + 1
        return self.a[i * k:(i + 1) * k]

    def forms(self):
        out = []
        for i in range(self.d):
            r = self.row(i)
            terms = {(0,) * self.n: r[0]}
            for j in range(self.n):
                e = [0] * self.n
                e[j] = 1
                terms[tuple(e)] = r[j + 1]
            out.append(SparsePoly(self.n, terms))
        return out


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class TransversalityCertificate:
    verdict: bool
    smooth_ok: bool
    infinity_ok: bool
    point_count: int


@dataclass(frozen=True)
class DegreeResult:
    dim: int
    degree: int
    witnesses_used: WitnessSequence | None
    certified: bool
    slices: tuple = ()


def slice(sys: PolySystem, sub: AffineSubspace) -> PolySystem:
    if sys.nvars != sub.n:
        raise DimensionMismatch(f"system in {sys.nvars} variables, subspace in C^{sub.n}")
    return PolySystem(sys.nvars, list(sys.polys) + sub.forms(), Field.COMPLEX)


def _status(polys, n):
    """'empty', 'finite' or 'positive' for the complex zero set."""
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return "empty"
    if not polys:
        return "positive" if n else "finite"
    if any(p.is_complex for p in polys):
        return msolve.solve(_split_gaussian(PolySystem(n, polys)), n + 1, precision=32).status
    return msolve.solve(polys, n, precision=32).status


def _det(M):
    """Determinant of a small square matrix of polynomials (Laplace)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else SparsePoly.zero(M[0][0].nvars)


def jacobian_minors(polys, n):
    rows = [p.gradient() for p in polys]
    out = []
    for idx in itertools.combinations(range(len(rows)), n):
        m = _det([rows[i] for i in idx])
        if not m.is_zero():
            out.append(m)
    return out


# ideal length, polynomial length and coefficient bits for Buchberger
GROEBNER_LIMITS = (64, 2000, 4096)


def closure_at_infinity(sys: PolySystem):
    """Top forms cutting out the closure of Z(sys) on the hyperplane at infinity.

    Leading forms of a degree-compatible Groebner basis do this exactly;
    those of bare generators can have spurious common zeros (the twisted
    cubic is the standard case).  Returns None when the basis is not
    available, either for Gaussian input or because the limits were hit.
    """
    polys = [p for p in sys.polys if not p.is_zero()]
    n = sys.nvars
    if not polys or any(p.is_complex for p in polys):
        return None
    ctx = flint.fmpz_mpoly_ctx.get(tuple(f"x{i}" for i in range(n)), "degrevlex")
    vec = flint.fmpz_mpoly_vec([ctx.from_dict(integer_primitive(p)) for p in polys], ctx)
    gb, done = vec.buchberger_naive(limits=GROEBNER_LIMITS)
    if not done:
        return None
    out = []
    for q in gb:
        poly = SparsePoly(n, {tuple(e): Fraction(int(c)) for e, c in q.to_dict().items()})
        if not poly.is_zero():
            out.append(poly.top_form())
    return out


def transversality_check(sys: PolySystem, sub: AffineSubspace,
                         closure_tops=None) -> TransversalityCertificate:
    """Certify that a slice is transversal and misses infinity.

    ``closure_tops`` comes from :func:`closure_at_infinity`; without it the
    generators' own top forms are used, which is sound but can reject good
    slices.
    """
    sl = slice(sys, sub)
    n = sys.nvars
    count = complex_count(sl).count
    if count is INFINITE:
        raise NotZeroDimensional("the slice meets the variety in infinitely many points")
    polys = [p for p in sl.polys if not p.is_zero()]
    if count == 0:
        smooth_ok = True
    elif len(polys) < n:
        smooth_ok = False
    else:
        minors = jacobian_minors(polys, n)
        smooth_ok = _status(polys + minors, n) == "empty"
    # points at infinity: nonzero common zeros of the leading forms,
    # searched chart by chart
    if closure_tops is None:
        tops = [p.top_form() for p in polys]
    else:
        tops = list(closure_tops) + [q.top_form() for q in sub.forms()]
    xs = SparsePoly.variables(n)
    infinity_ok = all(_status(tops + [xs[j] - 1], n) == "empty" for j in range(n))
    return TransversalityCertificate(smooth_ok and infinity_ok, smooth_ok, infinity_ok, count)


def _nonempty_slice(sys, d, vec):
    try:
        sub = AffineSubspace(sys.nvars, d, vec)
    except DegenerateSlice:
        return None
    return _status(list(sys.polys) + sub.forms(), sys.nvars) != "empty"


def dimension(sys: PolySystem, seed=42, *, p=1, budget=DEFAULT_RETRY_BUDGET) -> int:
    """Dimension of Z(sys) in C^n, -1 for the empty set."""
    n = sys.nvars
    status = _status(list(sys.polys), n)
    if status == "empty":
        return -1
    if status == "finite":
        return 0
    if all(q.is_zero() for q in sys.polys):
        return n

    def run(s):
        for d in range(n - 1, 0, -1):
            ws = witness_sequence(p, d * (n + 1), WitnessMode.SEEDED_RANDOM, s)
            votes = [_nonempty_slice(sys, d, v) for v in ws]
            if majority(votes):
                return d
        raise NoMajority("no slicing level met the variety")

    return with_retries(run, seed, budget)


def geometric_degree(sys: PolySystem, seed=42, *, p=1, mode=WitnessMode.SEEDED_RANDOM,
                     bounds=None, budget=DEFAULT_RETRY_BUDGET) -> DegreeResult:
    n = sys.nvars
    sys = PolySystem(n, sys.polys, Field.COMPLEX)
    d = dimension(sys, seed, p=p, budget=budget)
    if d == -1:
        return DegreeResult(-1, 0, None, True)
    if d == 0:
        return DegreeResult(0, complex_count(sys).count, None, True)
    closure_tops = closure_at_infinity(sys)

    def run(s):
        ws = witness_sequence(p, d * (n + 1), mode, s, bounds)
        values = []
        certs = []
        for vec in ws:
            try:
                cert = transversality_check(sys, AffineSubspace(n, d, vec), closure_tops)
            except (DegenerateSlice, NotZeroDimensional):
                values.append(None)
                certs.append(None)
                continue
            certs.append(cert)
            values.append(cert.point_count if cert.verdict else None)
        if certs and all(c is not None and c.infinity_ok and not c.smooth_ok for c in certs):
            raise NonReducedInput(
                "no slice has full-rank Jacobian; the equations do not generate "
                "a reduced ideal and the radical is not computed")
        try:
            value = majority(values)
        except NoMajority:
            value = None
        if value is None:
            raise NoMajority(f"slice counts {values} have no certified majority")
        return DegreeResult(d, value, ws, True, tuple(certs))

    return with_retries(run, seed, budget)

