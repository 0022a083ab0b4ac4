"""Euler characteristics of real semialgebraic sets.

The smooth case counts critical points of the squared distance to a
generic point, weighted by (-1)^index.  Basic sets are reduced to a smooth
hypersurface {H = 1} (a Milnor fibre), unions use inclusion-exclusion on
the modified Euler characteristic chi*, nonstrict inequalities are
removed with a square slack variable, and closed sets are truncated by
growing balls.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

from . import msolve
from .errors import (
    BlockBudget,
    ChartInvalid,
    DimensionMismatch,
    InvariantViolation,
    MorseBudgetExhausted,
    NoMajority,
    NonIntegralChi,
    NoStabilization,
    NotRegular,
)
from .intervals import BoxEvaluator, Interval
from .linalg import eigen_gap_clear, inf_norm, negative_eigenvalues
from .poly import Field, PolySystem, SparsePoly, homogenize, norm_squared
from .witness import DEFAULT_RETRY_BUDGET, majority, retry_seeds
from .zerodim import (
    INFINITE,
    IsolatingBox,
    count_points,
    critical_system,
    projection_point,
    saturated,
)

DEFAULT_RADII = (2, 4, 16, 256, 1 << 16)


# -- domain types -------------------------------------------------------------

@dataclass(frozen=True)
class BasicBlock:
    """{g = 0, f_1 > 0, ..., h_1 >= 0, ...}; g may be the zero polynomial."""

    g: SparsePoly
    strict: tuple = ()
    nonstrict: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "strict", tuple(self.strict))
        object.__setattr__(self, "nonstrict", tuple(self.nonstrict))
        n = self.g.nvars
        for p in self.strict + self.nonstrict:
            if p.nvars != n:
                raise DimensionMismatch("block polynomials disagree on nvars")
            if p.is_complex:
                raise DimensionMismatch("semialgebraic data must be real")
        if self.g.is_complex:
            raise DimensionMismatch("semialgebraic data must be real")

    @property
    def nvars(self):
        return self.g.nvars

    def contains(self, x):
        return (self.g.evaluate(x) == 0
                and all(f.evaluate(x) > 0 for f in self.strict)
                and all(h.evaluate(x) >= 0 for h in self.nonstrict))


@dataclass(frozen=True)
class SemialgebraicSet:
    n: int
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise InvariantViolation("a set needs at least one block")
        for b in self.blocks:
            if b.nvars != self.n:
                raise DimensionMismatch("block arity differs from the ambient dimension")

    def contains(self, x):
        return any(b.contains(x) for b in self.blocks)


@dataclass(frozen=True)
class MilnorFibre:
    H: SparsePoly
    fibre_poly: SparsePoly
    n: int
    r: int
    delta: int
    G: tuple
    # disjoint pieces of Z(H - 1) with multiplicities, see milnor_fibre
    components: tuple


@dataclass(frozen=True)
class MorseReport:
    points: tuple
    indices: tuple
    histogram: tuple
    chi: int
    projection_point: tuple
    votes: tuple = ()

    def __post_init__(self):
        if sum(self.histogram) != len(self.points):
            raise InvariantViolation("histogram total differs from the number of points")
        if self.chi != sum((-1) ** k * c for k, c in enumerate(self.histogram)):
            raise InvariantViolation("chi disagrees with the histogram")


# -- Hessian of the distance function ------------------------------------------

class _Derivatives:
    def __init__(self, f: SparsePoly):
        self.f = f
        self.n = f.nvars
        self.grad = f.gradient()
        self.hess = {}
        for i in range(self.n):
            for j in range(i, self.n):
                self.hess[i, j] = self.grad[i].diff(j)

    def second(self, i, j):
        return self.hess[min(i, j), max(i, j)]


def _chart_hessian(fi, fij, x, a, k):
    """Hessian of L_a in the chart where x_k is solved for.

    With v_i = e_i - (f_i/f_k) e_k spanning the tangent space and the
    multiplier mu = 2 (x_k - a_k) / f_k,
        H_ij = 2 v_i.v_j - mu v_i^T (Hess f) v_j,
    which is the second derivative of L_a along the local graph
    parametrisation.  Works on Fractions and on Intervals alike."""
    n = len(fi)
    fk = fi[k]
    mu = (x[k] - a[k]) * 2 / fk
    others = [i for i in range(n) if i != k]
    ratio = {i: fi[i] / fk for i in others}
    H = [[None] * len(others) for _ in others]
    for p, i in enumerate(others):
        for q in range(p, len(others)):
            j = others[q]
            dot = ratio[i] * ratio[j] + (1 if i == j else 0)
            curv = (fij(i, j) - fij(i, k) * ratio[j] - fij(j, k) * ratio[i]
                    + fij(k, k) * ratio[i] * ratio[j])
            H[p][q] = H[q][p] = dot * 2 - mu * curv
    return H


def hessian_matrix(f: SparsePoly, a, x, chart: int, derivs=None):
    """Hessian of |x - a|^2 on Z(f) at x, in the chart solving for x_chart.

    ``x`` is an exact point (Fraction entries, exact matrix returned) or an
    IsolatingBox / sequence of Intervals (interval matrix returned)."""
    derivs = derivs or _Derivatives(f)
    a = [Fraction(v) for v in a]
    if isinstance(x, IsolatingBox):
        x = list(x.intervals)
    if x and isinstance(x[0], Interval):
        ev = BoxEvaluator(x)
        fi = [ev(g) for g in derivs.grad]
        if fi[chart].contains_zero():
            raise ChartInvalid(f"d f / d x_{chart} is not certified nonzero on the box")
        cache = {}

        def fij(i, j):
            key = (min(i, j), max(i, j))
            if key not in cache:
                cache[key] = ev(derivs.second(i, j))
            return cache[key]
    else:
        x = [Fraction(v) for v in x]
        fi = [g.evaluate(x) for g in derivs.grad]
        if fi[chart] == 0:
            raise ChartInvalid(f"d f / d x_{chart} vanishes at the point")

        def fij(i, j):
            return derivs.second(i, j).evaluate(x)
    return _chart_hessian(fi, fij, x, a, chart)


def certified_index(f, a, box, derivs=None):
    """Morse index at the critical point inside ``box``, or None when the
    interval data do not certify a nondegenerate Hessian."""
    derivs = derivs or _Derivatives(f)
    ivs = list(box.intervals) if isinstance(box, IsolatingBox) else list(box)
    ev = BoxEvaluator(ivs)
    grads = [ev(g) for g in derivs.grad]
    charts = [k for k in range(len(grads)) if not grads[k].contains_zero()]
    if not charts:
        return None
    charts.sort(key=lambda k: -min(abs(grads[k].lo), abs(grads[k].hi)))
    H = hessian_matrix(f, a, ivs, charts[0], derivs)
    if not H:
        return 0
    mid = [[v.mid for v in row] for row in H]
    rad = [[v.rad for v in row] for row in H]
    eps = inf_norm(rad)
    # eigenvalues of every symmetric matrix in the box lie within eps of
    # those of the midpoint matrix (Weyl)
    if not eigen_gap_clear(mid, eps):
        return None
    return negative_eigenvalues(mid)


# -- smooth hypersurfaces -----------------------------------------------------

def _morse_attempt(f, a, derivs, bits, refine_depth):
    n = f.nvars
    crit = critical_system(f, a)
    system, nv = crit, n
    res = msolve.solve(system, nv, precision=bits)
    if res.status == "positive":
        system, nv = saturated(crit, f), n + 1
        res = msolve.solve(system, nv, precision=bits)
    if res.status == "positive":
        return None, "critical set not finite"
    for _ in range(refine_depth + 1):
        boxes = [IsolatingBox(tuple(b[:n])) for b in res.boxes]
        indices = [certified_index(f, a, b, derivs) for b in boxes]
        if all(i is not None for i in indices):
            hist = [0] * max(n, 1)
            for i in indices:
                hist[i] += 1
            chi = sum((-1) ** k * c for k, c in enumerate(hist))
            return MorseReport(tuple(boxes), tuple(indices), tuple(hist), chi,
                               tuple(a)), None
        bits *= 2
        res = msolve.solve(system, nv, precision=bits)
    return None, "index not certified after refinement"


def is_regular(f: SparsePoly) -> bool:
    """No real point with f = 0 and grad f = 0."""
    got = count_points(PolySystem(f.nvars, [f] + f.gradient(), Field.REAL))
    return got.count == 0


@lru_cache(maxsize=256)
def chi_smooth_hypersurface(f: SparsePoly, seed=42, *, check_regular=True, p=1,
                            budget=DEFAULT_RETRY_BUDGET, refine_depth=4,
                            bits=128) -> MorseReport:
    """Euler characteristic of the smooth real hypersurface Z(f)."""
    if f.is_complex:
        raise DimensionMismatch("real coefficients required")
    if check_regular and not is_regular(f):
        raise NotRegular("Z(f) has real singular points or they could not be excluded")
    n = f.nvars
    derivs = _Derivatives(f)
    reasons = []
    for s in retry_seeds(seed, budget):
        reports = []
        tally = Counter()
        for j in range(2 * p + 1):
            a = projection_point(n, s, j)
            rep, why = _morse_attempt(f, a, derivs, bits, refine_depth)
            reports.append(rep)
            if rep is None:
                reasons.append(why)
            else:
                tally[rep.chi] += 1
                if tally[rep.chi] > p:
                    break
        chis = [r.chi if r else None for r in reports]
        chis += [None] * (2 * p + 1 - len(chis))
        try:
            value = majority(chis)
        except NoMajority:
            continue
        if value is None:
            continue
        best = next(r for r in reports if r is not None and r.chi == value)
        return MorseReport(best.points, best.indices, best.histogram, best.chi,
                           best.projection_point, tuple(chis))
    raise MorseBudgetExhausted(f"no certified Morse majority for seeds {seed}.."
                               f"{seed + budget - 1}: {sorted(set(reasons))}")


# -- Milnor fibres --------------------------------------------------------------

def _degree(p):
    return 0 if p.is_zero() else p.degree


def milnor_fibre(block: BasicBlock) -> MilnorFibre:
    """Phi = Z(H - 1) for H = sum_i G_i^2, where G_0 homogenises g and G_i
    homogenises X_(n+i)^2 f_i - 1, all with exponent delta + 3.

    When only one G is nonzero, H - 1 = (G - 1)(G + 1) and Phi is the
    disjoint union of the smooth hypersurfaces G = 1 and G = -1.  For odd
    degree, x -> -x swaps them, so one copy is counted twice."""
    if block.nonstrict:
        raise InvariantViolation("eliminate nonstrict inequalities first")
    n = block.nvars
    r = len(block.strict)
    N = n + r
    delta = max([2, _degree(block.g)] + [_degree(f) for f in block.strict])
    xs = SparsePoly.variables(N)
    gs = [block.g.extend(N)]
    for i, f in enumerate(block.strict):
        gs.append(xs[n + i] * xs[n + i] * f.extend(N) - 1)
    G = tuple(homogenize(q, delta + 3) for q in gs if not q.is_zero())
    H = reduce(lambda u, v: u + v, [q * q for q in G])
    one = SparsePoly.constant(N + 1, 1)
    if len(G) == 1:
        if (delta + 3) % 2:
            comps = ((G[0] - one, 2),)
        else:
            comps = ((G[0] - one, 1), (G[0] + one, 1))
    else:
        comps = ((H - one, 1),)
    return MilnorFibre(H, H - one, n, r, delta, G, comps)


def chi_fibre(mf: MilnorFibre, seed=42, **kw):
    """chi(Phi) and the Morse reports of its pieces.  Every piece is
    regular by the Euler identity, so the regularity check is skipped."""
    total = 0
    reports = []
    for poly, weight in mf.components:
        rep = chi_smooth_hypersurface(poly, seed, check_regular=False, **kw)
        reports.append(rep)
        total += weight * rep.chi
    return total, tuple(reports)


# -- emptiness --------------------------------------------------------------------

def _candidate_points(n, seed):
    vals = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
            Fraction(1, 2), Fraction(-1, 2)]
    if 7 ** n <= 2500:
        yield from itertools.product(vals, repeat=n)
    elif 3 ** n <= 2500:
        yield from itertools.product(vals[:3], repeat=n)
    rng = random.Random(f"sample:{seed}")
    for _ in range(64):
        yield [Fraction(rng.randint(-64, 64), rng.randint(1, 8)) for _ in range(n)]


def conjunction_system(block: BasicBlock):
    """Equations whose real zero set projects onto the block: g, h_j - w_j^2
    and f_i y_i^2 - 1, in n + (#nonstrict) + (#strict) variables."""
    n = block.nvars
    s, r = len(block.nonstrict), len(block.strict)
    N = n + s + r
    xs = SparsePoly.variables(N)
    polys = []
    if not block.g.is_zero():
        polys.append(block.g.extend(N))
    for j, h in enumerate(block.nonstrict):
        polys.append(h.extend(N) - xs[n + j] * xs[n + j])
    for i, f in enumerate(block.strict):
        y = xs[n + s + i]
        polys.append(f.extend(N) * y * y - 1)
    return polys, N


def _rank_minors(polys, N, a):
    """All (m+1)-minors of the matrix with rows grad p_1..grad p_m, x - a."""
    from .degree import _det
    xs = SparsePoly.variables(N)
    rows = [p.gradient() for p in polys] + [[x - Fraction(c) for x, c in zip(xs, a)]]
    m1 = len(rows)
    out = []
    for cols in itertools.combinations(range(N), m1):
        d = _det([[row[c] for c in cols] for row in rows])
        if not d.is_zero():
            out.append(d)
    return out


def _max_minors(polys, N):
    from .degree import _det
    rows = [p.gradient() for p in polys]
    out = []
    for cols in itertools.combinations(range(N), len(rows)):
        d = _det([[row[c] for c in cols] for row in rows])
        if not d.is_zero():
            out.append(d)
    return out


def _nearest_point_decision(polys, N, seed, regular):
    """Empty/nonempty via the points of Z(polys) nearest to a generic a.

    When Z(polys) is known to be smooth of codimension len(polys), the
    rank-deficient locus of the Jacobian is saturated away."""
    if len(polys) >= N:
        return None
    for j in range(2):
        a = projection_point(N, seed, j)
        system = polys + _rank_minors(polys, N, a)
        res = msolve.solve(system, N, precision=32)
        if res.status == "positive" and regular:
            z = SparsePoly.variable(N + 1, N)
            s2 = reduce(lambda u, v: u + v, [m * m for m in _max_minors(polys, N)])
            res = msolve.solve([q.extend(N + 1) for q in system] + [z * s2.extend(N + 1) - 1],
                               N + 1, precision=32)
        if res.status == "empty":
            return True
        if res.status == "finite":
            return len(res.boxes) == 0
    return None


@lru_cache(maxsize=1024)
def decide_empty(block: BasicBlock, seed=42):
    """True if the block is empty, False if not, None if undecided."""
    n = block.nvars
    for x in _candidate_points(n, seed):
        if block.contains(x):
            return False
    polys, N = conjunction_system(block)
    if not polys:
        return False
    got = count_points(PolySystem(N, polys, Field.REAL))
    if got.count is not INFINITE:
        return got.count == 0
    # equations of the form f y^2 - 1 are regular at every real point
    regular = block.g.is_zero() and not block.nonstrict
    return _nearest_point_decision(polys, N, seed, regular)


# -- chi* of basic sets and unions ----------------------------------------------------

@dataclass(frozen=True)
class BlockReport:
    chi_star: int
    empty: bool | None
    chi_phi: int | None = None
    fibre: MilnorFibre | None = None
    reports: tuple = ()


@lru_cache(maxsize=1024)
def chi_star_basic_report(block: BasicBlock, seed=42, *, skip_empty_check=False,
                          refine_depth=4) -> BlockReport:
    if block.nonstrict:
        raise InvariantViolation("eliminate nonstrict inequalities first")
    empty = None if skip_empty_check else decide_empty(block, seed)
    if empty:
        return BlockReport(0, True)
    mf = milnor_fibre(block)
    chi_phi, reports = chi_fibre(mf, seed, refine_depth=refine_depth)
    num = (2 - chi_phi) * (-1) ** (mf.n + mf.r)
    den = 2 ** (mf.r + 1)
    if num % den:
        raise NonIntegralChi(f"2 - chi(Phi) = {2 - chi_phi} is not divisible by {den}")
    return BlockReport(num // den, empty, chi_phi, mf, reports)


def chi_star_basic(block: BasicBlock, seed=42, *, refine_depth=4) -> int:
    return chi_star_basic_report(block, seed, refine_depth=refine_depth).chi_star


@dataclass(frozen=True)
class NonstrictSplit:
    lifted: BasicBlock      # h >= 0 replaced by h - y^2 = 0 in a new variable
    boundary: BasicBlock    # h >= 0 replaced by h = 0

    @staticmethod
    def combine(chi_lifted, chi_boundary):
        total = chi_lifted + chi_boundary
        if total % 2:
            raise NonIntegralChi("odd sum in the nonstrict recursion")
        return total // 2


def elim_nonstrict(block: BasicBlock) -> NonstrictSplit:
    """chi*(S) = (chi*(lifted) + chi*(boundary)) / 2 for the first h >= 0:
    the lifted set covers {h > 0} twice and {h = 0} once."""
    if not block.nonstrict:
        raise InvariantViolation("no nonstrict inequality to eliminate")
    h, rest = block.nonstrict[0], block.nonstrict[1:]
    n = block.nvars
    y = SparsePoly.variable(n + 1, n)
    eq = h.extend(n + 1) - y * y
    g1 = eq if block.g.is_zero() else block.g.extend(n + 1) ** 2 + eq * eq
    lifted = BasicBlock(g1, [f.extend(n + 1) for f in block.strict],
                        [q.extend(n + 1) for q in rest])
    g0 = h if block.g.is_zero() else block.g ** 2 + h * h
    boundary = BasicBlock(g0, block.strict, rest)
    return NonstrictSplit(lifted, boundary)


@lru_cache(maxsize=1024)
def chi_star_block(block: BasicBlock, seed=42, *, refine_depth=4) -> int:
    """chi* of a basic block that may carry nonstrict inequalities."""
    if not block.nonstrict:
        return chi_star_basic(block, seed, refine_depth=refine_depth)
    if decide_empty(block, seed):
        return 0
    split = elim_nonstrict(block)
    return NonstrictSplit.combine(chi_star_block(split.lifted, seed, refine_depth=refine_depth),
                                  chi_star_block(split.boundary, seed, refine_depth=refine_depth))


def intersect_blocks(blocks):
    blocks = list(blocks)
    if len(blocks) == 1:
        return blocks[0]
    gs = [b.g for b in blocks if not b.g.is_zero()]
    if not gs:
        g = blocks[0].g
    elif len(gs) == 1:
        g = gs[0]
    else:
        g = reduce(lambda u, v: u + v, [q * q for q in gs])
    strict = [f for b in blocks for f in b.strict]
    nonstrict = [h for b in blocks for h in b.nonstrict]
    return BasicBlock(g, strict, nonstrict)


@dataclass(frozen=True)
class ChiStarResult:
    value: int
    empty: bool | None
    terms: tuple = field(default=())


def chi_star(sset: SemialgebraicSet, seed=42, *, block_limit=4, refine_depth=4) -> ChiStarResult:
    """chi* of a union by inclusion-exclusion over nonempty index sets."""
    t = len(sset.blocks)
    if t > block_limit:
        raise BlockBudget(f"{t} blocks exceed the limit {block_limit}")
    empties = set()
    terms = []
    total = 0
    for size in range(1, t + 1):
        for I in itertools.combinations(range(t), size):
            if any(set(J) <= set(I) for J in empties):
                terms.append((I, 0))
                continue
            block = intersect_blocks(sset.blocks[i] for i in I)
            if decide_empty(block, seed):
                empties.add(I)
                terms.append((I, 0))
                continue
            v = chi_star_block(block, seed, refine_depth=refine_depth)
            terms.append((I, v))
            total += (-1) ** (size - 1) * v
    flags = [decide_empty(b, seed) for b in sset.blocks]
    if all(f is True for f in flags):
        empty = True
    elif any(f is False for f in flags):
        empty = False
    else:
        empty = None
    return ChiStarResult(total, empty, tuple(terms))


# -- closed sets -----------------------------------------------------------------

@dataclass(frozen=True)
class ClosedEulerResult:
    value: int
    radius: object
    heuristic: bool
    history: tuple


def truncate(sset: SemialgebraicSet, radius) -> SemialgebraicSet:
    ball = SparsePoly.constant(sset.n, Fraction(radius) ** 2) - norm_squared(sset.n)
    return SemialgebraicSet(sset.n, [BasicBlock(b.g, b.strict, b.nonstrict + (ball,))
                                     for b in sset.blocks])


def euler_closed(sset: SemialgebraicSet, radius_schedule=DEFAULT_RADII, seed=42, *,
                 certified_radius=None, refine_depth=4) -> ClosedEulerResult:
    """chi of a closed set from chi of its ball truncations, which are compact."""
    if any(b.strict for b in sset.blocks):
        raise InvariantViolation("euler_closed takes equations and nonstrict inequalities only")
    if certified_radius is not None:
        v = chi_star(truncate(sset, certified_radius), seed, refine_depth=refine_depth).value
        return ClosedEulerResult(v, certified_radius, False, ((certified_radius, v),))
    history = []
    for rho in radius_schedule:
        v = chi_star(truncate(sset, rho), seed, refine_depth=refine_depth).value
        history.append((rho, v))
        if len(history) >= 2 and history[-2][1] == v:
            return ClosedEulerResult(v, history[-2][0], True, tuple(history))
    raise NoStabilization(f"values {history} never repeated")
