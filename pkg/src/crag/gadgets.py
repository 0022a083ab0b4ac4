"""Count-preserving gadgets and instance constructors.

A sign condition is turned into one polynomial equation F = 0 by slack
variables: every solution x of the condition lifts to exactly 2^r real
solutions (x, y, z) of F.  Suspension and one-point compactification
build instances whose Euler characteristics are known in advance.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .errors import BlockBudget, DimensionMismatch, UnknownExample
from .euler import BasicBlock, SemialgebraicSet
from .poly import Field, PolySystem, SparsePoly, inversion_transform

MAX_SLACK_PER_BLOCK = 3
MAX_PATTERNS = 4096


class Rel(enum.Enum):
    LT = "<"
    EQ = "="
    GT = ">"
    NE = "!="

    def holds(self, v) -> bool:
        return {Rel.LT: v < 0, Rel.EQ: v == 0, Rel.GT: v > 0, Rel.NE: v != 0}[self]


@dataclass(frozen=True)
class SignClause:
    """Conjunction g rel_g 0 and f_j rel_j 0 for (f_j, rel_j) in atoms."""

    g: SparsePoly
    g_rel: Rel = Rel.EQ
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "g_rel", Rel(self.g_rel))
        object.__setattr__(self, "atoms", tuple((p, Rel(r)) for p, r in self.atoms))
        if self.g_rel not in (Rel.EQ, Rel.NE):
            raise ValueError("g takes the relation = or !=")
        for p, r in self.atoms:
            if p.nvars != self.g.nvars:
                raise DimensionMismatch("clause polynomials disagree on nvars")
            if r is Rel.NE:
                raise ValueError("atoms take <, = or >")

    @property
    def nvars(self):
        return self.g.nvars

    def holds(self, x) -> bool:
        return (self.g_rel.holds(self.g.evaluate(x))
                and all(r.holds(p.evaluate(x)) for p, r in self.atoms))


@dataclass(frozen=True)
class GadgetOutput:
    F: SparsePoly
    multiplier: int
    r: int
    # F is the sum of the squares of these (conjunction gadget)
    squares: tuple = ()
    # disjoint equation systems whose product of square sums gives F or
    # its square root (union gadget)
    pieces: tuple = ()
    slack_names: tuple = field(default=())

    def count(self, limits=None):
        """count_points of {F = 0} over R, using the attached certificate."""
        from .zerodim import count_points
        sys = PolySystem(self.F.nvars, [self.F], Field.REAL)
        if self.pieces:
            return count_points(sys, limits, pieces=self.pieces)
        return count_points(sys, limits, sos=self.squares or None)


def _slack_equations(g, g_rel, atoms, z, ys):
    """Equations replacing one sign pattern; z and ys are slack variables."""
    eqs = []
    if g_rel is Rel.NE:
        eqs.append(g * z - 1)
    else:
        if not g.is_zero():
            eqs.append(g)
        if z is not None:
            # pin the unused slack so the fibre stays finite
            eqs.append(z * z)
    for (f, rel), y in zip(atoms, ys):
        if rel is Rel.GT:
            eqs.append(f * y * y - 1)
        elif rel is Rel.LT:
            eqs.append(f * y * y + 1)
        else:
            if not f.is_zero():
                eqs.append(f)
            eqs.append(y * y - 1)
    return eqs


def _sum_squares(eqs, nvars):
    return reduce(lambda a, b: a + b, [q * q for q in eqs], SparsePoly.zero(nvars))


def compile_sign_condition(conj: SignClause) -> GadgetOutput:
    """F = sum of squares of the slack equations; multiplier 2^r."""
    n = conj.nvars
    r = len(conj.atoms)
    has_z = conj.g_rel is Rel.NE
    N = n + r + (1 if has_z else 0)
    xs = SparsePoly.variables(N)
    ys = xs[n:n + r]
    z = xs[n + r] if has_z else None
    eqs = _slack_equations(conj.g.extend(N), conj.g_rel,
                           [(f.extend(N), rel) for f, rel in conj.atoms], z, ys)
    names = tuple(f"y{j}" for j in range(r)) + (("z",) if has_z else ())
    return GadgetOutput(_sum_squares(eqs, N), 1 << r, r, tuple(eqs), (), names)


def _block_atoms(block: BasicBlock):
    return [(f, "strict") for f in block.strict] + [(h, "nonstrict") for h in block.nonstrict]


def _block_holds(g_sign, signs):
    if g_sign is not Rel.EQ:
        return False
    return all(s is Rel.GT or (kind == "nonstrict" and s is Rel.EQ) for s, kind in signs)


def compile_union(sset: SemialgebraicSet) -> GadgetOutput:
    """One equation for a union of blocks, through the exclusive expansion.

    Every block contributes a slack z_i for its equation and a slack y_ij
    per inequality.  The sign patterns of all these atoms that put x in the
    union are mutually exclusive; each becomes a sum of squares F_l, and
    F = (prod_l F_l)^2.  A point of the union lies in exactly one pattern,
    which has 2^r lifts with r the total number of inequalities."""
    n = sset.n
    per_block = [_block_atoms(b) for b in sset.blocks]
    for atoms in per_block:
        if len(atoms) > MAX_SLACK_PER_BLOCK:
            raise BlockBudget(f"{len(atoms)} inequalities in one block; the cap is "
                              f"{MAX_SLACK_PER_BLOCK}")
    t = len(sset.blocks)
    r = sum(len(a) for a in per_block)
    total_patterns = 2 ** t * 3 ** r
    if total_patterns > MAX_PATTERNS:
        raise BlockBudget(f"{total_patterns} sign patterns exceed {MAX_PATTERNS}")
    N = n + r + t
    xs = SparsePoly.variables(N)
    y_all = xs[n:n + r]
    z_all = xs[n + r:]
    pieces = []
    offsets = list(itertools.accumulate([0] + [len(a) for a in per_block]))
    choices = []
    for atoms in per_block:
        choices.append((Rel.EQ, Rel.NE))
        choices.extend([(Rel.LT, Rel.EQ, Rel.GT)] * len(atoms))
    for pattern in itertools.product(*choices):
        pos = 0
        signs = []
        for atoms in per_block:
            signs.append((pattern[pos], list(zip(pattern[pos + 1:pos + 1 + len(atoms)],
                                                 [k for _, k in atoms]))))
            pos += 1 + len(atoms)
        if not any(_block_holds(gs, ss) for gs, ss in signs):
            continue
        eqs = []
        for i, (block, atoms) in enumerate(zip(sset.blocks, per_block)):
            g_sign, ss = signs[i]
            ys = y_all[offsets[i]:offsets[i + 1]]
            eqs += _slack_equations(block.g.extend(N), g_sign,
                                    [(f.extend(N), s) for (f, _), (s, _) in zip(atoms, ss)],
                                    z_all[i], ys)
        pieces.append(tuple(eqs))
    if not pieces:
        F = SparsePoly.constant(N, 1)
        return GadgetOutput(F, 1 << r, r, (), (), ())
    star = reduce(lambda a, b: a * b, [_sum_squares(e, N) for e in pieces])
    names = tuple(f"y{j}" for j in range(r)) + tuple(f"z{i}" for i in range(t))
    return GadgetOutput(star * star, 1 << r, r, (star,), tuple(pieces), names)


def brute_force_count(conj: SignClause):
    """Number of real x satisfying a univariate sign condition.

    Candidates are the real roots of the product of all atoms, isolated
    exactly, plus one rational sample in every gap between them; the
    count is INFINITE when some open gap satisfies the condition."""
    from . import sturm
    from .zerodim import INFINITE
    if conj.nvars != 1:
        raise DimensionMismatch("brute force is univariate")
    polys = [conj.g] + [p for p, _ in conj.atoms]
    prod = reduce(lambda a, b: a * b, [p for p in polys if not p.is_zero()],
                  SparsePoly.constant(1, 1))
    dense = sturm.squarefree_part(sturm.dense(prod)) if not prod.is_constant() else [Fraction(1)]
    roots = sturm.isolate_real_roots(dense, Fraction(1, 2 ** 40)) if len(dense) > 1 else []
    hits = 0
    for iv in roots:
        if _holds_at_root(conj, dense, iv):
            hits += 1
    cuts = [iv.lo for iv in roots] + [iv.hi for iv in roots]
    if roots:
        samples = [min(cuts) - 1, max(cuts) + 1]
        samples += [(a.hi + b.lo) / 2 for a, b in zip(roots, roots[1:])]
    else:
        samples = [Fraction(0)]
    if any(conj.holds([s]) for s in samples):
        return INFINITE
    return hits


def _holds_at_root(conj, dense, iv):
    """Evaluate the condition at the unique root of ``dense`` in ``iv``
    using exact gcds for the zero tests and the isolating interval for
    signs of nonvanishing atoms."""
    from . import sturm
    from .intervals import Interval

    def sign_at(p):
        if p.is_zero():
            return 0
        d = sturm.dense(p)
        common = sturm.gcd(d, dense)
        if sturm.deg(common) > 0 and sturm.sturm_count(common, iv) > 0:
            return 0
        box = iv
        for _ in range(200):
            v = Interval(box.lo, box.hi)
            val = _eval_interval(d, v)
            if not val.contains_zero():
                return 1 if val.lo > 0 else -1
            box = sturm.refine_root(dense, box, box.width / 4)
        raise ArithmeticError("sign not resolved")

    if not conj.g_rel.holds(sign_at(conj.g)):
        return False
    return all(r.holds(sign_at(p)) for p, r in conj.atoms)


def _eval_interval(dense, iv):
    from .intervals import Interval
    acc = Interval(0)
    for c in reversed(dense):
        acc = acc * iv + Interval(c)
    return acc


# -- topological constructors ---------------------------------------------------

def suspend(f: SparsePoly) -> SparsePoly:
    """Polynomial whose real zero set is the suspension of Z(f) for compact
    Z(f): f^2 + X_(n+1)^2 cut out Z(f) x {0}, a free coordinate X_(n+2)
    makes it Z(f) x R, and inversion at (0, ..., 0, 1, 0) compactifies."""
    n = f.nvars
    u = SparsePoly.variable(n + 2, n)
    f0 = f.extend(n + 2) ** 2 + u * u
    xi = [0] * n + [1, 0]
    return inversion_transform(f0, xi)


def one_point_compactify(f: SparsePoly, xi) -> SparsePoly:
    """Inversion of Z(f) in the unit sphere around xi; the result vanishes
    on the image of Z(f) and at xi itself."""
    return inversion_transform(f, xi)


# -- example catalog ---------------------------------------------------------------

@dataclass(frozen=True)
class Expected:
    value: object
    provenance: str


@dataclass(frozen=True)
class ExampleSpec:
    name: str
    params: dict
    obj: object
    expected: dict

    def __post_init__(self):
        for k, v in self.expected.items():
            if not isinstance(v, Expected) or not v.provenance:
                raise ValueError(f"expected value {k} lacks provenance")


def _sphere(n=2):
    n = int(n)
    xs = SparsePoly.variables(n + 1)
    f = reduce(lambda a, b: a + b, [x * x for x in xs]) - 1
    return PolySystem(n + 1, [f], Field.REAL), {
        "chi": Expected(2 if n % 2 == 0 else 0, "paper: Euler characteristic of S^n")}


def _circle_pair():
    x, y = SparsePoly.variables(2)
    a = x * x + y * y - 1
    b = (x - 3) ** 2 + y * y - 1
    sset = SemialgebraicSet(2, [BasicBlock(a), BasicBlock(b)])
    return sset, {"chi_star": Expected(0, "derived: two disjoint circles")}


def _torus():
    x, y, z = SparsePoly.variables(3)
    R = x * x + y * y + z * z + 3
    f = R * R - 16 * (x * x + y * y)
    return PolySystem(3, [f], Field.REAL), {
        "chi": Expected(0, "derived: Morse function with N = (1, 2, 1)")}


def _open_ball(n=2):
    n = int(n)
    xs = SparsePoly.variables(n)
    f = 1 - reduce(lambda a, b: a + b, [x * x for x in xs])
    sset = SemialgebraicSet(n, [BasicBlock(SparsePoly.zero(n), [f])])
    return sset, {"chi_star": Expected((-1) ** n, "paper: chi* of R^n is (-1)^n")}


def _point_set(k=3):
    k = int(k)
    (x,) = SparsePoly.variables(1)
    f = reduce(lambda a, b: a * b, [x - i for i in range(k)], SparsePoly.constant(1, 1))
    return PolySystem(1, [f], Field.REAL), {
        "count": Expected(k, "trivial: k distinct integer roots"),
        "chi_star": Expected(k, "trivial: k points")}


def _milnor_demo():
    (x,) = SparsePoly.variables(1)
    sset = SemialgebraicSet(1, [BasicBlock(x)])
    return sset, {"chi_phi": Expected(4, "derived: four contractible branches of X0^8 X1^2 = 1"),
                  "chi_star": Expected(1, "derived: a point")}


CATALOG = {
    "sphere": _sphere,
    "circle_pair": _circle_pair,
    "torus": _torus,
    "open_ball": _open_ball,
    "point_set": _point_set,
    "milnor_demo": _milnor_demo,
}


def example(name: str, params=None) -> ExampleSpec:
    params = dict(params or {})
    try:
        build = CATALOG[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; known: {sorted(CATALOG)}") from None
    obj, expected = build(**params)
    return ExampleSpec(name, params, obj, expected)
