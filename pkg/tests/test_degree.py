import random
from fractions import Fraction

import pytest

from crag.degree import (
    AffineSubspace,
    closure_at_infinity,
    dimension,
    geometric_degree,
    slice,
    transversality_check,
)
from crag.errors import DegenerateSlice, DimensionMismatch, NonReducedInput
from crag.poly import Field, PolySystem, SparsePoly
from crag.zerodim import count_points


def C(n, *ps):
    return PolySystem(n, ps, Field.COMPLEX)


def line(a0, a1, a2):
    return AffineSubspace(2, 1, (a0, a1, a2))


def test_dimension_fixtures(xy):
    x, y = xy
    assert dimension(C(2, x * x + y * y - 1)) == 1
    assert dimension(C(2, x, y)) == 0
    assert dimension(C(2, SparsePoly.constant(2, 1))) == -1
    assert dimension(C(3, x.extend(3))) == 2


def test_slice(xy):
    x, y = xy
    sl = slice(C(2, x * x + y * y - 1), line(-1, 0, 1))
    assert list(sl.polys) == [x * x + y * y - 1, y - 1]
    assert list(slice(C(2, x), AffineSubspace(2, 0, ())).polys) == [x]
    with pytest.raises(DimensionMismatch):
        slice(C(3, x.extend(3)), line(0, 1, 1))
    with pytest.raises(DegenerateSlice):
        AffineSubspace(2, 2, (0, 1, 1, 5, 2, 2))


def test_transversality_fixtures(xy):
    x, y = xy
    parabola = C(2, y - x * x)
    c = transversality_check(parabola, line(-1, 0, 1))
    assert c.verdict and c.point_count == 2
    c = transversality_check(parabola, line(0, 0, 1))
    assert not c.verdict and not c.smooth_ok
    c = transversality_check(C(2, x * x + y * y - 1), line(-2, 1, 0))
    assert c.verdict and c.point_count == 2


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_degree_fixtures(xy, seed):
    x, y = xy
    r = geometric_degree(C(2, x * x + y * y - 1), seed)
    assert (r.dim, r.degree, r.certified) == (1, 2, True)
    assert geometric_degree(C(2, x * y), seed).degree == 2
    assert geometric_degree(C(2, y - x * x), seed).degree == 2
    (t,) = SparsePoly.variables(1)
    assert (geometric_degree(C(1, t - 3), seed).dim, geometric_degree(C(1, t - 3), seed).degree) == (0, 1)
    e = geometric_degree(C(2, SparsePoly.constant(2, 1)), seed)
    assert (e.dim, e.degree) == (-1, 0)


def test_product_of_lines():
    rng = random.Random(5)
    x, y = SparsePoly.variables(2)
    for k in range(1, 5):
        f = SparsePoly.constant(2, 1)
        for _ in range(k):
            f = f * (x * rng.randint(1, 9) + y * rng.randint(-9, 9) + rng.randint(-9, 9))
        assert geometric_degree(C(2, f), 7).degree == k


def test_degree_invariant_under_linear_change(xy):
    x, y = xy
    f = x * x * y - y * y + x - 1
    g = f.compose([x + 2 * y, x - y])
    assert geometric_degree(C(2, f)).degree == geometric_degree(C(2, g)).degree == 3


def test_zero_dimensional_degree_is_count(xy):
    x, y = xy
    sys = C(2, x * x - 2, y * y * y - y)
    assert geometric_degree(sys).degree == count_points(sys).count == 6


def test_nonreduced_input(xy):
    x, y = xy
    with pytest.raises(NonReducedInput):
        geometric_degree(C(2, x * x))


def test_seed_agreement(xy):
    x, y = xy
    vals = {geometric_degree(C(2, x ** 3 - y * y + x), s).degree for s in range(5)}
    assert vals == {3}


def test_twisted_cubic_needs_closure_at_infinity():
    x, y, z = SparsePoly.variables(3)
    sysm = PolySystem(3, [y - x * x, z - x ** 3], Field.COMPLEX)
    sub = AffineSubspace(3, 1, (5, 2, -3, 7))
    # bare generators: x^2, x^3 and the slice form share a zero at infinity
    assert not transversality_check(sysm, sub).infinity_ok
    cert = transversality_check(sysm, sub, closure_at_infinity(sysm))
    assert cert.verdict and cert.point_count == 3
    res = geometric_degree(sysm, seed=5)
    assert (res.dim, res.degree, res.certified) == (1, 3, True)
