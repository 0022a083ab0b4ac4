import random
from fractions import Fraction

import pytest

from conftest import random_point, random_poly
from crag.errors import CenterOnVariety, DimensionMismatch, EmptyInput, ExponentTooSmall, IndexOutOfRange
from crag.poly import (
    Combine,
    GaussianRational,
    SparsePoly,
    combine,
    conjugate,
    dehomogenize,
    evaluate,
    homogenize,
    imag_part,
    inversion_map,
    inversion_transform,
    partial_derivative,
    real_part,
)


def test_evaluate_fixtures(xy):
    x, y = xy
    circle = x * x + y * y - 1
    assert evaluate(circle, [1, 0]) == 0
    assert evaluate(circle, [0, 0]) == -1
    assert evaluate(x * y, [Fraction(2, 3), Fraction(3, 2)]) == 1
    with pytest.raises(DimensionMismatch):
        evaluate(circle, [1])


def test_partial_derivatives(xy):
    x, y = xy
    assert partial_derivative(x * x + y * y - 1, 0) == 2 * x
    assert partial_derivative(x * y * y, 1) == 2 * x * y
    assert partial_derivative(y ** 3, 0).is_zero()
    with pytest.raises(IndexOutOfRange):
        partial_derivative(x, 2)


def test_homogenize_fixtures(xy):
    (x,) = SparsePoly.variables(1)
    X0, X1 = SparsePoly.variables(2)
    assert homogenize(x, 4) == X0 ** 3 * X1
    assert homogenize(x + 1, 1) == X1 + X0
    x, y = xy
    Z0, Z1, Z2 = SparsePoly.variables(3)
    assert homogenize(x * x + y * y - 1, 2) == Z1 * Z1 + Z2 * Z2 - Z0 * Z0
    with pytest.raises(ExponentTooSmall):
        homogenize(x ** 3, 2)


def test_homogenize_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        p = random_poly(rng, 3, 4)
        if p.is_zero():
            continue
        E = p.degree + rng.randint(0, 3)
        h = homogenize(p, E)
        assert h.is_homogeneous() and h.degree == E
        assert dehomogenize(h) == p


def test_inversion_fixtures(xy):
    x, y = xy
    assert inversion_transform(y, [0, 1]) == x * x + y * y - y
    (t,) = SparsePoly.variables(1)
    assert inversion_transform(t - 1, [0]) == t - t * t
    with pytest.raises(CenterOnVariety):
        inversion_transform(y, [0, 0])


def test_inversion_zero_sets_correspond():
    rng = random.Random(11)
    x, y = SparsePoly.variables(2)
    p = x * x - y - 2
    xi = [Fraction(1), Fraction(1)]
    f = inversion_transform(p, xi)
    for _ in range(200):
        pt = random_point(rng, 2)
        if pt == xi:
            continue
        image = inversion_map(pt, xi)
        assert (evaluate(f, pt) == 0) == (evaluate(p, image) == 0)
    # points of Z(p) pulled back through the involution land on Z(f)
    for a in range(-4, 5):
        q = [Fraction(a), Fraction(a * a - 2)]
        pre = inversion_map(q, xi)
        assert evaluate(f, pre) == 0


def test_ring_homomorphism():
    rng = random.Random(5)
    for _ in range(100):
        p, q = random_poly(rng, 3, 3), random_poly(rng, 3, 3)
        pt = random_point(rng, 3)
        assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)
        assert evaluate(p + q, pt) == evaluate(p, pt) + evaluate(q, pt)


def test_combine(xy):
    x, y = xy
    assert combine([x, y]) == x * x + y * y
    assert combine([x - 1]) == (x - 1) ** 2
    (t,) = SparsePoly.variables(1)
    assert combine([t, t - 1], Combine.PRODUCT) == t * t - t
    with pytest.raises(EmptyInput):
        combine([])
    rng = random.Random(2)
    f, g = x * y, x - y
    s = combine([f, g])
    for _ in range(100):
        pt = random_point(rng, 2, 2)
        assert (s.evaluate(pt) == 0) == (f.evaluate(pt) == 0 and g.evaluate(pt) == 0)


def test_gaussian_parts(xy):
    x, y = xy
    i = GaussianRational(0, 1)
    p = x * x + y * i
    assert p.is_complex
    assert real_part(p) == x * x and imag_part(p) == y
    assert conjugate(p) == x * x - y * i
    assert evaluate(p, [GaussianRational(0, 1), 1]) == GaussianRational(-1, 1)


def test_zero_coefficients_dropped():
    p = SparsePoly(2, {(1, 0): 0, (0, 1): Fraction(2, 4)})
    assert len(p) == 1 and p.terms[(0, 1)] == Fraction(1, 2)
