import random
from fractions import Fraction

import pytest

from crag import msolve
from crag.errors import NotZeroDimensional
from crag.poly import Field, PolySystem, SparsePoly
from crag.sturm import sparse
from crag.zerodim import (
    INFINITE,
    complex_count,
    count_points,
    critical_system,
    eliminant,
    is_zero_dimensional,
    isolate_real_points,
)

x1, = SparsePoly.variables(1)


def R(n, *ps):
    return PolySystem(n, ps, Field.REAL)


def C(n, *ps):
    return PolySystem(n, ps, Field.COMPLEX)


def test_count_fixtures(xy):
    x, y = xy
    assert count_points(C(2, x * x + y * y - 1, x - y)).count == 2
    assert count_points(C(1, x1 * x1 + 1)).count == 2
    assert count_points(R(1, x1 * x1 + 1)).count == 0
    assert count_points(R(2, x * x + y * y - 1)).count is INFINITE
    assert count_points(R(2, x * x + y * y)).count == 1
    assert count_points(R(2)).count is INFINITE
    assert count_points(R(0)).count == 1


def test_gaussian_coefficients(xy):
    from crag.poly import GaussianRational
    i = GaussianRational(0, 1)
    # x^2 = i has two complex roots
    assert complex_count(C(1, x1 * x1 - i)).count == 2
    x, y = xy
    assert complex_count(C(2, x - i, y * y - 1)).count == 2


def test_eliminant_fixtures(xy):
    x, y = xy
    q = eliminant(C(2, x * x + y * y - 1, y), shear=(1, 0)).q
    assert q == sparse([-1, 0, 1])
    assert eliminant(C(1, x1 - 3)).q == sparse([-3, 1])
    assert eliminant(C(2, x * x, y * y)).q.degree == 1
    assert eliminant(C(2, x * x, y * y)).q.evaluate([0]) == 0


def test_eliminant_degree_matches_count():
    rng = random.Random(4)
    x, y = SparsePoly.variables(2)
    for _ in range(10):
        a, b = rng.randint(-3, 3), rng.randint(1, 4)
        sys = C(2, x * x + y * y - b, y - a * x + 1)
        e = eliminant(sys, seed=rng.randint(0, 99))
        assert e.q.degree == count_points(sys).count


def test_isolation(xy):
    x, y = xy
    boxes = isolate_real_points(R(1, x1 * x1 - 2), Fraction(1, 100))
    assert len(boxes) == 2 and all(b.width <= Fraction(1, 100) for b in boxes)
    assert isolate_real_points(R(1, x1 * x1 + 1)) == []
    (box,) = isolate_real_points(R(2, x, y))
    assert box.contains([0, 0])
    with pytest.raises(NotZeroDimensional):
        isolate_real_points(R(2, x * x + y * y - 1))


def test_isolation_matches_count():
    rng = random.Random(12)
    x, y = SparsePoly.variables(2)
    for _ in range(10):
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        sys = R(2, x * x + y * y - 5, x * y - a - b * x - c * y)
        n = count_points(sys).count
        boxes = isolate_real_points(sys, Fraction(1, 2 ** 10))
        assert len(boxes) == n
        assert all(u.disjoint(v) for i, u in enumerate(boxes) for v in boxes[i + 1:])


def test_zero_dimensional(xy):
    x, y = xy
    assert is_zero_dimensional(C(2, x * x + y * y - 1, x - y))
    assert not is_zero_dimensional(C(2, x * x + y * y - 1))
    assert is_zero_dimensional(C(2, SparsePoly.constant(2, 1)))


def test_critical_system_sphere(xyz):
    x, y, z = xyz
    crit = critical_system(x * x + y * y + z * z - 1, [0, 0, 2])
    res = msolve.solve(crit, 3)
    assert res.status == "finite" and len(res.boxes) == 2
    pts = sorted(float(b[2].mid) for b in res.boxes)
    assert pts == pytest.approx([-1, 1])
    for b in res.boxes:
        assert b[0].contains(0) and b[1].contains(0)


def test_critical_system_circle(xy):
    x, y = xy
    res = msolve.solve(critical_system(x * x + y * y - 1, [2, 0]), 2)
    assert sorted(float(b[0].mid) for b in res.boxes) == pytest.approx([-1, 1])
    # centred at the origin every point is critical
    assert msolve.solve(critical_system(x * x + y * y - 1, [0, 0]), 2).status == "positive"


def test_sos_certificate(xy):
    x, y = xy
    F = (x - 1) ** 2 + (y * y - 2) ** 2
    assert count_points(R(2, F), sos=[x - 1, y * y - 2]).count == 2
    assert count_points(R(2, F)).count == 2
