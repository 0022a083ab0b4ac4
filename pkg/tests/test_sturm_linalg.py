import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from crag import sturm
from crag.errors import NotSymmetric, ZeroPolynomial
from crag.intervals import Interval
from crag.linalg import charpoly, kernel_dimension, negative_eigenvalues
from crag.poly import SparsePoly

(x,) = SparsePoly.variables(1)


def test_sturm_fixtures():
    assert sturm.sturm_count(x * x - 1) == 2
    assert sturm.sturm_count(x * x + 1) == 0
    assert sturm.sturm_count((x - 1) ** 2) == 1
    assert sturm.sturm_count(x * x - 1, Interval(0, 5)) == 1
    assert sturm.sturm_count(x * x - 1, (None, 0)) == 1
    with pytest.raises(ZeroPolynomial):
        sturm.sturm_count(SparsePoly.zero(1))


def test_isolation_fixture():
    boxes = sturm.isolate_real_roots(x * x - 2, Fraction(1, 100))
    assert len(boxes) == 2
    assert all(b.width <= Fraction(1, 100) for b in boxes)
    assert boxes[0].lo < -(2 ** 0.5) < boxes[0].hi
    assert boxes[1].lo < 2 ** 0.5 < boxes[1].hi


def test_sturm_against_sympy():
    rng = random.Random(7)
    t = sympy.Symbol("t")
    for _ in range(150):
        d = rng.randint(1, 8)
        coeffs = [Fraction(rng.randint(-50, 50)) for _ in range(d + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = Fraction(1)
        expected = len(set(sympy.Poly([int(c) for c in reversed(coeffs)], t).real_roots()))
        assert sturm.sturm_count(coeffs) == expected


def test_charpoly_against_sympy():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(1, 4)
        M = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        lam = sympy.Symbol("lam")
        cp = sympy.Matrix(M).charpoly(lam).all_coeffs()
        assert charpoly(M) == [Fraction(sympy.Rational(c).p, sympy.Rational(c).q)
                               for c in reversed(cp)]


def test_inertia_fixtures():
    assert negative_eigenvalues([[2, 0], [0, -3]]) == 1
    assert negative_eigenvalues([[0, 1], [1, 0]]) == 1
    assert negative_eigenvalues([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 0
    assert negative_eigenvalues([[-1, 0], [0, -1]]) == 2
    with pytest.raises(NotSymmetric):
        negative_eigenvalues([[0, 1], [2, 0]])


def test_inertia_against_numpy():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 5)
        # small integer entries keep numpy's eigenvalues well separated from 0
        # except for exact zeros, which come from rank deficiency
        B = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(1, n))]
        M = (np.array(B).T @ np.diag([rng.choice([-1, 1]) for _ in B]) @ np.array(B))
        Mq = [[Fraction(int(v)) for v in row] for row in M]
        ev = np.linalg.eigvalsh(M.astype(float))
        tol = 1e-8 * max(1.0, float(np.abs(ev).max()))
        assert negative_eigenvalues(Mq) == int((ev < -tol).sum())
        assert kernel_dimension(Mq) == int((np.abs(ev) <= tol).sum())
