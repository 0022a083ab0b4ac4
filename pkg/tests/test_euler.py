from fractions import Fraction

import pytest

from crag import msolve
from crag.errors import ChartInvalid, NotRegular
from crag.euler import (
    BasicBlock,
    SemialgebraicSet,
    _Derivatives,
    _morse_attempt,
    certified_index,
    chi_smooth_hypersurface,
    chi_star,
    chi_star_basic,
    chi_star_basic_report,
    chi_star_block,
    elim_nonstrict,
    euler_closed,
    hessian_matrix,
    milnor_fibre,
)
from crag.intervals import Interval
from crag.linalg import negative_eigenvalues
from crag.poly import SparsePoly, homogenize

(t,) = SparsePoly.variables(1)
ZERO1 = SparsePoly.zero(1)


def sphere(n):
    xs = SparsePoly.variables(n + 1)
    return sum((v * v for v in xs[1:]), xs[0] * xs[0]) - 1


def test_hessian_sphere_term_by_term(xyz):
    x, y, z = xyz
    f = x * x + y * y + z * z - 1
    # at (0,0,1): d_z f = 2, d_x f = d_y f = 0, second derivatives 2 on the
    # diagonal, x_z - a_z = -1.  (1/2)(d_z f)^2 H_ii = 4 + 0 + (-1)(0 - 2*2) = 8,
    # so H_ii = 2 * 8 / 4 = 4; off-diagonal terms vanish.
    H = hessian_matrix(f, [0, 0, 2], [0, 0, 1], 2)
    assert H == [[4, 0], [0, 4]]
    assert negative_eigenvalues(H) == 0
    # at (0,0,-1): d_z f = -2, x_z - a_z = -3: (1/2)*4*H_ii = 4 + (-3)(0 - 2*(-2)) = -8
    H = hessian_matrix(f, [0, 0, 2], [0, 0, -1], 2)
    assert H == [[-4, 0], [0, -4]]
    assert negative_eigenvalues(H) == 2


def test_hessian_circle(xy):
    x, y = xy
    H = hessian_matrix(x * x + y * y - 1, [2, 0], [1, 0], 0)
    assert len(H) == 1 and H[0][0] > 0
    with pytest.raises(ChartInvalid):
        hessian_matrix(x * x + y * y - 1, [2, 0], [1, 0], 1)


def test_hessian_interval_encloses_exact(xyz):
    x, y, z = xyz
    f = x * x + y * y + z * z - 1
    box = [Interval(Fraction(-1, 100), Fraction(1, 100))] * 2 + [Interval(Fraction(99, 100), Fraction(101, 100))]
    H = hessian_matrix(f, [0, 0, 2], box, 2)
    assert all(H[i][i].contains(4) for i in range(2))
    assert certified_index(f, [0, 0, 2], box) == 0


def test_single_equation_reading_is_not_finite(xyz):
    # the one-equation criticality condition sum_k d_k f (x_k - a_k) = 0
    # leaves a curve of "critical" points on the sphere; the minors do not
    x, y, z = xyz
    f = x * x + y * y + z * z - 1
    a = [Fraction(1, 3), Fraction(2, 7), 2]
    single = sum((g * (v - c) for g, v, c in zip(f.gradient(), (x, y, z), a)), SparsePoly.zero(3))
    assert msolve.solve([f, single], 3).status == "positive"


def test_chart_independence(xyz):
    x, y, z = xyz
    f = x * x + 2 * y * y + 3 * z * z - 6
    a = [5, 7, 11]
    rep, _ = _morse_attempt(f, a, _Derivatives(f), 128, 4)
    d = _Derivatives(f)
    for box in rep.points:
        ev = [g for g in d.grad]
        from crag.intervals import BoxEvaluator
        be = BoxEvaluator(list(box.intervals))
        charts = [k for k in range(3) if not be(ev[k]).contains_zero()]
        idx = set()
        for k in charts:
            H = hessian_matrix(f, a, box, k, d)
            mid = [[v.mid for v in row] for row in H]
            idx.add(negative_eigenvalues(mid))
        assert len(idx) == 1


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 2), (3, 0)])
def test_spheres(n, expected):
    rep = chi_smooth_hypersurface(sphere(n))
    assert rep.chi == expected
    assert sum(rep.histogram) == len(rep.points)


def test_zero_sphere():
    assert chi_smooth_hypersurface(t * t - 1).chi == 2


def test_torus(xyz):
    x, y, z = xyz
    R = x * x + y * y + z * z + 3
    f = R * R - 16 * (x * x + y * y)
    assert chi_smooth_hypersurface(f).chi == 0
    rep, _ = _morse_attempt(f, [10, 0, 0], _Derivatives(f), 128, 4)
    assert rep.histogram == (1, 2, 1)


def test_not_regular(xy):
    x, y = xy
    with pytest.raises(NotRegular):
        chi_smooth_hypersurface(x * x - y * y)


def test_milnor_point_fixture():
    block = BasicBlock(t)
    mf = milnor_fibre(block)
    X0, X1 = SparsePoly.variables(2)
    assert mf.delta == 2 and mf.G == (homogenize(t, 5),)
    assert mf.H == X0 ** 8 * X1 ** 2
    rep = chi_star_basic_report(block)
    assert (rep.chi_phi, rep.chi_star) == (4, 1)


def test_milnor_slack_variable(xy):
    x, y = xy
    mf = milnor_fibre(BasicBlock(SparsePoly.zero(2), [1 - x * x - y * y]))
    assert mf.H.nvars == 4 and mf.r == 1


def test_cells():
    assert chi_star_basic(BasicBlock(ZERO1, [t])) == -1
    assert chi_star_basic(BasicBlock(ZERO1, [1 - t * t])) == -1


def test_open_disk(xy):
    x, y = xy
    assert chi_star_basic(BasicBlock(SparsePoly.zero(2), [1 - x * x - y * y])) == 1


def test_unions():
    s = SemialgebraicSet(1, [BasicBlock(t), BasicBlock(t * (t - 1))])
    r = chi_star(s)
    assert r.value == 2 and r.empty is False
    s = SemialgebraicSet(1, [BasicBlock(t), BasicBlock(t * t + 1)])
    assert chi_star(s).value == 1
    r = chi_star(SemialgebraicSet(1, [BasicBlock(t * t + 1)]))
    assert (r.value, r.empty) == (0, True)


def test_nonstrict():
    split = elim_nonstrict(BasicBlock(ZERO1, [], [t]))
    assert split.boundary.g == t and split.lifted.nvars == 2
    assert chi_star_block(BasicBlock(ZERO1, [], [t])) == 0
    assert chi_star_block(BasicBlock(ZERO1, [], [1 - t * t])) == 1
    assert chi_star_block(BasicBlock(t * (t - 1), [], [SparsePoly.constant(1, 1)])) == 2
    assert chi_star_block(BasicBlock(ZERO1, [], [t, 1 - t])) == 1


def test_circle_block_matches_morse(xy):
    x, y = xy
    f = x * x + y * y - 1
    assert chi_star_basic(BasicBlock(f)) == chi_smooth_hypersurface(f).chi == 0


@pytest.mark.parametrize("poly,expected", [("parabola", 1), ("circle", 0), ("line", 1)])
def test_euler_closed(xy, poly, expected):
    x, y = xy
    f = {"parabola": y - x * x, "circle": x * x + y * y - 1, "line": y}[poly]
    res = euler_closed(SemialgebraicSet(2, [BasicBlock(f)]), radius_schedule=(2, 4, 16))
    assert res.value == expected and res.heuristic


def test_euler_closed_certified_radius(xy):
    x, y = xy
    res = euler_closed(SemialgebraicSet(2, [BasicBlock(x * x + y * y - 1)]), certified_radius=2)
    assert res.value == 0 and not res.heuristic
