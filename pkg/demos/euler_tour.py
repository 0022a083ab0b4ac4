"""Euler characteristics of a few small sets, from spheres to open cells.

Run with  python3 demos/euler_tour.py  (about half a minute).
"""

import time

from crag.euler import BasicBlock, SemialgebraicSet, chi_smooth_hypersurface, chi_star, euler_closed
from crag.poly import SparsePoly


def show(label, fn, *args, **kw):
    start = time.perf_counter()
    value = fn(*args, **kw)
    print(f"{label:<40} {value!s:>6}   ({time.perf_counter() - start:.1f}s)")


x, y, z = SparsePoly.variables(3)
(t,) = SparsePoly.variables(1)
u, v = SparsePoly.variables(2)

print("Smooth compact hypersurfaces, counted by Morse critical points")
show("circle x^2 + y^2 = 1", lambda f: chi_smooth_hypersurface(f).chi, u * u + v * v - 1)
show("sphere x^2 + y^2 + z^2 = 1", lambda f: chi_smooth_hypersurface(f).chi, x * x + y * y + z * z - 1)

print("\nCompactly supported chi* of open and mixed sets")
for label, f in [("open interval 1 - t^2 > 0", 1 - t * t), ("open disk", 1 - u * u - v * v)]:
    show(label, lambda s: chi_star(s).value, SemialgebraicSet(f.nvars, [BasicBlock(SparsePoly.zero(f.nvars), [f])]))
show("point t = 0", lambda s: chi_star(s).value, SemialgebraicSet(1, [BasicBlock(t)]))
show("half line t >= 0", lambda s: chi_star(s).value,
     SemialgebraicSet(1, [BasicBlock(SparsePoly.zero(1), [], [t])]))

print("\nClosed but unbounded sets, through growing balls")
res = euler_closed(SemialgebraicSet(2, [BasicBlock(v - u * u)]))
print(f"{'parabola y = x^2':<40} {res.value:>6}   stabilized at radius {res.radius}, heuristic={res.heuristic}")
