"""Turn a sign condition into one polynomial and count its real zeros.

The slack variables multiply the count by a known power of two, which the
brute-force univariate count confirms.
"""

from crag.gadgets import Rel, SignClause, brute_force_count, compile_sign_condition
from crag.poly import SparsePoly

(t,) = SparsePoly.variables(1)

clauses = {
    "t^3 - t = 0 and t > 0": SignClause(t ** 3 - t, Rel.EQ, [(t, Rel.GT)]),
    "(t^2 - 4)(t^2 - 1) = 0 and t < 3/2": SignClause((t * t - 4) * (t * t - 1), Rel.EQ,
                                                   [(t * 2 - 3, Rel.LT)]),
    "t^2 - 2 = 0 and t + 5 > 0 and t = 1": SignClause(t * t - 2, Rel.EQ,
                                                    [(t + 5, Rel.GT), (t - 1, Rel.EQ)]),
}

for label, clause in clauses.items():
    out = compile_sign_condition(clause)
    got = out.count().count
    want = brute_force_count(clause)
    print(f"{label:<42} zeros of F: {got:>2}   = {out.multiplier} x {want}   "
          f"({out.F.nvars} variables, degree {out.F.degree})")
