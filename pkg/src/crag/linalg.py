"""Exact characteristic polynomials and inertia of rational symmetric matrices."""

from __future__ import annotations

from fractions import Fraction

from . import sturm
from .errors import NotSymmetric


def as_matrix(M):
    rows = [[Fraction(v) for v in row] for row in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSymmetric("matrix is not square")
    return rows


def charpoly(M):
    """det(t I - M) as a dense coefficient list (lowest degree first),
    by the Faddeev-LeVerrier recursion."""
    A = as_matrix(M)
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = [row[:] for row in Mk]
        for i in range(n):
            prev[i][i] += c
        Mk = [[sum(A[i][l] * prev[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
        c = -sum(Mk[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return coeffs


def check_symmetric(M):
    A = as_matrix(M)
    n = len(A)
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != A[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    return A


def negative_eigenvalues(M) -> int:
    """Negative eigenvalues of a symmetric rational matrix, with multiplicity."""
    A = check_symmetric(M)
    if not A:
        return 0
    total = 0
    for factor, mult in sturm.squarefree_factorization(charpoly(A)):
        total += mult * sturm.sturm_count(factor, (None, Fraction(0)))
        # a root at 0 is not negative
        if sturm.evaluate(factor, Fraction(0)) == 0:
            total -= mult
    return total


def kernel_dimension(M) -> int:
    A = check_symmetric(M)
    cp = charpoly(A)
    k = 0
    while k < len(cp) and cp[k] == 0:
        k += 1
    return k


def eigen_gap_clear(M, eps) -> bool:
    """True when the symmetric M has no eigenvalue in [-eps, eps]."""
    A = check_symmetric(M)
    if not A:
        return True
    return sturm.sturm_count(charpoly(A), (-Fraction(eps), Fraction(eps))) == 0


def inf_norm(M):
    return max((sum(abs(Fraction(v)) for v in row) for row in M), default=Fraction(0))


def det(M):
    A = as_matrix(M)
    n = len(A)
    cp = charpoly(A)
    return cp[0] * (-1) ** n if n else Fraction(1)
