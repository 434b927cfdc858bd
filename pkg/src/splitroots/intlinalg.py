"""Exact integer and rational linear algebra on small dense matrices (lists of rows)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[int]]


def _echelon(rows: Sequence[Sequence[int]], track: bool = False):
    """Row-style Hermite normal form.

    Returns (H, U) with H = U * A, U unimodular (when ``track``), H upper
    echelon with positive pivots, entries above each pivot reduced into
    [0, pivot), and zero rows last.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    k = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    pr = 0
    for col in range(k):
        if pr == m:
            break
        while True:
            nz = [i for i in range(pr, m) if A[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(A[i][col]))
            if best != pr:
                A[pr], A[best] = A[best], A[pr]
                if track:
                    U[pr], U[best] = U[best], U[pr]
            clean = True
            piv = A[pr][col]
            for i in range(pr + 1, m):
                if A[i][col]:
                    q = A[i][col] // piv
                    A[i] = [a - q * b for a, b in zip(A[i], A[pr])]
                    if track:
                        U[i] = [a - q * b for a, b in zip(U[i], U[pr])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if not any(A[i][col] for i in range(pr, m)):
            continue
        if A[pr][col] < 0:
            A[pr] = [-a for a in A[pr]]
            if track:
                U[pr] = [-a for a in U[pr]]
        piv = A[pr][col]
        for i in range(pr):
            q = A[i][col] // piv
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[pr])]
                if track:
                    U[i] = [a - q * b for a, b in zip(U[i], U[pr])]
        pr += 1
    return A, U


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Hermite normal form with zero rows dropped (a canonical lattice basis)."""
    if not rows:
        return []
    H, _ = _echelon(rows)
    return [r for r in H if any(r)]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hnf(rows))


def left_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of {y integer : y * A = 0}, in Hermite form."""
    if not rows:
        return []
    H, U = _echelon(rows, track=True)
    ker = [u for h, u in zip(H, U) if not any(h)]
    return hnf(ker) if ker else []


def integer_kernel(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis (as rows) of {x integer : A x = 0}."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    return left_kernel(transpose(rows))


def transpose(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*rows)]


def saturate(rows: Sequence[Sequence[int]]) -> Matrix:
    """Hermite basis of span_Q(rows) intersected with Z^k."""
    k = len(rows[0])
    orth = integer_kernel(rows)
    if not orth:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    return hnf(integer_kernel(orth))


def is_primitive(rows: Sequence[Sequence[int]]) -> bool:
    """True when the row lattice is saturated (all elementary divisors 1)."""
    return hnf(rows) == saturate(rows)


def solve_rational(basis: Sequence[Sequence[int]], v: Sequence) -> Optional[list[Fraction]]:
    """Coefficients x with sum_j x_j basis[j] = v, or None if v is outside the span.

    ``basis`` rows must be linearly independent.
    """
    t = len(basis)
    k = len(v)
    # augmented system: columns are basis rows, one equation per coordinate
    M = [[Fraction(basis[j][i]) for j in range(t)] + [Fraction(v[i])] for i in range(k)]
    piv_cols = []
    r = 0
    for c in range(t):
        p = next((i for i in range(r, k) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(k):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][t] != 0 for i in range(r, k)):
        return None
    if len(piv_cols) < t:
        raise ValueError("basis rows are linearly dependent")
    x = [Fraction(0)] * t
    for i, c in enumerate(piv_cols):
        x[c] = M[i][t]
    return x


def solve_integer(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list[int]]:
    x = solve_rational(basis, v)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return [int(c) for c in x]


def particular_solution(A: Sequence[Sequence[int]], b: Sequence) -> Optional[list[Fraction]]:
    """Some rational x with A x = b (A of full row rank), or None if inconsistent."""
    t = len(A)
    n = len(A[0])
    M = [[Fraction(a) for a in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, t) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(t):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == t:
            break
    if any(M[i][n] != 0 for i in range(r, t)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = M[i][n]
    return x


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    A = [list(map(int, r)) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def gram(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[sum(a * b for a, b in zip(r, s)) for s in rows] for r in rows]


def lll_reduce(rows: Sequence[Sequence[int]]) -> Matrix:
    """LLL-reduced basis (delta = 3/4) via sympy's exact implementation."""
    from sympy.polys.domains import ZZ
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[ZZ(int(a)) for a in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    return [[int(a) for a in r] for r in dm.lll().to_Matrix().tolist()]
