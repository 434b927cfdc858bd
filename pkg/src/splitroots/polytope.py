"""Exact volumes and feasibility of rational polytopes {y : A y <= b}.

Volumes use Lasserre's recursion
    vol_d(P) = (1/d) * sum_i  b_i / |a_ik| * vol_{d-1}(facet_i projected along y_k)
where the facet is the intersection of P with a_i y = b_i.  Constraints are
kept as primitive integer rows so equal faces reached along different paths
share a cache entry.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import Unbounded

Constraint = tuple[tuple[int, ...], Fraction]


def normalize(a: Sequence, b) -> Optional[Constraint]:
    """Primitive integer normal a with the matching bound; None for 0 <= c with c >= 0.

    Raises ValueError for an infeasible constant constraint 0 <= c with c < 0.
    """
    fa = [Fraction(x) for x in a]
    fb = Fraction(b)
    if not any(fa):
        if fb < 0:
            raise ValueError("infeasible")
        return None
    den = 1
    for x in fa:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fa]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints), fb * den / g


def canonical(constraints: Iterable[tuple[Sequence, object]]) -> Optional[tuple[Constraint, ...]]:
    """Deduplicated, sorted constraint tuple; None when trivially infeasible."""
    best: dict[tuple[int, ...], Fraction] = {}
    try:
        for a, b in constraints:
            c = normalize(a, b)
            if c is None:
                continue
            key, bound = c
            if key not in best or bound < best[key]:
                best[key] = bound
    except ValueError:
        return None
    for key, bound in best.items():
        opposite = tuple(-x for x in key)
        if opposite in best and best[opposite] < -bound:
            return None
    return tuple(sorted(best.items()))


def volume_primitive(rows: Iterable[tuple[tuple[int, ...], Fraction]], dim: int) -> Fraction:
    """``volume`` for rows whose normals are already primitive integer tuples."""
    canon = _dedupe(rows)
    if canon is None:
        return Fraction(0)
    if dim == 0:
        return Fraction(1)
    return _volume(canon, dim)


def volume(constraints: Iterable[tuple[Sequence, object]], dim: int) -> Fraction:
    """Lebesgue volume of {y in Q^dim : a.y <= b for each (a, b)}."""
    canon = canonical(constraints)
    if canon is None:
        return Fraction(0)
    if dim == 0:
        return Fraction(1)
    return _volume(canon, dim)


def _substitute(constraints: tuple[Constraint, ...], i: int, k: int):
    """Restrict to a_i.y = b_i, eliminate y_k, and drop coordinate k.

    Each other row is replaced by |p| * row - sign(p) * row[k] * row_i with
    p = a_i[k], which keeps the normals integral and the inequality direction.
    """
    a_i, b_i = constraints[i]
    pivot = a_i[k]
    scale = abs(pivot)
    sign = 1 if pivot > 0 else -1
    out = []
    for j, (a, b) in enumerate(constraints):
        if j == i:
            continue
        c = sign * a[k]
        new_a = tuple(scale * a[l] - c * a_i[l] for l in range(len(a)) if l != k)
        g = 0
        for x in new_a:
            g = math.gcd(g, x)
        new_b = scale * b - c * b_i
        if g > 1:
            new_a = tuple(x // g for x in new_a)
            new_b /= g
        out.append((new_a, new_b))
    return out


def _dedupe(rows) -> Optional[tuple[Constraint, ...]]:
    best: dict[tuple[int, ...], Fraction] = {}
    for key, bound in rows:
        if not any(key):
            if bound < 0:
                return None
            continue
        if key not in best or bound < best[key]:
            best[key] = bound
    for key, bound in best.items():
        opposite = tuple(-x for x in key)
        if opposite in best and best[opposite] < -bound:
            return None
    return tuple(sorted(best.items()))


@lru_cache(maxsize=1 << 18)
def _volume(constraints: tuple[Constraint, ...], dim: int) -> Fraction:
    if dim == 1:
        lo, hi = None, None
        for (a,), b in constraints:
            v = b / a
            if a > 0:
                hi = v if hi is None else min(hi, v)
            else:
                lo = v if lo is None else max(lo, v)
        if lo is None or hi is None:
            raise Unbounded("one-dimensional section is unbounded")
        return max(Fraction(0), hi - lo)
    total = Fraction(0)
    for i, (a, b) in enumerate(constraints):
        if b == 0:
            continue
        k = max(l for l in range(dim) if a[l])
        face = _dedupe(_substitute(constraints, i, k))
        if face is None:
            continue
        total += b / abs(a[k]) * _volume(face, dim - 1)
    return total / dim


def feasible(constraints: Iterable[tuple[Sequence, object]], dim: int) -> bool:
    """Exact emptiness test by Fourier-Motzkin elimination."""
    canon = canonical(constraints)
    if canon is None:
        return False
    rows = [(list(a), b) for a, b in canon]
    for k in range(dim - 1, -1, -1):
        pos = [(a, b) for a, b in rows if a[k] > 0]
        neg = [(a, b) for a, b in rows if a[k] < 0]
        rest = [(a[:k] + a[k + 1:], b) for a, b in rows if a[k] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = -an[k], ap[k]
                combined = [cp * x + cn * y for x, y in zip(ap, an)]
                del combined[k]
                rest.append((combined, cp * bp + cn * bn))
        canon = canonical(rest)
        if canon is None:
            return False
        rows = [(list(a), b) for a, b in canon]
    return True
