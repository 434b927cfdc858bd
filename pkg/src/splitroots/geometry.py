"""Exact volumes of the domains cut out of the sorted unit cube by relation rows.

For a permutation s and integers k_j the slice is
    { x : 0 <= x_1 <= ... <= x_n <= 1,  sum_i m_{j,i} x_{s(i)} = k_j }.
It is parametrized as x = origin + sum_l y_l * direction_l with an integer
kernel basis as directions; the (n-t)-dimensional volume is the Lebesgue
volume in y times sqrt(det Gram(directions)).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import OutOfRange, RankDeficient
from .intlinalg import det, gram, integer_kernel, particular_solution, rank
from .perms import PermSet
from .polytope import feasible, normalize, volume, volume_primitive
from .relations import RelationBasis
from .surd import SurdValue

Halfspace = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class LinearCondition:
    """sum_i coeffs[i] * x_i < bound (strict) or <= bound."""

    coeffs: tuple[Fraction, ...]
    bound: Fraction
    strict: bool = False

    def holds_scaled(self, values: Sequence[int], scale: int) -> bool:
        """Test at x_i = values[i] / scale exactly, using integers only."""
        lhs = sum(c * v for c, v in zip(self.coeffs, values))
        rhs = self.bound * scale
        return lhs < rhs if self.strict else lhs <= rhs


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*x(\d+)")


@dataclass(frozen=True)
class RegionSpec:
    """A rational polytope inside [0,1]^n given by linear conditions."""

    n: int
    conditions: tuple[LinearCondition, ...] = ()
    label: str = ""

    @classmethod
    def box(cls, n: int, lo: Sequence = (), hi: Sequence = (), label: str = "") -> "RegionSpec":
        conds = []
        for i, v in enumerate(lo):
            if v is not None:
                conds.append(LinearCondition(_unit(n, i, -1), -Fraction(v)))
        for i, v in enumerate(hi):
            if v is not None:
                conds.append(LinearCondition(_unit(n, i, 1), Fraction(v)))
        return cls(n, tuple(conds), label)

    @classmethod
    def parse(cls, n: int, text: str) -> "RegionSpec":
        """Conditions like "x1<1/3" or "x1+2*x3>=1/2", separated by ',' or ';'."""
        conds = []
        for part in re.split(r"[;,]", text):
            part = part.strip()
            if not part:
                continue
            m = re.match(r"(.+?)(<=|>=|<|>)(.+)$", part)
            if not m:
                raise ValueError(f"cannot parse region condition {part!r}")
            lhs, op, rhs = m.group(1), m.group(2), Fraction(m.group(3).strip())
            coeffs = [Fraction(0)] * n
            consumed = 0
            for t in _TERM.finditer(lhs):
                sign = -1 if t.group(1) == "-" else 1
                c = Fraction(t.group(2)) if t.group(2) else Fraction(1)
                i = int(t.group(3))
                if not 1 <= i <= n:
                    raise ValueError(f"coordinate x{i} out of range 1..{n}")
                coeffs[i - 1] += sign * c
                consumed += len(t.group(0).replace(" ", ""))
            if consumed != len(lhs.replace(" ", "")):
                raise ValueError(f"cannot parse linear form {lhs!r}")
            if op in (">", ">="):
                coeffs = [-c for c in coeffs]
                rhs = -rhs
            conds.append(LinearCondition(tuple(coeffs), rhs, op in ("<", ">")))
        return cls(n, tuple(conds), text)

    def contains_scaled(self, values: Sequence[int], scale: int) -> bool:
        return all(c.holds_scaled(values, scale) for c in self.conditions)

    def halfspaces(self) -> list[Halfspace]:
        return [(c.coeffs, c.bound) for c in self.conditions]


def _unit(n: int, i: int, s: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(s if j == i else 0) for j in range(n))


def sorted_cube_halfspaces(n: int) -> list[Halfspace]:
    """0 <= x_1 <= x_2 <= ... <= x_n <= 1."""
    out = [(_unit(n, 0, -1), Fraction(0))]
    for i in range(n - 1):
        a = [Fraction(0)] * n
        a[i], a[i + 1] = Fraction(1), Fraction(-1)
        out.append((tuple(a), Fraction(0)))
    out.append((_unit(n, n - 1, 1), Fraction(1)))
    return out


@dataclass(frozen=True)
class SlicePolytope:
    sigma: tuple[int, ...]
    k: tuple[int, ...]
    param_dim: int
    halfspaces: tuple[Halfspace, ...]
    gram_factor: SurdValue
    origin: tuple[Fraction, ...]
    directions: tuple[tuple[int, ...], ...]

    def point(self, y: Sequence) -> list[Fraction]:
        x = list(self.origin)
        for coef, d in zip(y, self.directions):
            for i, v in enumerate(d):
                x[i] += coef * v
        return x

    def is_empty(self) -> bool:
        return not feasible(self.halfspaces, self.param_dim)


@dataclass(frozen=True)
class _Frame:
    """Per-permutation data shared by every k."""

    matrix: tuple[tuple[int, ...], ...]
    directions: tuple[tuple[int, ...], ...]
    unit_solutions: tuple[tuple[Fraction, ...], ...]
    gram_factor: SurdValue


def permuted_matrix(basis: RelationBasis, sigma: Sequence[int]) -> list[list[int]]:
    """Rows of sum_i m_{j,i} x_{sigma(i)} as coefficient vectors in x."""
    n = basis.n
    out = []
    for row in basis.left:
        r = [0] * n
        for i in range(n):
            r[sigma[i] - 1] += row[i]
        out.append(r)
    return out


@lru_cache(maxsize=4096)
def _frame(matrix: tuple[tuple[int, ...], ...], n: int) -> _Frame:
    rows = [list(r) for r in matrix]
    t = len(rows)
    if rank(rows) < t:
        raise RankDeficient("relation rows are linearly dependent")
    directions = tuple(tuple(v) for v in integer_kernel(rows, n))
    units = []
    for j in range(t):
        e = [int(i == j) for i in range(t)]
        units.append(tuple(particular_solution(rows, e)))
    g = SurdValue.sqrt(det(gram(directions))) if directions else SurdValue(Fraction(1))
    return _Frame(matrix, directions, tuple(units), g)


def _frame_for(basis: RelationBasis, sigma: Sequence[int]) -> _Frame:
    return _frame(tuple(tuple(r) for r in permuted_matrix(basis, sigma)), basis.n)


def _slice(frame: _Frame, sigma, k: Sequence[int], extra: Iterable[Halfspace], n: int) -> SlicePolytope:
    origin = [Fraction(0)] * n
    for kj, u in zip(k, frame.unit_solutions):
        if kj:
            for i in range(n):
                origin[i] += kj * u[i]
    d = len(frame.directions)
    halfspaces = []
    for a, b in list(sorted_cube_halfspaces(n)) + list(extra):
        new_a = tuple(sum(a[i] * v[i] for i in range(n)) for v in frame.directions)
        new_b = b - sum(a[i] * origin[i] for i in range(n))
        halfspaces.append((new_a, new_b))
    return SlicePolytope(tuple(sigma), tuple(k), d, tuple(halfspaces), frame.gram_factor,
                         tuple(origin), frame.directions)


def k_ranges(basis: RelationBasis, sigma: Sequence[int]) -> list[tuple[int, int]]:
    """Range of each row over the sorted cube, from its n+1 vertices (0,..,0,1,..,1)."""
    out = []
    for r in permuted_matrix(basis, sigma):
        values = [sum(r[len(r) - s:]) if s else 0 for s in range(len(r) + 1)]
        out.append((math.ceil(min(values)), math.floor(max(values))))
    return out


def enumerate_k_vectors(basis: RelationBasis, sigma: Sequence[int],
                        region: Optional[RegionSpec] = None) -> list[tuple[tuple[int, ...], SlicePolytope]]:
    """Every k whose slice (optionally cut by a region) is nonempty."""
    frame = _frame_for(basis, sigma)
    extra = region.halfspaces() if region else []
    out = []
    for k in itertools.product(*(range(lo, hi + 1) for lo, hi in k_ranges(basis, sigma))):
        s = _slice(frame, sigma, k, extra, basis.n)
        if not s.is_empty():
            out.append((k, s))
    return out


def slice_volume(s: SlicePolytope) -> SurdValue:
    if s.param_dim == 0:
        return SurdValue.zero()
    return s.gram_factor * volume(s.halfspaces, s.param_dim)


def _prepare(frame: _Frame, extra: Iterable[Halfspace], n: int):
    """Constraint normals in slice coordinates, fixed per permutation.

    Each entry is (primitive normal, bound numerator, offset numerators per
    k_j, denominator): the bound for a given k is
    (bound - sum_j k_j * offset_j) / denominator.
    """
    out = []
    for a, b in list(sorted_cube_halfspaces(n)) + list(extra):
        raw = [sum(a[i] * v[i] for i in range(n)) for v in frame.directions]
        if any(raw):
            key, _ = normalize(raw, 0)
            first = next(i for i, x in enumerate(raw) if x)
            factor = key[first] / Fraction(raw[first])
        else:
            key, factor = tuple(0 for _ in raw), Fraction(1)
        offsets = [factor * sum(a[i] * u[i] for i in range(n)) for u in frame.unit_solutions]
        base = factor * Fraction(b)
        den = math.lcm(base.denominator, *(o.denominator for o in offsets))
        out.append((key, int(base * den), tuple(int(o * den) for o in offsets), den))
    return out


def _prepared_volume(prepared, k: Sequence[int], dim: int) -> Fraction:
    rows = []
    for key, base, offs, den in prepared:
        num = base
        for kj, o in zip(k, offs):
            num -= kj * o
        rows.append((key, Fraction(num, den)))
    return volume_primitive(rows, dim)


def region_volume(basis: RelationBasis, sigma: Sequence[int],
                  region: Optional[RegionSpec] = None) -> SurdValue:
    frame = _frame_for(basis, sigma)
    if not frame.directions:
        return SurdValue.zero()
    prepared = _prepare(frame, region.halfspaces() if region else [], basis.n)
    dim = len(frame.directions)
    total = Fraction(0)
    for k in itertools.product(*(range(lo, hi + 1) for lo, hi in k_ranges(basis, sigma))):
        total += _prepared_volume(prepared, k, dim)
    return frame.gram_factor * total


def domain_volume(basis: RelationBasis, sigma: Sequence[int]) -> SurdValue:
    return region_volume(basis, sigma, None)


def k_slice_volumes(basis: RelationBasis, sigma: Sequence[int]) -> dict[tuple[int, ...], SurdValue]:
    """Volume of each nonempty k-slice of the domain."""
    return {k: slice_volume(s) for k, s in enumerate_k_vectors(basis, sigma)}


def relation_gram_det(basis: RelationBasis) -> int:
    return det(gram(basis.left))


def conjectured_c(basis: RelationBasis, ghat: PermSet) -> Optional[SurdValue]:
    """sqrt(det Gram(m_1..m_t)) / #Ghat; None when t = n (the domains are points)."""
    if basis.t >= basis.n:
        return None
    return SurdValue.sqrt(relation_gram_det(basis)) / len(ghat)


def volume_sum_over_all_permutations(basis: RelationBasis) -> SurdValue:
    """sum over every s in S_n of vol(D(f, s)); compare with sqrt(det Gram)."""
    total = SurdValue.zero()
    for sigma in itertools.permutations(range(1, basis.n + 1)):
        total = total + domain_volume(basis, sigma)
    return total


def trivial_basis(n: int) -> RelationBasis:
    return RelationBasis(n, ((1,) * n + (0,),))


def en_k(n: int, k: int) -> Fraction:
    """Share of the sorted-cube domain on the slice sum x_i = k."""
    if n < 2 or not 1 <= k <= n - 1:
        raise OutOfRange(f"need 1 <= k <= n-1, got n={n}, k={k}")
    basis = trivial_basis(n)
    sigma = tuple(range(1, n + 1))
    frame = _frame_for(basis, sigma)
    prepared = _prepare(frame, [], n)
    part = _prepared_volume(prepared, (k,), n - 1)
    whole = sum(_prepared_volume(prepared, (j,), n - 1) for j in range(1, n))
    return part / whole
