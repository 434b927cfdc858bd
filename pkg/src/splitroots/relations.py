"""Integer linear relations among the complex roots.

A relation is an integer vector (l_1, ..., l_n, l) with sum l_i alpha_i = l.
Candidates come from lattice reduction on numerical roots; each one is then
certified exactly: delta = sum l_i alpha_i - l is an algebraic integer whose
conjugates are bounded by B, so a nonzero delta has |delta| >= B^(1-d) when d
bounds the degree of the splitting field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidDegreeBound, PrecisionExhausted
from .intlinalg import hnf, is_primitive, lll_reduce, saturate
from .poly import IntPolynomial, root_magnitude_bound
from .roots import RootSet

CERTIFIED = "Certified"
REFUTED = "Refuted"
HEURISTIC = "HeuristicOnly"

MAX_CERT_PRECISION = 1 << 16
GUARD_BITS = 32


@dataclass(frozen=True)
class CertificationReport:
    status: str
    precision_used: int
    degree_bound_used: int
    defect_bound: Fraction

    def to_json(self) -> dict:
        return {"status": self.status, "precision_used": self.precision_used,
                "degree_bound_used": self.degree_bound_used,
                "defect_bound": str(self.defect_bound)}


@dataclass(frozen=True)
class RelationBasis:
    """Rows (m_1, ..., m_n, m) of a primitive basis of the relation lattice."""

    n: int
    rows: tuple[tuple[int, ...], ...]
    numbering: tuple[int, ...] = ()
    certification: tuple[CertificationReport, ...] = field(default=(), compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not self.numbering:
            object.__setattr__(self, "numbering", tuple(range(1, self.n + 1)))
        if any(len(r) != self.n + 1 for r in rows):
            raise ValueError("every relation row needs n+1 entries")

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def left(self) -> list[list[int]]:
        return [list(r[:-1]) for r in self.rows]

    @property
    def constants(self) -> list[int]:
        return [r[-1] for r in self.rows]

    def hnf(self) -> list[list[int]]:
        return hnf([list(r) for r in self.rows])

    def same_lattice(self, other: "RelationBasis") -> bool:
        return self.hnf() == other.hnf()

    def is_primitive(self) -> bool:
        return is_primitive(self.left)

    def to_json(self) -> dict:
        return {"n": self.n, "t": self.t, "rows": [list(r) for r in self.rows],
                "numbering": list(self.numbering)}

    @classmethod
    def from_json(cls, data: dict) -> "RelationBasis":
        rows = tuple(tuple(r) for r in data["rows"])
        if "t" in data and data["t"] != len(rows):
            raise ValueError("t does not match the number of rows")
        return cls(int(data["n"]), rows, tuple(data.get("numbering", ())))

    @classmethod
    def trivial(cls, f: IntPolynomial) -> "RelationBasis":
        n = f.degree
        return cls(n, ((1,) * n + (-f.coeffs[-1],),))


def _required_precision(l: Sequence[int], bound_b: int, d: int) -> int:
    weight = sum(abs(c) for c in l[:-1]) + 1
    return math.ceil((d - 1) * math.log2(max(bound_b, 2))) + weight.bit_length() + 8


def _conjugate_bound(f: IntPolynomial, l: Sequence[int]) -> int:
    return sum(abs(c) for c in l[:-1]) * root_magnitude_bound(f) + abs(l[-1])


def _classify(rs: RootSet, l: Sequence[int], threshold_sq: Fraction):
    box = rs.linear_form(l[:-1], l[-1])
    upper_sq = max(box.re_lo ** 2, box.re_hi ** 2) + max(box.im_lo ** 2, box.im_hi ** 2)
    if upper_sq < threshold_sq:
        return CERTIFIED, upper_sq
    if box.re_lo > 0 or box.re_hi < 0 or box.im_lo > 0 or box.im_hi < 0:
        return REFUTED, upper_sq
    return None, upper_sq


def certify_relation(rootset: RootSet, l: Sequence[int], degree_bound: Optional[int] = None,
                     max_precision: int = MAX_CERT_PRECISION) -> CertificationReport:
    """Decide sum l_i alpha_i == l_{n+1} rigorously (or report HeuristicOnly)."""
    n = rootset.f.degree
    if len(l) != n + 1:
        raise ValueError("relation vector must have n+1 entries")
    if not any(l):
        raise ValueError("relation vector must be nonzero")
    d = math.factorial(n) if degree_bound is None else int(degree_bound)
    if d < 1:
        raise InvalidDegreeBound(f"degree bound must be positive, got {d}")
    B = max(_conjugate_bound(rootset.f, l), 1)
    threshold_sq = Fraction(1, B ** (2 * (d - 1)))
    rs = rootset
    status, upper_sq = _classify(rs, l, threshold_sq)
    if status is None:
        need = _required_precision(l, B, d)
        if need <= max_precision:
            rs = rootset.refine(need)
            status, upper_sq = _classify(rs, l, threshold_sq)
    if status is None:
        status = HEURISTIC
    bound = Fraction(math.isqrt(upper_sq.numerator) + 1, math.isqrt(upper_sq.denominator))
    return CertificationReport(status, rs.precision_bits, d, bound)


def estimate_degree_bound(f: IntPolynomial, X: int = 200_000) -> Optional[int]:
    """Empirical [Q(f):Q] from split density, accepted only if it divides n!."""
    from .split import split_density

    est = split_density(f, X).degree_estimate
    if est >= 1 and math.factorial(f.degree) % est == 0:
        return est
    return None


def resolve_degree_bound(f: IntPolynomial, degree_bound, max_precision: int = MAX_CERT_PRECISION,
                         coeff_bits: int = 16) -> int:
    """'auto' keeps n! when affordable and otherwise uses the checked empirical estimate."""
    n = f.degree
    if degree_bound not in (None, "auto"):
        d = int(degree_bound)
        if d < 1:
            raise InvalidDegreeBound(f"degree bound must be positive, got {d}")
        return d
    full = math.factorial(n)
    if degree_bound is None:
        return full
    probe = [1] * n + [abs(f.coeffs[-1])]
    if _required_precision(probe, _conjugate_bound(f, probe), full) <= max_precision:
        return full
    est = estimate_degree_bound(f)
    return est if est is not None else full


def default_detection_precision(n: int, max_coeff_bits: int) -> int:
    return max(128, GUARD_BITS + (n + 1) * (max_coeff_bits + 4) + 32)


def detect_relations(rootset: RootSet, max_coeff_bits: int = 16,
                     precision_bits: Optional[int] = None, degree_bound="auto",
                     seeds: Sequence[Sequence[int]] = ()) -> RelationBasis:
    """Primitive basis of the relation lattice (complete up to the coefficient bound)."""
    f = rootset.f
    n = f.degree
    prec = precision_bits or default_detection_precision(n, max_coeff_bits)
    d = resolve_degree_bound(f, degree_bound, coeff_bits=max_coeff_bits)
    rs = rootset.refine(prec)
    scale = 1 << (prec - GUARD_BITS)
    values = [b.midpoint() for b in rs.numbered()] + [(Fraction(-1), Fraction(0))]
    lattice = []
    for i, (re, im) in enumerate(values):
        row = [int(i == j) for j in range(n + 1)]
        row.append(round(re * scale))
        row.append(round(im * scale))
        lattice.append(row)
    reduced = lll_reduce(lattice)
    limit = 1 << max_coeff_bits
    residual_limit = (n + 1) << (max_coeff_bits + 8)
    trivial = [1] * n + [-f.coeffs[-1]]
    candidates = [trivial] + [list(map(int, s)) for s in seeds]
    for row in reduced:
        l, resid = row[: n + 1], row[n + 1:]
        if any(l) and max(abs(c) for c in l) < limit and max(abs(c) for c in resid) <= residual_limit:
            candidates.append(l)
    certified = []
    for l in candidates:
        report = certify_relation(rs, l, d)
        if report.status == CERTIFIED:
            certified.append(l)
        elif report.status == HEURISTIC:
            raise PrecisionExhausted(f"relation {l} could be neither certified nor refuted")
    rows = saturate(certified)
    reports = []
    for r in rows:
        report = certify_relation(rs, r, d)
        if report.status != CERTIFIED:
            raise PrecisionExhausted(f"basis row {r} failed certification")
        reports.append(report)
    return RelationBasis(n, tuple(tuple(r) for r in rows), rootset.numbering, tuple(reports))


def mrow_bounds(basis: RelationBasis, j: int) -> tuple[int, int]:
    """Range of sum_i m_{j,i} x_i over the unit cube (row index j is 1-based)."""
    row = basis.rows[j - 1][:-1]
    return sum(min(0, c) for c in row), sum(max(0, c) for c in row)
