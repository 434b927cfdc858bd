"""Certified complex root enclosures.

Approximations come from mpmath's simultaneous iteration followed by Newton
polishing.  Certification is exact: every approximation is rounded to a dyadic
Gaussian rational, the Weierstrass corrections are evaluated in exact integer
arithmetic, and Gerschgorin discs of the associated companion-type matrix give
one disc per root.  Disjoint discs contain exactly one root each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from .errors import NonSquarefree, PrecisionExhausted
from .poly import IntPolynomial, is_squarefree

BASE_LEVEL = 64
MAX_ESCALATIONS = 8


@dataclass(frozen=True)
class RootEnclosure:
    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction
    index: int

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def midpoint(self) -> tuple[Fraction, Fraction]:
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def approx(self) -> complex:
        re, im = self.midpoint()
        return complex(float(re), float(im))

    def mp_midpoint(self) -> mpmath.mpc:
        re, im = self.midpoint()
        return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator,
                          mpmath.mpf(im.numerator) / im.denominator)

    def contains(self, other: "RootEnclosure") -> bool:
        return (self.re_lo <= other.re_lo and other.re_hi <= self.re_hi
                and self.im_lo <= other.im_lo and other.im_hi <= self.im_hi)

    def meets(self, other: "RootEnclosure") -> bool:
        return not (self.re_hi < other.re_lo or other.re_hi < self.re_lo
                    or self.im_hi < other.im_lo or other.im_hi < self.im_lo)

    def intersect(self, other: "RootEnclosure") -> "RootEnclosure":
        return RootEnclosure(max(self.re_lo, other.re_lo), min(self.re_hi, other.re_hi),
                             max(self.im_lo, other.im_lo), min(self.im_hi, other.im_hi),
                             self.index)


@dataclass(frozen=True)
class RootSet:
    """Certified roots in canonical order plus the numbering alpha_i -> canonical index."""

    f: IntPolynomial
    enclosures: tuple[RootEnclosure, ...]
    numbering: tuple[int, ...]
    precision_bits: int

    def box(self, i: int) -> RootEnclosure:
        """Enclosure of alpha_i (1-based, after numbering)."""
        return self.enclosures[self.numbering[i - 1] - 1]

    def numbered(self) -> list[RootEnclosure]:
        return [self.box(i) for i in range(1, self.f.degree + 1)]

    def approx(self) -> list[complex]:
        return [b.approx() for b in self.numbered()]

    def refine(self, precision_bits: int) -> "RootSet":
        if precision_bits <= self.precision_bits:
            return self
        fresh = complex_roots(self.f, precision_bits)
        return replace(fresh, numbering=self.numbering)

    def with_numbering(self, numbering: Sequence[int]) -> "RootSet":
        numbering = tuple(int(i) for i in numbering)
        if sorted(numbering) != list(range(1, self.f.degree + 1)):
            raise ValueError(f"numbering {numbering} is not a permutation")
        return replace(self, numbering=numbering)

    def numbering_from_values(self, values: Sequence[complex]) -> "RootSet":
        """Numbering that sends alpha_i to the enclosure nearest ``values[i-1]``."""
        mids = [b.approx() for b in self.enclosures]
        numbering = []
        for v in values:
            dists = sorted((abs(complex(v) - m), j + 1) for j, m in enumerate(mids))
            if len(dists) > 1 and dists[1][0] < 4 * dists[0][0] + 1e-9:
                raise ValueError(f"value {v} does not single out one root")
            numbering.append(dists[0][1])
        return self.with_numbering(numbering)

    def linear_form(self, coeffs: Sequence[int], constant: int = 0) -> RootEnclosure:
        """Exact box for sum_i coeffs[i-1]*alpha_i - constant."""
        re_lo = re_hi = Fraction(-constant)
        im_lo = im_hi = Fraction(0)
        for c, b in zip(coeffs, self.numbered()):
            if c >= 0:
                re_lo += c * b.re_lo
                re_hi += c * b.re_hi
                im_lo += c * b.im_lo
                im_hi += c * b.im_hi
            else:
                re_lo += c * b.re_hi
                re_hi += c * b.re_lo
                im_lo += c * b.im_hi
                im_hi += c * b.im_lo
        return RootEnclosure(re_lo, re_hi, im_lo, im_hi, 0)


def _sqrt_up(x: Fraction, bits: int) -> Fraction:
    scaled = x * (1 << (2 * bits))
    m = -((-scaled.numerator) // scaled.denominator)
    r = math.isqrt(m)
    if r * r < m:
        r += 1
    return Fraction(r, 1 << bits)


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-(x.numerator << bits)) // x.denominator), 1 << bits)


def _to_scaled_int(v: mpmath.mpf, bits: int) -> int:
    """round(v * 2^bits), computed exactly from the binary representation."""
    sign, man, exp, _ = v._mpf_
    man = -int(man) if sign else int(man)
    shift = exp + bits
    if shift >= 0:
        return man << shift
    return (man + (1 << (-shift - 1))) >> -shift


def _approximate(coeffs_high: tuple[int, ...], bits: int) -> list[mpmath.mpc]:
    """Root approximations with roughly ``bits`` correct bits (not certified)."""
    n = len(coeffs_high) - 1
    with mpmath.workprec(96):
        steps, extra = 200, 64
        while True:
            try:
                approx = mpmath.polyroots(list(coeffs_high), maxsteps=steps, extraprec=extra)
                break
            except mpmath.libmp.libhyper.NoConvergence:
                steps, extra = steps * 2, extra * 2
                if steps > 20000:
                    raise PrecisionExhausted("initial root approximation did not converge")
    approx = [mpmath.mpc(z) for z in approx]
    prec = 96
    while prec < bits + 32:
        prec = min(2 * prec, bits + 32)
        with mpmath.workprec(prec + 16):
            for i, z in enumerate(approx):
                for _ in range(2):
                    fz = mpmath.polyval(list(coeffs_high), z, derivative=True)
                    if fz[1] == 0:
                        break
                    z = z - fz[0] / fz[1]
                approx[i] = z
    if n == 1:
        approx = [mpmath.mpc(-coeffs_high[1])]
    return approx


def _certify_level(f: IntPolynomial, level: int) -> Optional[list[RootEnclosure]]:
    """Disjoint enclosures of width <= 2^-level, or None if certification failed."""
    n = f.degree
    full = f.full_coeffs()
    coeffs_high = tuple(reversed(full))
    work = level + 24
    for _ in range(MAX_ESCALATIONS):
        approx = _approximate(coeffs_high, work)
        K = work
        s = 1 << K
        pts = [(_to_scaled_int(z.real, K), _to_scaled_int(z.imag, K)) for z in approx]
        if len(set(pts)) < n:
            work *= 2
            continue
        boxes = []
        ok = True
        for i, (X, Y) in enumerate(pts):
            # f(z) * s^n by Horner on Gaussian integers
            fr, fi = 1, 0
            for j in range(n - 1, -1, -1):
                fr, fi = fr * X - fi * Y, fr * Y + fi * X
                fr += full[j] * s ** (n - j)
            # prod_{j != i} (z_i - z_j) * s^(n-1)
            pr, pi = 1, 0
            for j, (X2, Y2) in enumerate(pts):
                if j != i:
                    dr, di = X - X2, Y - Y2
                    pr, pi = pr * dr - pi * di, pr * di + pi * dr
            den = (pr * pr + pi * pi) * s
            # W = F / (P s) = F conj(P) / (|P|^2 s)
            wr = Fraction(fr * pr + fi * pi, den)
            wi = Fraction(fi * pr - fr * pi, den)
            cr = Fraction(X, s) - wr
            ci = Fraction(Y, s) - wi
            rad = _sqrt_up((wr * wr + wi * wi) * (n - 1) ** 2, K + 8) if n > 1 else Fraction(0)
            rb = K + 8
            box = RootEnclosure(_floor_dyadic(cr - rad, rb), _ceil_dyadic(cr + rad, rb),
                                _floor_dyadic(ci - rad, rb), _ceil_dyadic(ci + rad, rb), i + 1)
            if box.width > Fraction(1, 1 << level):
                ok = False
                break
            boxes.append(box)
        if ok and all(not a.meets(b) for i, a in enumerate(boxes) for b in boxes[i + 1:]):
            return boxes
        work *= 2
    return None


def _canonical_order(boxes: list[RootEnclosure]) -> list[RootEnclosure]:
    """Sort by real part, treating overlapping real intervals as ties broken by imaginary part."""
    by_re = sorted(boxes, key=lambda b: b.midpoint()[0])
    groups: list[list[RootEnclosure]] = []
    for b in by_re:
        if groups and any(b.re_lo <= g.re_hi and g.re_lo <= b.re_hi for g in groups[-1]):
            groups[-1].append(b)
        else:
            groups.append([b])
    ordered = [b for g in groups for b in sorted(g, key=lambda b: b.midpoint()[1])]
    return [replace(b, index=i + 1) for i, b in enumerate(ordered)]


@lru_cache(maxsize=256)
def _level_boxes(f: IntPolynomial, level: int) -> tuple[RootEnclosure, ...]:
    boxes = _certify_level(f, level)
    if boxes is None:
        raise PrecisionExhausted(f"could not separate the roots of {f} at {level} bits")
    if level == BASE_LEVEL:
        return tuple(_canonical_order(boxes))
    previous = _level_boxes(f, level // 2)
    matched = []
    for old in previous:
        hits = [b for b in boxes if b.meets(old)]
        if len(hits) != 1:
            raise PrecisionExhausted("ambiguous match between refinement levels")
        matched.append(old.intersect(hits[0]))
    return tuple(matched)


def complex_roots(f: IntPolynomial, precision_bits: int = 128,
                  numbering: Optional[Sequence[int]] = None) -> RootSet:
    """Certified enclosures of width <= 2^-precision_bits in canonical order."""
    if precision_bits < BASE_LEVEL:
        raise ValueError("precision_bits must be at least 64")
    if not is_squarefree(f):
        raise NonSquarefree(str(f))
    level = BASE_LEVEL
    while level < precision_bits:
        level *= 2
    boxes = _level_boxes(f, level)
    rs = RootSet(f, boxes, tuple(range(1, f.degree + 1)), level)
    return rs.with_numbering(numbering) if numbering is not None else rs
