"""Closed-form combinatorics for sorted uniform points: Eulerian numbers,
cube-section volumes and the predicted law of the i-th smallest root."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import OutOfRange

Rational = Union[int, Fraction]


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero unless 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def ramp(x: Rational) -> Fraction:
    return max(Fraction(x), Fraction(0))


@lru_cache(maxsize=None)
def eulerian(n: int, k: int) -> int:
    """A(n, k): permutations of n with k-1 descents (A(1,1) = 1)."""
    if n < 1 or not 1 <= k <= n:
        raise OutOfRange(f"eulerian needs 1 <= k <= n, got n={n}, k={k}")
    if n == 1:
        return 1
    total = 0
    if k >= 2:
        total += (n - k + 1) * eulerian(n - 1, k - 1)
    if k <= n - 1:
        total += k * eulerian(n - 1, k)
    return total


def e_n(n: int, k: int) -> Fraction:
    """Limit share of sum x_i = k among sorted points with integral coordinate sum."""
    if n < 2:
        raise OutOfRange("e_n needs n >= 2")
    return Fraction(eulerian(n - 1, k), math.factorial(n - 1))


def u_volume(k: int, x: Rational) -> Fraction:
    """Volume of {y in [0,1)^k : y_1 + ... + y_k <= x}."""
    if k < 1:
        raise OutOfRange("u_volume needs k >= 1")
    total = sum((-1) ** i * binom(k, i) * ramp(Fraction(x) - i) ** k for i in range(k + 1))
    return Fraction(total, math.factorial(k))


def _d_coefficient(h: int, l: int, i: int, n: int) -> int:
    total = 0
    for k in range(i, n + 1):
        inner = sum(binom(k, n - h - m + l) * binom(n - k, m - l) for m in range(1, n))
        total += (-1) ** (h + k + n) * binom(n, k) * inner
    return total


@lru_cache(maxsize=None)
def d_coefficients(i: int, n: int) -> tuple[tuple[int, int, int], ...]:
    """Nonzero (h, l, coefficient) so that d_closed = sum coef * ramp(l - h a)^(n-1) / (n-1)!."""
    out = []
    for h in range(n + 1):
        for l in range(1, n):
            c = _d_coefficient(h, l, i, n)
            if c:
                out.append((h, l, c))
    return tuple(out)


def _check_d_args(a: Rational, i: int, n: int) -> Fraction:
    a = Fraction(a)
    if n < 2 or not 1 <= i <= n or not 0 <= a < 1:
        raise OutOfRange(f"need n > 1, 1 <= i <= n, 0 <= a < 1; got a={a}, i={i}, n={n}")
    return a


def d_closed(a: Rational, i: int, n: int) -> Fraction:
    """Predicted limit share of split primes with r_i / p < a (no nontrivial relations)."""
    a = _check_d_args(a, i, n)
    total = sum(c * ramp(l - h * a) ** (n - 1) for h, l, c in d_coefficients(i, n))
    return Fraction(total, math.factorial(n - 1))


def c1_coefficient(l: int, h: int, n: int) -> Fraction:
    """Coefficient of ramp(l - h a)^(n-1) in the i = 1 formula."""
    if n < 2 or not 1 <= l <= n - 1 or not 0 <= h <= n:
        raise OutOfRange(f"need 1 <= l <= n-1 and 0 <= h <= n; got l={l}, h={h}, n={n}")
    if h == 0:
        value = (-1) ** (n + l + 1) * binom(n - 1, l)
    elif h <= l:
        value = 0
    else:
        value = (-1) ** (n + h + 1) * binom(n, h)
    return Fraction(value, math.factorial(n - 1))


def d_first_root(a: Rational, n: int) -> Fraction:
    """The i = 1 case through the simpler coefficient table."""
    a = _check_d_args(a, 1, n)
    return sum((c1_coefficient(l, h, n) * ramp(l - h * a) ** (n - 1)
                for h in range(n + 1) for l in range(1, n)), Fraction(0))


@dataclass(frozen=True)
class PolynomialPiece:
    """coefficients[j] multiplies a^j on the interval lo < a <= hi."""

    lo: Fraction
    hi: Fraction
    coefficients: tuple[Fraction, ...]

    def __call__(self, a: Rational) -> Fraction:
        return sum((c * Fraction(a) ** j for j, c in enumerate(self.coefficients)), Fraction(0))

    def __str__(self) -> str:
        terms = []
        for j in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def d_breakpoints(n: int) -> list[Fraction]:
    points = {Fraction(l, h) for h in range(1, n + 1) for l in range(1, n) if Fraction(l, h) < 1}
    return sorted(points | {Fraction(0), Fraction(1)})


def d_piecewise(i: int, n: int) -> list[PolynomialPiece]:
    """d_closed(., i, n) as explicit polynomials between consecutive breakpoints.

    Adjacent intervals with identical polynomials are merged.
    """
    pts = d_breakpoints(n)
    pieces: list[PolynomialPiece] = []
    for lo, hi in zip(pts, pts[1:]):
        mid = (lo + hi) / 2
        coeffs = [Fraction(0)] * n
        for h, l, c in d_coefficients(i, n):
            if l - h * mid > 0:
                # expand c * (l - h a)^(n-1)
                for j in range(n):
                    coeffs[j] += c * binom(n - 1, j) * Fraction(l) ** (n - 1 - j) * (-h) ** j
        coeffs = tuple(x / math.factorial(n - 1) for x in coeffs)
        if pieces and pieces[-1].coefficients == coeffs:
            pieces[-1] = PolynomialPiece(pieces[-1].lo, hi, coeffs)
        else:
            pieces.append(PolynomialPiece(lo, hi, coeffs))
    return pieces


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    n: int
    detail: str
    passed: bool


def identity_suite(n_max: int) -> list[IdentityCheck]:
    """Alternating binomial sums, cube-section differences and partial sums for n <= n_max."""
    if n_max > 12:
        raise OutOfRange("identity_suite supports n_max <= 12")
    checks = []
    for n in range(1, n_max + 1):
        for j in range(n + 1):
            lhs = sum((-1) ** k * k ** j * binom(n, k) for k in range(n + 1))
            rhs = (-1) ** n * math.factorial(n) if j == n else 0
            checks.append(IdentityCheck("alternating_power_sum", n, f"P(x)=x^{j}", lhs == rhs))
        for k in range(1, n + 1):
            diff = u_volume(n, k) - u_volume(n, k - 1)
            direct = Fraction(sum((-1) ** i * binom(n + 1, i) * (k - i) ** n for i in range(k)),
                              math.factorial(n))
            ok = diff == direct == Fraction(eulerian(n, k), math.factorial(n))
            checks.append(IdentityCheck("cube_section_eulerian", n, f"k={k}", ok))
        for m in range(n):
            lhs = sum((-1) ** k * binom(n, k) for k in range(m + 1))
            checks.append(IdentityCheck("alternating_partial_sum", n, f"m={m}",
                                        lhs == (-1) ** m * binom(n - 1, m)))
    return checks
