"""Monic integer polynomials: parsing, printing and small exact helpers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import WrongDegree


@dataclass(frozen=True)
class IntPolynomial:
    """Monic polynomial x^n + a_{n-1} x^{n-1} + ... + a_0.

    ``coeffs`` holds a_0..a_{n-1}; the leading 1 is implicit.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("degree must be at least 1")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full_coeffs(self) -> list[int]:
        """Coefficients a_0..a_n including the leading 1."""
        return list(self.coeffs) + [1]

    def __call__(self, x):
        acc = 1
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, p: int) -> int:
        acc = 1
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    @classmethod
    def from_full(cls, full: Sequence[int]) -> "IntPolynomial":
        """Build from [a_0, ..., a_n]; the top coefficient must be 1."""
        full = [int(c) for c in full]
        while len(full) > 1 and full[-1] == 0:
            full.pop()
        if len(full) < 2:
            raise ValueError("polynomial must have degree at least 1")
        if full[-1] != 1:
            raise ValueError(f"polynomial is not monic (leading coefficient {full[-1]})")
        return cls(tuple(full[:-1]))

    @classmethod
    def parse(cls, text) -> "IntPolynomial":
        """Parse "x^4 - 2*x^2 + 9", a product like "(x^2+1)*(x^2-2)", or a JSON array."""
        if isinstance(text, IntPolynomial):
            return text
        if isinstance(text, (list, tuple)):
            return cls.from_full(text)
        s = text.strip()
        if s.startswith("["):
            return cls.from_full(json.loads(s))
        import sympy

        x = sympy.Symbol("x")
        expr = sympy.parse_expr(s.replace("^", "**"), local_dict={"x": x})
        poly = sympy.Poly(sympy.expand(expr), x)
        if poly.free_symbols - {x}:
            raise ValueError(f"unexpected symbols in {text!r}")
        if not all(c.is_Integer for c in poly.all_coeffs()):
            raise ValueError(f"non-integer coefficient in {text!r}")
        return cls.from_full([int(c) for c in reversed(poly.all_coeffs())])

    def to_json(self) -> list[int]:
        return self.full_coeffs()

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = 1 if k == self.degree else self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)


# --- rational polynomial helpers (lists of Fractions, low degree first) ---

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def qpoly_rem(a: Sequence, b: Sequence) -> list[Fraction]:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        _trim(a)
    return a


def qpoly_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd over the rationals."""
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        a, b = b, qpoly_rem(a, b)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def derivative(full: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(full)][1:]


def is_squarefree(f: IntPolynomial) -> bool:
    full = f.full_coeffs()
    return len(qpoly_gcd(full, derivative(full))) == 1


def root_magnitude_bound(f: IntPolynomial) -> int:
    """Cauchy bound 1 + max |a_i|."""
    return 1 + max(abs(c) for c in f.coeffs)


def rational_roots(f: IntPolynomial) -> list[int]:
    """All integer roots (the only rational ones for a monic f), ascending."""
    full = f.full_coeffs()
    roots = []
    while full[0] == 0:
        if 0 not in roots:
            roots.append(0)
        full = full[1:]
    if len(full) > 1:
        import sympy

        for d in sympy.divisors(abs(full[0])):
            for r in (d, -d):
                if sum(c * r**i for i, c in enumerate(full)) == 0:
                    roots.append(r)
    return sorted(set(roots))


@dataclass(frozen=True)
class QuarticDecomposition:
    """f(x) = g(h(x)) with h(x) = x^2 + h1 x and g(y) = y^2 + g1 y + g0."""

    h1: Fraction
    g1: Fraction
    g0: Fraction

    def compose(self) -> list[Fraction]:
        c, b, e = self.h1, self.g1, self.g0
        # (x^2 + c x)^2 + b (x^2 + c x) + e
        return [e, b * c, c * c + b, 2 * c, Fraction(1)]


def quartic_decomposable(f: IntPolynomial) -> Optional[QuarticDecomposition]:
    if f.degree != 4:
        raise WrongDegree(f"expected a quartic, got degree {f.degree}")
    a0, a1, a2, a3 = f.coeffs
    if 8 * a1 != a3 * (4 * a2 - a3 * a3):
        return None
    dec = QuarticDecomposition(
        h1=Fraction(a3, 2), g1=Fraction(a2) - Fraction(a3 * a3, 4), g0=Fraction(a0)
    )
    assert dec.compose() == [Fraction(c) for c in f.full_coeffs()]
    return dec
