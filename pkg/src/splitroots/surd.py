"""Exact numbers of the form q * sqrt(g) with q rational and g squarefree."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MixedRadicands

Number = Union[int, Fraction]


def squarefree_split(n: int) -> tuple[int, int]:
    """(s, g) with n = s^2 * g and g squarefree; n must be positive."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, g = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            g *= d
        d += 1
    return s, g * n


@dataclass(frozen=True, order=False)
class SurdValue:
    q: Fraction
    g: int = 1

    def __post_init__(self):
        q = Fraction(self.q)
        g = int(self.g)
        if g < 1:
            raise ValueError("radicand must be positive")
        s, g = squarefree_split(g)
        q *= s
        if q == 0:
            g = 1
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "g", g)

    @classmethod
    def sqrt(cls, n: int) -> "SurdValue":
        """Exact square root of a nonnegative integer."""
        if n == 0:
            return cls(Fraction(0))
        return cls(Fraction(1), n)

    @classmethod
    def zero(cls) -> "SurdValue":
        return cls(Fraction(0))

    def is_zero(self) -> bool:
        return self.q == 0

    def __add__(self, other) -> "SurdValue":
        other = _coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.g != other.g:
            raise MixedRadicands(f"cannot add {self} and {other}")
        return SurdValue(self.q + other.q, self.g)

    __radd__ = __add__

    def __neg__(self) -> "SurdValue":
        return SurdValue(-self.q, self.g)

    def __sub__(self, other) -> "SurdValue":
        return self + (-_coerce(other))

    def __mul__(self, other) -> "SurdValue":
        other = _coerce(other)
        return SurdValue(self.q * other.q, self.g * other.g)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SurdValue":
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by a zero surd")
        # q1 sqrt(g1) / (q2 sqrt(g2)) = q1 / (q2 g2) * sqrt(g1 g2)
        return SurdValue(self.q / (other.q * other.g), self.g * other.g)

    def squared(self) -> Fraction:
        return self.q * self.q * self.g

    def _key(self) -> Fraction:
        return self.squared() if self.q >= 0 else -self.squared()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SurdValue(Fraction(other))
        if not isinstance(other, SurdValue):
            return NotImplemented
        return self.q == other.q and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.q, self.g))

    def __lt__(self, other) -> bool:
        return self._key() < _coerce(other)._key()

    def __le__(self, other) -> bool:
        return self._key() <= _coerce(other)._key()

    def __gt__(self, other) -> bool:
        return self._key() > _coerce(other)._key()

    def __ge__(self, other) -> bool:
        return self._key() >= _coerce(other)._key()

    def __float__(self) -> float:
        return float(self.q) * math.sqrt(self.g)

    def __str__(self) -> str:
        base = str(self.q)
        return base if self.g == 1 else f"{base}*sqrt({self.g})"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"q": str(self.q), "g": self.g}

    @classmethod
    def from_json(cls, data: dict) -> "SurdValue":
        return cls(Fraction(data["q"]), int(data["g"]))

    @classmethod
    def parse(cls, text: str) -> "SurdValue":
        """Inverse of ``str``: "3/8", "1/8*sqrt(3)" or "sqrt(3)/8"."""
        text = text.replace(" ", "")
        if "sqrt(" not in text:
            return cls(Fraction(text))
        head, rest = text.split("sqrt(", 1)
        g_text, tail = rest.split(")", 1)
        q = Fraction(head.rstrip("*")) if head.rstrip("*") else Fraction(1)
        if tail.startswith("/"):
            q /= Fraction(tail[1:])
        return cls(q, int(g_text))


def _coerce(x) -> SurdValue:
    if isinstance(x, SurdValue):
        return x
    if isinstance(x, (int, Fraction)):
        return SurdValue(Fraction(x))
    raise TypeError(f"cannot combine SurdValue with {type(x).__name__}")
