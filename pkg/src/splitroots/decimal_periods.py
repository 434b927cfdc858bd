"""Block sums of purely periodic decimal expansions.

For a/b with gcd(10a, b) = 1 and period length e = l*n, the n blocks of l
digits add up to k * (10^l - 1) / L with L = gcd(10^l - 1, b).  The integer k
is computed twice: from the digits and from the residues s_i = 10^(l i) a mod b.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from sympy.ntheory import n_order

from .errors import DoesNotDivide, NotCoprime, OutOfRange
from .poly import IntPolynomial

MAX_DENOMINATOR = 10 ** 12


@dataclass(frozen=True)
class PeriodSplit:
    a: int
    b: int
    e: int
    n: int
    l: int
    L: int
    B: int
    blocks: tuple[int, ...]
    residues: tuple[int, ...]
    k: int

    @property
    def unit(self) -> int:
        """(10^l - 1) / L."""
        return (10 ** self.l - 1) // self.L

    def uniqueness_holds(self) -> bool:
        """For a = 1, n = 2: B*k == 2 mod L and 1 <= k <= L."""
        return (self.B * self.k - 2) % self.L == 0 and 1 <= self.k <= self.L

    def display(self) -> str:
        parts = " + ".join(str(v).zfill(self.l) for v in self.blocks)
        return f"{parts} = {self.k}·{self.unit}, k={self.k}"


def decimal_period(a: int, b: int) -> tuple[int, ...]:
    """Digits of one minimal period of a/b (purely periodic case)."""
    e = multiplicative_order_10(b)
    digits = []
    r = a % b
    for _ in range(e):
        r *= 10
        digits.append(r // b)
        r %= b
    return tuple(digits)


def multiplicative_order_10(b: int) -> int:
    if b == 1:
        return 1
    return int(n_order(10, b))


def period_split(a: int, b: int, n: int) -> PeriodSplit:
    if b > MAX_DENOMINATOR:
        raise OutOfRange(f"denominator {b} exceeds the cap {MAX_DENOMINATOR}")
    if not 0 < a < b:
        raise OutOfRange(f"need 0 < a < b, got a={a}, b={b}")
    if math.gcd(10 * a, b) != 1:
        raise NotCoprime(f"gcd(10*{a}, {b}) != 1")
    if n < 2:
        raise OutOfRange("need n > 1")
    e = multiplicative_order_10(b)
    if e % n:
        raise DoesNotDivide(f"{n} does not divide the period length {e}")
    l = e // n
    # long division in base 10^l yields the blocks directly
    base = 10 ** l
    blocks = []
    r = a
    for _ in range(n):
        q, r = divmod(r * base, b)
        blocks.append(q)
    blocks = tuple(blocks)
    L = math.gcd(10 ** l - 1, b)
    B = b // L
    unit = (10 ** l - 1) // L
    k_digits = Fraction(sum(blocks), unit)
    residues = tuple(pow(10, l * i, b) * a % b for i in range(n))
    k_residues = Fraction(sum(residues), B)
    if k_digits != k_residues or k_digits.denominator != 1:
        raise ArithmeticError(f"block sum and residue sum disagree for {a}/{b}, n={n}")
    return PeriodSplit(a, b, e, n, l, L, B, blocks, residues, int(k_digits))


def cyclotomic_quotient(n: int) -> IntPolynomial:
    """(x^n - 1) / (x - 1) = x^(n-1) + ... + 1."""
    return IntPolynomial((1,) * (n - 1))


def root_sum_k(p: int, n: int) -> int:
    """(1 + sum of the roots of (x^n-1)/(x-1) mod p) / p for a split prime p."""
    from .split import sorted_roots

    roots = sorted_roots(cyclotomic_quotient(n), p).roots
    total = 1 + sum(roots)
    if total % p:
        raise ArithmeticError(f"root sum at {p} is not -1 mod p")
    return total // p


def k_statistic(p: int, n: int) -> int:
    """k of period_split(1, p, n), checked against the root-sum route."""
    if p <= 5:
        raise OutOfRange("need a prime p > 5")
    k = period_split(1, p, n).k
    other = root_sum_k(p, n)
    if k != other:
        raise ArithmeticError(f"period route gives {k}, root-sum route gives {other} at p={p}")
    return k


def k_distribution(n: int, X: int, require_period: bool = False) -> dict[int, Fraction]:
    """Share of each k over split primes p <= X of (x^n-1)/(x-1).

    With ``require_period`` only primes where n divides the period of 1/p count.
    """
    from .split import SplitPrimeStream

    counts: Counter = Counter()
    f = cyclotomic_quotient(n)
    for ps, rs in SplitPrimeStream(f, 5, X).batches():
        for p, roots in zip(ps.tolist(), rs.tolist()):
            if require_period and multiplicative_order_10(p) % n:
                continue
            counts[(1 + sum(roots)) // p] += 1
    total = sum(counts.values())
    return {k: Fraction(c, total) for k, c in sorted(counts.items())}
