"""Polynomials over Z/p as coefficient lists (lowest degree first), pure Python.

This is the reference path used for large primes and as the readable
counterpart of the compiled kernel in ``_fastsplit``.
"""

from __future__ import annotations

from typing import Sequence


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a: Sequence[int], p: int) -> list[int]:
    return trim([c % p for c in a])


def monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def mulmod(a: Sequence[int], b: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """a*b mod (g, p) for monic g."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return rem(prod, g, p)


def rem(a: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """a mod (g, p) for monic g."""
    a = [c % p for c in a]
    d = len(g) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            base = k - d
            for j in range(d):
                a[base + j] = (a[base + j] - c * g[j]) % p
            a[k] = 0
    return trim(a[:d] if len(a) > d else a)


def powmod_linear(shift: int, e: int, g: Sequence[int], p: int) -> list[int]:
    """(x + shift)^e mod (g, p)."""
    result = [1]
    base = rem([shift % p, 1], g, p)
    while e:
        if e & 1:
            result = mulmod(result, base, g, p)
        e >>= 1
        if e:
            base = mulmod(base, base, g, p)
    return result


def divmod_poly(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = [c % p for c in a]
    b = trim([c % p for c in b])
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = reduce(a, p)
    b = reduce(b, p)
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p) if a else []


def derivative(a: Sequence[int], p: int) -> list[int]:
    return reduce([i * c for i, c in enumerate(a)][1:], p)


def is_fully_split(full: Sequence[int], p: int) -> bool:
    """x^p == x mod (f, p) for the monic f given by ``full``."""
    if len(full) == 2:
        return True
    return powmod_linear(0, p, full, p) == rem([0, 1], full, p)


def split_roots(full: Sequence[int], p: int) -> list[int]:
    """All roots of a monic f known to split into distinct linear factors mod p."""
    stack = [(reduce(full, p), 0)]
    roots = []
    half = (p - 1) // 2
    while stack:
        g, shift = stack.pop()
        d = len(g) - 1
        if d == 1:
            roots.append(-g[0] % p)
            continue
        while True:
            h = powmod_linear(shift, half, g, p)
            if not h:
                h = [0]
            h[0] = (h[0] - 1) % p
            u = gcd(g, h, p)
            shift += 1
            if 0 < len(u) - 1 < d:
                v, r = divmod_poly(g, u, p)
                assert not r
                stack.append((u, shift))
                stack.append((v, shift))
                break
            if shift > p:
                raise RuntimeError("equal-degree splitting failed; polynomial is not split")
    return sorted(roots)
