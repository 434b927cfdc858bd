"""Compiled split test and root extraction for primes below 2^31.

Same algorithm as ``modpoly.split_roots``: x^p == x decides full splitting,
then gcd(g, (x+a)^((p-1)/2) - 1) with shifts a = 0, 1, 2, ... splits each
factor until all are linear.  Products of residues below 2^31 fit in int64.
"""

import numpy as np
from numba import njit

LIMIT = 1 << 31


@njit(cache=True)
def _powmod_int(b, e, p):
    r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _mulmod(a, b, g, d, p, out, tmp):
    for i in range(2 * d - 1):
        tmp[i] = 0
    for i in range(d):
        ai = a[i]
        if ai != 0:
            for j in range(d):
                tmp[i + j] = (tmp[i + j] + ai * b[j]) % p
    for k in range(2 * d - 2, d - 1, -1):
        c = tmp[k]
        if c != 0:
            base = k - d
            for j in range(d):
                tmp[base + j] = (tmp[base + j] - c * g[j]) % p
            tmp[k] = 0
    for i in range(d):
        out[i] = tmp[i]


@njit(cache=True)
def _pow_linear(shift, e, g, d, p, out):
    """out = (x + shift)^e mod (g, p); g monic of degree d >= 2."""
    base = np.zeros(d, np.int64)
    base[0] = shift % p
    base[1] = 1
    tmp = np.zeros(2 * d, np.int64)
    res = np.zeros(d, np.int64)
    res[0] = 1
    scratch = np.zeros(d, np.int64)
    while e > 0:
        if e & 1:
            _mulmod(res, base, g, d, p, scratch, tmp)
            res[:] = scratch
        e >>= 1
        if e > 0:
            _mulmod(base, base, g, d, p, scratch, tmp)
            base[:] = scratch
    out[:d] = res


@njit(cache=True)
def _degree(a, maxd):
    for k in range(maxd, -1, -1):
        if a[k] != 0:
            return k
    return -1


@njit(cache=True)
def _gcd(a, b, p, width):
    """Monic gcd of a, b (arrays of length width, destroyed); result in a new array."""
    da = _degree(a, width - 1)
    db = _degree(b, width - 1)
    while db >= 0:
        inv = _powmod_int(b[db], p - 2, p)
        while da >= db:
            c = a[da] * inv % p
            shift = da - db
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            da = _degree(a, da)
        a, b = b, a
        da, db = db, da
    out = np.zeros(width, np.int64)
    if da >= 0:
        inv = _powmod_int(a[da], p - 2, p)
        for j in range(da + 1):
            out[j] = a[j] * inv % p
    return out, da


@njit(cache=True)
def _exact_div(a, da, b, db, p, width):
    """Quotient a / b for monic b dividing a."""
    rem = a.copy()
    q = np.zeros(width, np.int64)
    for k in range(da, db - 1, -1):
        c = rem[k]
        if c != 0:
            q[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = (rem[k - db + j] - c * b[j]) % p
    return q


@njit(cache=True)
def _roots_one(f, n, p, out):
    """Fill out[0:n] with the roots of monic f (length n+1) mod p; return False if not split."""
    g = np.zeros(n + 1, np.int64)
    for i in range(n + 1):
        g[i] = f[i] % p
    if n == 1:
        out[0] = (-g[0]) % p
        return True
    # split test: x^p mod g == x
    h = np.zeros(n, np.int64)
    xp = np.zeros(n, np.int64)
    base = np.zeros(n, np.int64)
    base[1] = 1
    tmp = np.zeros(2 * n, np.int64)
    res = np.zeros(n, np.int64)
    res[0] = 1
    e = p
    while e > 0:
        if e & 1:
            _mulmod(res, base, g, n, p, h, tmp)
            res[:] = h
        e >>= 1
        if e > 0:
            _mulmod(base, base, g, n, p, h, tmp)
            base[:] = h
    xp[:] = res
    if xp[1] != 1 or xp[0] != 0:
        return False
    for i in range(2, n):
        if xp[i] != 0:
            return False
    # equal-degree splitting with an explicit stack of factors
    width = n + 1
    stack = np.zeros((n, width), np.int64)
    degs = np.zeros(n, np.int64)
    shifts = np.zeros(n, np.int64)
    stack[0, :] = g
    degs[0] = n
    top = 1
    found = 0
    half = (p - 1) // 2
    powbuf = np.zeros(width, np.int64)
    while top > 0:
        top -= 1
        fac = stack[top].copy()
        d = degs[top]
        a = shifts[top]
        if d == 1:
            out[found] = (-fac[0]) % p
            found += 1
            continue
        while True:
            for i in range(width):
                powbuf[i] = 0
            _pow_linear(a, half, fac, d, p, powbuf)
            powbuf[0] = (powbuf[0] - 1) % p
            u, du = _gcd(fac.copy(), powbuf.copy(), p, width)
            a += 1
            if du > 0 and du < d:
                v = _exact_div(fac, d, u, du, p, width)
                stack[top, :] = u
                degs[top] = du
                shifts[top] = a
                stack[top + 1, :] = v
                degs[top + 1] = d - du
                shifts[top + 1] = a
                top += 2
                break
            if a > p:
                return False
    out[:n].sort()
    return True


@njit(cache=True)
def split_batch(f, primes):
    """For each prime: split flag and sorted roots (rows of an (m, n) array)."""
    n = f.shape[0] - 1
    m = primes.shape[0]
    ok = np.zeros(m, np.bool_)
    roots = np.zeros((m, n), np.int64)
    buf = np.zeros(n, np.int64)
    for i in range(m):
        if _roots_one(f, n, primes[i], buf):
            ok[i] = True
            roots[i, :] = buf
    return ok, roots
