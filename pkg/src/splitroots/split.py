"""Fully split primes and their sorted local roots."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from . import modpoly
from .errors import NotSplit
from .poly import IntPolynomial
from .primes import is_prime, iter_prime_segments

CACHE_MAGIC = b"SPLR"
CACHE_VERSION = 1


@dataclass(frozen=True)
class SortedRootVector:
    p: int
    roots: tuple[int, ...]


def exclusion_bound(f: IntPolynomial) -> int:
    """Primes at or below this bound are never reported as split."""
    return max(f.degree, 1 + max(abs(c) for c in f.coeffs))


def has_repeated_roots_mod(f: IntPolynomial, p: int) -> bool:
    full = f.full_coeffs()
    return len(modpoly.gcd(full, modpoly.derivative(full, p), p)) > 1


def is_fully_split(f: IntPolynomial, p: int) -> bool:
    return modpoly.is_fully_split(f.full_coeffs(), p)


def sorted_roots(f: IntPolynomial, p: int) -> SortedRootVector:
    full = f.full_coeffs()
    if not modpoly.is_fully_split(full, p):
        raise NotSplit(f"{f} does not split into distinct linear factors mod {p}")
    return SortedRootVector(p, tuple(modpoly.split_roots(full, p)))


def split_batch(f: IntPolynomial, primes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split primes among ``primes`` and their sorted roots as an (m, n) int64 array."""
    primes = np.asarray(primes)
    n = f.degree
    small = primes < _fast_limit() if primes.dtype != object else np.zeros(len(primes), bool)
    fits = all(abs(c) < (1 << 62) for c in f.coeffs)
    out_p, out_r = [], []
    if fits and small.any():
        from ._fastsplit import split_batch as kernel

        fa = np.array(f.full_coeffs(), dtype=np.int64)
        ps = primes[small].astype(np.int64)
        ok, roots = kernel(fa, ps)
        out_p.append(ps[ok])
        out_r.append(roots[ok])
        rest = primes[~small]
    else:
        rest = primes
    if len(rest):
        full = f.full_coeffs()
        big_p, big_r = [], []
        for p in rest:
            p = int(p)
            if modpoly.is_fully_split(full, p):
                big_p.append(p)
                big_r.append(modpoly.split_roots(full, p))
        dtype = np.int64 if all(p < (1 << 63) for p in big_p) else object
        out_p.append(np.array(big_p, dtype=dtype))
        out_r.append(np.array(big_r, dtype=dtype).reshape(len(big_p), n))
    if not out_p:
        return np.zeros(0, np.int64), np.zeros((0, n), np.int64)
    if len(out_p) == 1:
        return out_p[0], out_r[0]
    return np.concatenate(out_p), np.concatenate(out_r)


def _fast_limit() -> int:
    from ._fastsplit import LIMIT

    return LIMIT


@dataclass
class SplitPrimeStream:
    """Split primes p with start < p <= end, in increasing order.

    Primes at or below the exclusion bound and those in ``skip_set`` are
    never produced.  ``cache_path`` names an optional binary record file
    covering a complete scan from 0 up to its last record.
    """

    f: IntPolynomial
    start: int
    end: int
    skip_set: frozenset = field(default_factory=frozenset)
    cache_path: Optional[str] = None
    segment: int = 1 << 20

    def batches(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        lo = max(self.start, exclusion_bound(self.f))
        if lo >= self.end:
            return
        if self.cache_path and Path(self.cache_path).exists():
            cached_p, cached_r = read_cache(self.cache_path, self.f.degree)
            covered = int(cached_p[-1]) if len(cached_p) else 0
            if covered > lo:
                sel = (cached_p > lo) & (cached_p <= self.end)
                yield self._filter(cached_p[sel], cached_r[sel])
                lo = covered
        for chunk in iter_prime_segments(lo, self.end, self.segment):
            ps, rs = split_batch(self.f, chunk)
            if len(ps):
                yield self._filter(ps, rs)

    def _filter(self, ps, rs):
        if self.skip_set:
            keep = np.array([int(p) not in self.skip_set for p in ps], dtype=bool)
            return ps[keep], rs[keep]
        return ps, rs

    def __iter__(self) -> Iterator[SortedRootVector]:
        for ps, rs in self.batches():
            for p, r in zip(ps.tolist(), rs.tolist()):
                yield SortedRootVector(p, tuple(r))

    def to_cache(self, path: str) -> int:
        """Write every split prime in (0, end] to ``path``; returns the record count."""
        full = SplitPrimeStream(self.f, 0, self.end, frozenset(), None, self.segment)
        ps_all, rs_all = [], []
        for ps, rs in full.batches():
            ps_all.append(ps)
            rs_all.append(rs)
        n = self.f.degree
        ps = np.concatenate(ps_all) if ps_all else np.zeros(0, np.int64)
        rs = np.concatenate(rs_all) if rs_all else np.zeros((0, n), np.int64)
        write_cache(path, n, ps, rs)
        return len(ps)


def write_cache(path: str, n: int, primes: np.ndarray, roots: np.ndarray) -> None:
    header = CACHE_MAGIC + struct.pack("<III", CACHE_VERSION, n, 0)
    body = np.concatenate([np.asarray(primes, np.uint64).reshape(-1, 1),
                           np.asarray(roots, np.uint64).reshape(-1, n)], axis=1)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(body.astype("<u8").tobytes())


def read_cache(path: str, n: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    data = Path(path).read_bytes()
    if data[:4] != CACHE_MAGIC:
        raise ValueError(f"{path}: not a split-root cache file")
    version, width, _reserved = struct.unpack("<III", data[4:16])
    if version != CACHE_VERSION:
        raise ValueError(f"{path}: unsupported cache version {version}")
    if n is not None and width != n:
        raise ValueError(f"{path}: cache holds degree {width}, expected {n}")
    body = np.frombuffer(data[16:], dtype="<u8").reshape(-1, width + 1).astype(np.int64)
    return body[:, 0].copy(), body[:, 1:].copy()


def smallest_split_prime_above(f: IntPolynomial, bound: int) -> int:
    """Least split prime strictly greater than ``bound``."""
    lo = bound
    width = 1 << 12
    while True:
        for ps, _ in SplitPrimeStream(f, lo, lo + width).batches():
            if len(ps):
                return int(ps[0])
        lo += width
        width *= 2


@dataclass(frozen=True)
class SplitDensity:
    ratio: Fraction
    degree_estimate: int
    split_count: int
    prime_count: int


def split_density(f: IntPolynomial, X: int) -> SplitDensity:
    """#Spl_X(f) / #{p <= X} and the nearest integer to its reciprocal."""
    total = sum(int(c.size) for c in iter_prime_segments(0, X))
    split = sum(len(ps) for ps, _ in SplitPrimeStream(f, 0, X).batches())
    ratio = Fraction(split, total)
    estimate = round(Fraction(total, split)) if split else 0
    return SplitDensity(ratio, int(estimate), split, total)


__all__ = [
    "SortedRootVector", "SplitPrimeStream", "SplitDensity", "exclusion_bound",
    "has_repeated_roots_mod", "is_fully_split", "is_prime", "sorted_roots",
    "smallest_split_prime_above", "split_batch", "split_density",
    "read_cache", "write_cache",
]
