"""Statistics of sorted roots mod p over fully split primes.

For every split prime the survey finds the permutations s with
sum_i m_{j,i} r_{s(i)} = m_j (mod p) for all relation rows, keys the prime by
the lexicographically least member of that coset of Ghat, and tallies the
k-vector, residue patterns mod L, region membership and a histogram of r_i/p.
All tallies are integer counts, so counters from disjoint prime ranges merge
by addition and the result does not depend on how the range was split.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import multiprocessing
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (CheckpointMismatch, InsufficientSamples, MissingArtinData, MissingVolume,
                     NoMatch, NoneFound, NotCongruent, OutOfRange)
from .formulas import d_closed
from .geometry import RegionSpec
from .perms import Perm, PermSet, _prefix_rows, coset_rep
from .poly import IntPolynomial
from .relations import RelationBasis
from .split import SortedRootVector, SplitPrimeStream, smallest_split_prime_above
from .surd import SurdValue

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
DEFAULT_CHUNK = 1 << 20
MAX_PATTERNS = 10 ** 7


# ---------------------------------------------------------------- configuration

@dataclass(frozen=True)
class SurveyConfig:
    """What to count and over which primes (start < p <= X)."""

    f: IntPolynomial
    basis: RelationBasis
    ghat: PermSet
    X: int
    g: Optional[PermSet] = None
    start: int = 0
    moduli: tuple[int, ...] = ()
    regions: tuple[RegionSpec, ...] = ()
    bands: int = 0
    root_expressions: tuple[tuple[int, ...], ...] = ()
    chunk_width: int = DEFAULT_CHUNK
    workers: int = 1
    checkpoint_every: int = 0
    checkpoint_path: Optional[str] = None

    def __post_init__(self):
        if self.bands <= 0:
            object.__setattr__(self, "bands", 10 * self.f.degree)
        object.__setattr__(self, "moduli", tuple(int(L) for L in self.moduli))
        if any(L < 2 for L in self.moduli):
            raise OutOfRange("every modulus L must be at least 2")
        if self.chunk_width < 1:
            raise OutOfRange("chunk_width must be positive")

    @classmethod
    def for_exponent(cls, f: IntPolynomial, m: int, **kwargs) -> "SurveyConfig":
        """Threshold X_m: the least split prime above 10^m (itself included)."""
        return cls(f=f, X=smallest_split_prime_above(f, 10 ** m), **kwargs)

    def region_ids(self) -> list[str]:
        return [r.label or f"D{i + 1}" for i, r in enumerate(self.regions)]

    def fingerprint(self) -> dict:
        """Everything that affects the counters (not workers or checkpoint settings)."""
        return {
            "f": self.f.to_json(),
            "rows": [list(r) for r in self.basis.rows],
            "ghat": self.ghat.to_json(),
            "X": self.X,
            "start": self.start,
            "moduli": list(self.moduli),
            "regions": [[r.label, [[[str(c) for c in cond.coeffs], str(cond.bound), cond.strict]
                                   for cond in r.conditions]] for r in self.regions],
            "bands": self.bands,
            "root_expressions": [list(e) for e in self.root_expressions],
            "chunk_width": self.chunk_width,
        }

    def config_hash(self) -> str:
        text = json.dumps(self.fingerprint(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------- counters

@dataclass
class SurveyCounters:
    total_split: int = 0
    per_coset: Counter = field(default_factory=Counter)
    per_coset_k: Counter = field(default_factory=Counter)
    residue: Counter = field(default_factory=Counter)
    region: Counter = field(default_factory=Counter)
    root_band: Counter = field(default_factory=Counter)
    m_mu: Counter = field(default_factory=Counter)
    failed: list = field(default_factory=list)

    _FIELDS = ("per_coset", "per_coset_k", "residue", "region", "root_band", "m_mu")

    def merge(self, other: "SurveyCounters") -> "SurveyCounters":
        out = SurveyCounters(self.total_split + other.total_split)
        for name in self._FIELDS:
            getattr(out, name).update(getattr(self, name))
            getattr(out, name).update(getattr(other, name))
        out.failed = sorted(self.failed + other.failed)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurveyCounters):
            return NotImplemented
        return self.to_json() == other.to_json()

    def to_json(self) -> dict:
        def dump(counter):
            return [[_plain(k), v] for k, v in sorted(counter.items()) if v]

        data = {"total_split": self.total_split, "failed": list(self.failed)}
        for name in self._FIELDS:
            data[name] = dump(getattr(self, name))
        return data

    @classmethod
    def from_json(cls, data: dict) -> "SurveyCounters":
        out = cls(int(data["total_split"]))
        for name in cls._FIELDS:
            getattr(out, name).update({_frozen(k): v for k, v in data.get(name, [])})
        out.failed = [int(p) for p in data.get("failed", [])]
        return out


def _plain(key):
    if isinstance(key, tuple):
        return [_plain(x) for x in key]
    return key


def _frozen(key):
    if isinstance(key, list):
        return tuple(_frozen(x) for x in key)
    return key


def merge_all(parts: Iterable[SurveyCounters]) -> SurveyCounters:
    out = SurveyCounters()
    for part in parts:
        out = out.merge(part)
    return out


# ---------------------------------------------------------------- per-prime work

class _SigmaSearch:
    """Backtracking over images s(1), s(2), ... with rows in prefix form.

    Each prefix row has a last position e among 1..n; once s(1..e-1) are
    fixed, the row pins r_{s(e)} to one residue, found by a dictionary lookup.
    """

    def __init__(self, basis: RelationBasis):
        n = basis.n
        self.n = n
        rows = _prefix_rows([list(r) for r in basis.rows], n)
        self.due: list[list[tuple[tuple[int, ...], int, int]]] = [[] for _ in range(n)]
        self.impossible = False
        for r in rows:
            support = [i for i in range(n) if r[i]]
            if not support:
                if r[n]:
                    self.impossible = True
                continue
            last = support[-1]
            self.due[last].append((tuple(r[:last + 1]), r[n], r[last]))

    def solve(self, p: int, roots: Sequence[int]) -> list[Perm]:
        if self.impossible:
            return []
        n = self.n
        where = {r: i for i, r in enumerate(roots)}
        img = [0] * n
        used = [False] * n
        found: list[Perm] = []
        due = self.due

        def holds(row, const, pos) -> bool:
            total = -const
            for i in range(pos + 1):
                if row[i]:
                    total += row[i] * roots[img[i]]
            return total % p == 0

        def walk(pos: int) -> None:
            if pos == n:
                found.append(tuple(i + 1 for i in img))
                return
            rows = due[pos]
            pinned = None
            for row, const, pivot in rows:
                if pivot % p:
                    partial = const
                    for i in range(pos):
                        if row[i]:
                            partial -= row[i] * roots[img[i]]
                    pinned = where.get(partial * pow(pivot, -1, p) % p, -1)
                    break
            if pinned is not None:
                candidates = (pinned,) if pinned >= 0 and not used[pinned] else ()
            else:
                candidates = [v for v in range(n) if not used[v]]
            for v in candidates:
                img[pos] = v
                if all(holds(row, const, pos) for row, const, _ in rows):
                    used[v] = True
                    walk(pos + 1)
                    used[v] = False

        walk(0)
        return found


def find_sigmas(roots: SortedRootVector, basis: RelationBasis) -> PermSet:
    """Every s in S_n with sum_i m_{j,i} r_{s(i)} = m_j (mod p) for all rows j.

    Raises NoneFound when no permutation qualifies (p below the effective bound).
    """
    found = _SigmaSearch(basis).solve(roots.p, roots.roots)
    if not found:
        raise NoneFound(f"no permutation satisfies the relations mod {roots.p}")
    return PermSet(basis.n, frozenset(found))


def k_vector(roots: SortedRootVector, basis: RelationBasis, sigma: Sequence[int]) -> list[int]:
    """Integers k_j with sum_i m_{j,i} r_{s(i)} = m_j + k_j p."""
    p, r = roots.p, roots.roots
    out = []
    for row in basis.rows:
        total = sum(row[i] * r[sigma[i] - 1] for i in range(basis.n)) - row[-1]
        if total % p:
            raise NotCongruent(f"row {row} fails mod {p} for {tuple(sigma)}")
        out.append(total // p)
    return out


def classify_m_mu(roots: SortedRootVector, root_expressions: Sequence[Sequence[int]]) -> Perm:
    """Least mu with g_i(r_{mu(1)}) = r_{mu(i)} (mod p) for every i.

    ``root_expressions[i]`` lists the coefficients (constant first) of g_{i+1}.
    """
    p, r = roots.p, roots.roots
    where = {v: i for i, v in enumerate(r)}
    matches = []
    for start in r:
        images = []
        for coeffs in root_expressions:
            value = 0
            for c in reversed(coeffs):
                value = (value * start + c) % p
            images.append(where.get(value, -1))
        if -1 not in images and len(set(images)) == len(r):
            matches.append(tuple(i + 1 for i in images))
    if not matches:
        raise NoMatch(f"no root assignment matches the expressions mod {p}")
    return min(matches)


def _band_indices(roots: np.ndarray, ps: np.ndarray, bands: int) -> np.ndarray:
    """floor(bands * r / p) computed in exact integer arithmetic."""
    if int(ps.max()) < (1 << 62) // max(bands, 1):
        return (roots * bands) // ps[:, None]
    return np.array([[int(v) * bands // int(p) for v in row] for row, p in zip(roots, ps)],
                    dtype=np.int64)


def survey_range(config: SurveyConfig, lo: int, hi: int) -> SurveyCounters:
    """Counters for split primes with lo < p <= hi."""
    out = SurveyCounters()
    search = _SigmaSearch(config.basis)
    n = config.f.degree
    order = len(config.ghat)
    full_group = order == math.factorial(n)
    region_ids = config.region_ids()
    rows = config.basis.rows
    for ps, rs in SplitPrimeStream(config.f, max(lo, config.start), hi).batches():
        bands = _band_indices(rs, ps, config.bands)
        for (p, r), band_row in zip(zip(ps.tolist(), rs.tolist()), bands.tolist()):
            if full_group:
                found = None
                rep = tuple(range(1, n + 1))
            else:
                found = search.solve(p, r)
                if len(found) != order:
                    log.info("prime %d: %d permutations, expected %d; excluded", p, len(found), order)
                    out.failed.append(p)
                    continue
                rep = coset_rep(found[0], config.ghat)
            k = []
            for row in rows:
                total = sum(row[i] * r[rep[i] - 1] for i in range(n)) - row[-1]
                if total % p:
                    out.failed.append(p)
                    k = None
                    break
                k.append(total // p)
            if k is None:
                continue
            k = tuple(k)
            out.total_split += 1
            out.per_coset[rep] += 1
            out.per_coset_k[(rep, k)] += 1
            for L in config.moduli:
                out.residue[(rep, k, L, tuple(v % L for v in r))] += 1
            for rid, region in zip(region_ids, config.regions):
                if region.contains_scaled(r, p):
                    out.region[(rep, rid)] += 1
            for i, b in enumerate(band_row):
                out.root_band[(i + 1, b)] += 1
            if config.root_expressions:
                out.m_mu[classify_m_mu(SortedRootVector(p, tuple(r)), config.root_expressions)] += 1
    return out


# ---------------------------------------------------------------- driver

def _chunks(config: SurveyConfig, lo: int) -> list[tuple[int, int]]:
    """Fixed-width ranges anchored at config.start, beginning at lo."""
    width = config.chunk_width
    first = config.start + ((lo - config.start) // width) * width
    out = []
    a = max(lo, first)
    edge = first + width
    while a < config.X:
        b = min(edge, config.X)
        out.append((a, b))
        a, edge = b, edge + width
    return out


def _worker(args):
    config, lo, hi = args
    return lo, hi, survey_range(config, lo, hi)


def write_checkpoint(path: str, config: SurveyConfig, last_prime: int,
                     counters: SurveyCounters) -> None:
    payload = {"version": CHECKPOINT_VERSION, "config_hash": config.config_hash(),
               "last_prime": last_prime, "counters": counters.to_json()}
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def read_checkpoint(path: str, config: SurveyConfig) -> tuple[int, SurveyCounters]:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointMismatch(f"{path}: unsupported checkpoint version {payload.get('version')}")
    if payload.get("config_hash") != config.config_hash():
        raise CheckpointMismatch(f"{path}: checkpoint was written for a different configuration")
    return int(payload["last_prime"]), SurveyCounters.from_json(payload["counters"])


def run_survey(config: SurveyConfig, resume: bool = False, progress=None) -> SurveyCounters:
    """Counters over start < p <= X, optionally resumed from the checkpoint file.

    ``progress`` is called with (upper end of finished range, X).
    """
    counters = SurveyCounters()
    lo = config.start
    if resume and config.checkpoint_path and Path(config.checkpoint_path).exists():
        lo, counters = read_checkpoint(config.checkpoint_path, config)
    ranges = _chunks(config, lo)
    since_checkpoint = 0

    def finish(hi: int, part: SurveyCounters) -> None:
        nonlocal counters, since_checkpoint
        counters = counters.merge(part)
        since_checkpoint += part.total_split + len(part.failed)
        if config.checkpoint_path and config.checkpoint_every and \
                since_checkpoint >= config.checkpoint_every:
            write_checkpoint(config.checkpoint_path, config, hi, counters)
            since_checkpoint = 0
        if progress:
            progress(hi, config.X)

    tasks = [(config, a, b) for a, b in ranges]
    if config.workers > 1 and len(tasks) > 1:
        ctx = multiprocessing.get_context("spawn" if os.name == "nt" else "fork")
        with ctx.Pool(config.workers) as pool:
            for _, hi, part in pool.imap(_worker, tasks):
                finish(hi, part)
    else:
        for task in tasks:
            _, hi, part = _worker(task)
            finish(hi, part)
    if config.checkpoint_path and config.checkpoint_every:
        write_checkpoint(config.checkpoint_path, config, config.X, counters)
    return counters


# ---------------------------------------------------------------- one-dimensional law

def band_cdf(counters: SurveyCounters, i: int, bands: int) -> list[int]:
    """cdf[k] = #{p : r_i / p < k / bands} for k = 0..bands."""
    cdf = [0] * (bands + 1)
    for k in range(1, bands + 1):
        cdf[k] = cdf[k - 1] + counters.root_band.get((i, k - 1), 0)
    return cdf


def diff_metric(counters: SurveyCounters, n: int, bands: int) -> float:
    """max over i and a = k/bands of |1 - share(r_i/p < a) / d_closed(a, i, n)|.

    Grid points where the predicted share is zero are skipped.
    """
    total = counters.total_split
    if not total:
        raise InsufficientSamples("no split primes counted")
    worst = Fraction(0)
    for i in range(1, n + 1):
        cdf = band_cdf(counters, i, bands)
        for k in range(1, bands + 1):
            a = Fraction(k, bands)
            predicted = Fraction(1) if a == 1 else d_closed(a, i, n)
            if predicted == 0:
                continue
            worst = max(worst, abs(1 - Fraction(cdf[k], total) / predicted))
    return float(worst)


def band_uniformity(counters: SurveyCounters, n: int, bands: int, coarse: int = 10) -> float:
    """max over coarse bins of |share of all roots r_i/p in the bin - 1/coarse|."""
    if bands % coarse:
        raise OutOfRange(f"{coarse} bins do not divide {bands} bands")
    step = bands // coarse
    total = counters.total_split * n
    worst = Fraction(0)
    for b in range(coarse):
        hits = sum(counters.root_band.get((i, c), 0)
                   for i in range(1, n + 1) for c in range(b * step, (b + 1) * step))
        worst = max(worst, abs(Fraction(hits, total) - Fraction(1, coarse)))
    return float(worst)


# ---------------------------------------------------------------- conjecture reports

@dataclass(frozen=True)
class CosetRow:
    rep: Perm
    count: int
    share: Fraction
    volume: SurdValue
    predicted: Optional[float]
    in_g: Optional[bool]

    @property
    def ratio(self) -> Optional[float]:
        """share / volume; constant across cosets if the densities follow volume."""
        if self.volume.is_zero():
            return None
        return float(self.share) / float(self.volume)


@dataclass(frozen=True)
class ShareRow:
    """An observed share next to its volume-ratio prediction."""

    rep: Perm
    key: tuple
    empirical: float
    predicted: Optional[float]

    @property
    def diff(self) -> Optional[float]:
        return None if self.predicted is None else self.empirical - self.predicted


@dataclass
class ConjectureReport:
    total: int
    ghat_order: int
    cosets: list[CosetRow]
    share_sum_times_ghat: float
    ratio_spread: Optional[float]
    k_rows: list[ShareRow]
    region_rows: list[ShareRow]
    zero_share_positive_volume: list[Perm]
    single_k: bool
    notes: list[str]


def _ratio(num: SurdValue, den: SurdValue) -> float:
    return float(num) / float(den)


def conjecture_report(counters: SurveyCounters, basis: RelationBasis, ghat: PermSet,
                      g: Optional[PermSet], volumes: dict,
                      slice_volumes: Optional[dict] = None,
                      region_volumes: Optional[dict] = None) -> ConjectureReport:
    """Compare coset, k-slice and region frequencies with exact volume ratios.

    ``volumes`` maps coset representatives to vol(D(f, s)); every observed
    coset needs one.  ``slice_volumes[rep][k]`` and ``region_volumes[(rep, id)]``
    are optional.  Predicted coset shares use c = sqrt(det Gram) / #Ghat.
    """
    from .geometry import conjectured_c

    missing = [rep for rep in counters.per_coset if rep not in volumes]
    if missing:
        raise MissingVolume(f"no volume supplied for coset {missing[0]}")
    total = counters.total_split
    if not total:
        raise InsufficientSamples("no split primes counted")
    c = conjectured_c(basis, ghat)
    rows = []
    for rep in sorted(set(volumes) | set(counters.per_coset)):
        count = counters.per_coset.get(rep, 0)
        vol = volumes[rep]
        predicted = None if c is None else _ratio(vol, c) if not vol.is_zero() else 0.0
        rows.append(CosetRow(rep, count, Fraction(count, total), vol, predicted,
                             None if g is None else rep in g))
    ratios = [r.ratio for r in rows if r.ratio is not None and r.count]
    spread = (max(ratios) - min(ratios)) / max(ratios) if ratios else None
    # every prime lies in one coset of #Ghat permutations, so sum_s Pr(s) = #Ghat exactly
    share_sum = float(sum(r.share for r in rows)) * len(ghat)

    k_rows = []
    for (rep, k), count in sorted(counters.per_coset_k.items()):
        predicted = None
        if slice_volumes and rep in slice_volumes and not volumes[rep].is_zero():
            part = slice_volumes[rep].get(k, SurdValue.zero())
            predicted = _ratio(part, volumes[rep])
        k_rows.append(ShareRow(rep, k, count / counters.per_coset[rep], predicted))
    observed_k = {}
    for (rep, k) in counters.per_coset_k:
        observed_k.setdefault(rep, set()).add(k)
    single_k = all(len(ks) == 1 for ks in observed_k.values())

    region_rows = []
    for (rep, rid), vol in sorted((region_volumes or {}).items()):
        base = counters.per_coset.get(rep, 0)
        if not base:
            continue
        predicted = None if volumes[rep].is_zero() else _ratio(vol, volumes[rep])
        region_rows.append(ShareRow(rep, (rid,), counters.region.get((rep, rid), 0) / base,
                                    predicted))

    flags = [r.rep for r in rows if r.count == 0 and not r.volume.is_zero()]
    notes = []
    if single_k:
        notes.append("one k-vector per coset: the per-k comparison is trivially exact")
    if flags:
        notes.append(f"{len(flags)} coset(s) with positive volume were never observed")
    return ConjectureReport(total, len(ghat), rows, share_sum, spread, k_rows, region_rows,
                            flags, single_k, notes)


# ---------------------------------------------------------------- Artin subgroup and patterns

@dataclass(frozen=True)
class ArtinSubgroup:
    m: int
    elements: frozenset
    sample_size: int
    stable: bool

    def __contains__(self, q: int) -> bool:
        return q % self.m in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def _closure(gens: Iterable[int], m: int) -> frozenset:
    group = {1 % m}
    frontier = list(group)
    gens = set(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s % m
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


def artin_subgroup(f: IntPolynomial, m: int, X: int, min_samples: int = 50) -> ArtinSubgroup:
    """Multiplicative closure of {p mod m : p split, p <= X, p coprime to m}.

    ``stable`` is True when the first half of the sample already generates it.
    """
    if m < 2:
        raise OutOfRange("modulus must be at least 2")
    residues = []
    for ps, _ in SplitPrimeStream(f, 0, X).batches():
        residues.extend(int(p) % m for p in ps.tolist() if math.gcd(int(p), m) == 1)
    if len(residues) < min_samples:
        raise InsufficientSamples(f"only {len(residues)} split primes below {X}")
    full = _closure(residues, m)
    half = _closure(residues[: len(residues) // 2], m)
    return ArtinSubgroup(m, full, len(residues), half == full)


def required_moduli(k: Sequence[int], L: int) -> list[int]:
    """The moduli L / gcd(k_j, L) whose Artin data the pattern test needs."""
    return sorted({L // math.gcd(kj, L) for kj in k} - {1})


def r_set(basis: RelationBasis, sigma: Sequence[int], k: Sequence[int], L: int,
          artin: dict) -> frozenset:
    """Residue patterns (R_1..R_n) mod L compatible with the relations.

    A pattern qualifies when some unit q mod L has
    sum_i m_{j,i} R_{s(i)} - m_j = k_j q (mod L) for every row j, and q
    reduces into the Artin subgroup modulo L / gcd(k_j, L) for every j.
    """
    if L < 2:
        raise OutOfRange("L must be at least 2")
    n = basis.n
    if L ** n > MAX_PATTERNS:
        raise OutOfRange(f"{L}^{n} patterns exceed the cap {MAX_PATTERNS}")
    needed = required_moduli(k, L)
    for mod in needed:
        if mod not in artin:
            raise MissingArtinData(f"Artin subgroup modulo {mod} is required")
    units = [q for q in range(1, L) if math.gcd(q, L) == 1]
    allowed = [q for q in units if all(q in artin[mod] for mod in needed)]
    grid = np.indices((L,) * n, dtype=np.int64).reshape(n, -1).T
    # the value of row j at a pattern, taken mod L
    values = []
    for row, kj in zip(basis.rows, k):
        weights = np.zeros(n, dtype=np.int64)
        for i in range(n):
            weights[sigma[i] - 1] += row[i]
        values.append(((grid @ weights) - row[-1]) % L)
    ok = np.zeros(len(grid), dtype=bool)
    for q in allowed:
        hit = np.ones(len(grid), dtype=bool)
        for vals, kj in zip(values, k):
            hit &= vals == (kj * q) % L
        ok |= hit
    return frozenset(tuple(int(x) for x in grid[i]) for i in np.flatnonzero(ok))


@dataclass(frozen=True)
class PatternReport:
    rep: Perm
    k: tuple
    L: int
    pattern_count: int
    samples: int
    max_error: float
    violations: dict

    @property
    def violation_count(self) -> int:
        return sum(self.violations.values())


def conjecture3_report(counters: SurveyCounters, r_sets: dict) -> list[PatternReport]:
    """max over allowed patterns of |share * #patterns - 1| per (rep, k, L).

    Observed patterns outside the allowed set are returned as violations.
    """
    out = []
    for (rep, k, L), allowed in sorted(r_sets.items()):
        samples = counters.per_coset_k.get((rep, tuple(k)), 0)
        seen = {key[3]: c for key, c in counters.residue.items()
                if key[0] == rep and key[1] == tuple(k) and key[2] == L}
        size = len(allowed)
        if samples and size:
            err = max(abs(Fraction(seen.get(pat, 0) * size, samples) - 1) for pat in allowed)
        else:
            err = Fraction(0)
        bad = {pat: c for pat, c in sorted(seen.items()) if pat not in allowed}
        out.append(PatternReport(tuple(rep), tuple(k), L, size, samples, float(err), bad))
    return out


def m_mu_shares(counters: SurveyCounters, group: PermSet) -> dict[str, Fraction]:
    """Share of primes whose mu lies in ``group`` versus outside it."""
    total = sum(counters.m_mu.values())
    if not total:
        raise InsufficientSamples("no M_mu classifications recorded")
    inside = sum(c for mu, c in counters.m_mu.items() if mu in group)
    return {"inside": Fraction(inside, total), "outside": Fraction(total - inside, total)}


# ---------------------------------------------------------------- CSV output

CSV_COLUMNS = ("table", "m_or_X", "key", "empirical", "predicted", "diff", "source")


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.8f}"


def _key(*parts) -> str:
    return " ".join(json.dumps(_plain(p), separators=(",", "")) for p in parts)


def report_rows(label: str, counters: SurveyCounters, config: SurveyConfig,
                report: Optional[ConjectureReport] = None,
                patterns: Sequence[PatternReport] = ()) -> list[dict]:
    """Rows for one threshold; every value is derived from integer counters."""
    n = config.f.degree
    rows = []
    rows.append({"table": "total", "m_or_X": label, "key": "", "empirical": counters.total_split,
                 "predicted": "", "diff": "", "source": "count"})
    for rep, c in sorted(counters.per_coset.items()):
        rows.append({"table": "coset_share", "m_or_X": label, "key": _key(rep),
                     "empirical": _fmt(Fraction(c, counters.total_split)),
                     "predicted": "", "diff": "", "source": "count"})
    if config.basis.t == 1 and counters.total_split:
        rows.append({"table": "diff", "m_or_X": label, "key": f"bands={config.bands}",
                     "empirical": _fmt(diff_metric(counters, n, config.bands)),
                     "predicted": _fmt(0), "diff": "", "source": "d_closed"})
    if report is not None:
        for row in report.cosets:
            rows.append({"table": "coset_pr", "m_or_X": label, "key": _key(row.rep),
                         "empirical": _fmt(row.share), "predicted": _fmt(row.predicted),
                         "diff": _fmt(None if row.predicted is None
                                      else float(row.share) - row.predicted),
                         "source": f"volume={row.volume}"})
        for row in report.k_rows:
            rows.append({"table": "k_share", "m_or_X": label, "key": _key(row.rep, row.key),
                         "empirical": _fmt(row.empirical), "predicted": _fmt(row.predicted),
                         "diff": _fmt(row.diff), "source": "slice volume ratio"})
        for row in report.region_rows:
            rows.append({"table": "region_share", "m_or_X": label, "key": _key(row.rep, row.key),
                         "empirical": _fmt(row.empirical), "predicted": _fmt(row.predicted),
                         "diff": _fmt(row.diff), "source": "region volume ratio"})
    for pr in patterns:
        rows.append({"table": "pattern_error", "m_or_X": label, "key": _key(pr.rep, pr.k, pr.L),
                     "empirical": _fmt(pr.max_error), "predicted": _fmt(0),
                     "diff": pr.violation_count, "source": f"allowed={pr.pattern_count}"})
    return rows


def rows_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


__all__ = [
    "ArtinSubgroup", "ConjectureReport", "CosetRow", "PatternReport", "ShareRow",
    "SurveyConfig", "SurveyCounters", "artin_subgroup", "band_cdf", "band_uniformity",
    "classify_m_mu", "conjecture3_report", "conjecture_report", "diff_metric", "find_sigmas",
    "k_vector", "m_mu_shares", "merge_all", "r_set", "read_checkpoint", "report_rows",
    "required_moduli", "rows_to_csv", "run_survey", "survey_range", "write_checkpoint",
]
