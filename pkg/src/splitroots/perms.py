"""Permutation groups that preserve a relation lattice, and coset bookkeeping.

Permutations are image tuples (s(1), ..., s(n)) with 1-based entries.  A
permutation acts on vectors by moving coordinate i to position s(i), so
act(s, x)[s(i)] = x[i], and composition is compose(s, v)(i) = s(v(i)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DegreeTooLarge, NotClosed, NotInGhat
from .intlinalg import hnf, integer_kernel, solve_integer
from .relations import RelationBasis

Perm = tuple[int, ...]
MAX_SEARCH_DEGREE = 10


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(s: Sequence[int], v: Sequence[int]) -> Perm:
    return tuple(s[v[i] - 1] for i in range(len(v)))


def inverse(s: Sequence[int]) -> Perm:
    inv = [0] * len(s)
    for i, si in enumerate(s, start=1):
        inv[si - 1] = i
    return tuple(inv)


def act(s: Sequence[int], x: Sequence) -> list:
    """Permute the first n coordinates of x (any extra coordinates stay put)."""
    n = len(s)
    out = list(x)
    for i in range(n):
        out[s[i] - 1] = x[i]
    return out


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a - 1] = b
    return tuple(img)


@dataclass(frozen=True)
class PermSet:
    n: int
    elements: frozenset

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.elements

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[Perm]:
        return sorted(self.elements)

    def is_group(self) -> bool:
        if identity(self.n) not in self.elements:
            return False
        return all(compose(a, b) in self.elements for a in self.elements for b in self.elements)

    def to_json(self) -> list[list[int]]:
        return [list(s) for s in self.sorted()]

    @classmethod
    def of(cls, perms: Iterable[Sequence[int]]) -> "PermSet":
        items = frozenset(tuple(int(a) for a in s) for s in perms)
        n = len(next(iter(items))) if items else 0
        return cls(n, items)


@dataclass(frozen=True)
class CosetDecomposition:
    group: PermSet
    representatives: tuple[Perm, ...]

    def coset(self, rep: Sequence[int]) -> list[Perm]:
        return sorted(compose(rep, g) for g in self.group.elements)


def _prefix_rows(rows: list[list[int]], n: int) -> list[list[int]]:
    """Row basis of the same Q-span whose supports within 1..n end as early as possible."""
    order = list(range(n - 1, -1, -1)) + list(range(n, len(rows[0])))
    permuted = hnf([[r[c] for c in order] for r in rows])
    back = [0] * len(order)
    for pos, c in enumerate(order):
        back[c] = pos
    return [[r[back[c]] for c in range(len(order))] for r in permuted]


def _stabilizer(rows: list[list[int]], n: int, max_degree: int) -> PermSet:
    """All s in S_n with s(row) in the integer row span for every row."""
    if n > max_degree:
        raise DegreeTooLarge(f"permutation search over S_{n} exceeds the cap {max_degree}")
    width = len(rows[0])
    kernel = integer_kernel(rows, width)
    if not kernel:
        return PermSet(n, frozenset(itertools.permutations(range(1, n + 1))))
    checks = _prefix_rows(rows, n)
    # rows grouped by the last position they touch among the first n coordinates
    due: dict[int, list[list[int]]] = {}
    for r in checks:
        last = max((i for i in range(n) if r[i]), default=-1)
        due.setdefault(last, []).append(r)
    for r in due.pop(-1, []):
        if any(sum(r[c] * w[c] for c in range(n, width)) for w in kernel):
            return PermSet(n, frozenset())

    found = []
    img = [0] * n
    used = [False] * (n + 1)

    def ok(pos: int) -> bool:
        for r in due.get(pos, ()):
            for w in kernel:
                total = sum(r[i] * w[img[i] - 1] for i in range(pos + 1))
                total += sum(r[c] * w[c] for c in range(n, width))
                if total:
                    return False
        return True

    def walk(pos: int) -> None:
        if pos == n:
            found.append(tuple(img))
            return
        for v in range(1, n + 1):
            if not used[v]:
                img[pos] = v
                used[v] = True
                if ok(pos):
                    walk(pos + 1)
                used[v] = False

    walk(0)
    # the kernel test is a Q-span test; confirm integrality of the images exactly
    basis = hnf(rows)
    members = [s for s in found
               if all(solve_integer(basis, act(s, r)) is not None for r in basis)]
    return PermSet(n, frozenset(members))


def compute_ghat(basis: RelationBasis, max_degree: int = MAX_SEARCH_DEGREE) -> PermSet:
    return _stabilizer([list(r) for r in basis.rows], basis.n, max_degree)


def compute_g(basis: RelationBasis, max_degree: int = MAX_SEARCH_DEGREE) -> PermSet:
    return _stabilizer(basis.left, basis.n, max_degree)


def coset_rep(s: Sequence[int], group: PermSet) -> Perm:
    """Lexicographically least element of the coset s*group."""
    return min(compose(s, g) for g in group.elements)


def coset_reps(ambient: Iterable[Sequence[int]], group: PermSet) -> CosetDecomposition:
    pool = {tuple(s) for s in ambient}
    reps = set()
    for s in pool:
        coset = [compose(s, g) for g in group.elements]
        missing = [c for c in coset if c not in pool]
        if missing:
            raise NotClosed(f"{s} * {missing[0]} leaves the ambient set")
        reps.add(min(coset))
    return CosetDecomposition(group, tuple(sorted(reps)))


def transition_matrix(nu: Sequence[int], basis: RelationBasis) -> list[list[int]]:
    """Integer matrix A with nu(mhat_j) = sum_l A[j][l] mhat_l."""
    rows = [list(r) for r in basis.rows]
    A = []
    for r in rows:
        coeffs = solve_integer(rows, act(nu, r))
        if coeffs is None:
            raise NotInGhat(f"{tuple(nu)} does not preserve the relation lattice")
        A.append(coeffs)
    return A


def transform_k(nu: Sequence[int], basis: RelationBasis, k: Sequence[int]) -> list[int]:
    """k-vector of s*nu given the k-vector of s."""
    A = transition_matrix(nu, basis)
    return [sum(a * kk for a, kk in zip(row, k)) for row in A]


def parse_perm(text: str, n: Optional[int] = None) -> Perm:
    """Accepts image lists like "[1,3,2]" and cycle notation like "(1,3,6)(2,5)"."""
    text = text.strip()
    if text.startswith("["):
        return tuple(int(a) for a in text.strip("[]").split(","))
    if n is None:
        raise ValueError("cycle notation needs the degree n")
    cycles = []
    for part in text.replace(" ", "").split(")"):
        part = part.lstrip("(")
        if part:
            cycles.append([int(a) for a in part.split(",")])
    return from_cycles(n, cycles)
