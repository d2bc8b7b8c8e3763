"""Partitions, permutations and cycle types.

Permutations are in one-line notation on ``{1..n}``. Composition follows
``compose(a, b)(i) == a(b(i))`` everywhere in the package.

Hot loops elsewhere work on raw 0-based tuples (``Permutation.zero_based``)
enumerated by :func:`perms0`, which yields lexicographic order. That order is
the canonical permutation order of the package.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition", "CycleType", "Permutation",
    "conjugate", "is_symmetric", "hook_lengths", "dimension",
    "enumerate_partitions", "enumerate_permutations",
    "cycle_type", "compose", "inverse", "sign", "class_size",
    "moved_points", "perms0", "cycle_type0", "class_labels0",
    "PARTITION_CAP", "PERMUTATION_CAP",
]

PARTITION_CAP = 30
PERMUTATION_CAP = 9


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    The empty partition (of 0) is allowed; it is the base case of the
    border-strip recursion.
    """

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(x) for x in parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"``; unsorted input is rejected, not sorted."""
        try:
            parts = [int(x) for x in text.replace(" ", "").split(",") if x]
        except ValueError:
            raise ValueError(f"cannot parse partition {text!r}") from None
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


# A cycle type is just a partition of n; fixed points are parts equal to 1.
CycleType = Partition


class Permutation(tuple):
    """Bijection of ``{1..n}`` stored as its one-line images."""

    def __new__(cls, images: Iterable[int]) -> "Permutation":
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_zero_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(x + 1 for x in images)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(4, [(1, 2), (3, 4)])``."""
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            if seen.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError(f"cycles are not disjoint: {cycles}")
            seen.update(cyc)
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a - 1] = b
        return cls(images)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        out = []
        seen = set()
        for start in range(1, len(self) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self[start - 1]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self[j - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        return f"Permutation({list(self)!r})"

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "(1)"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def conjugate(p: Partition) -> Partition:
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part > j) for j in range(p[0]))


def is_symmetric(p: Partition) -> bool:
    return tuple(p) == tuple(conjugate(p))


def hook_lengths(p: Partition) -> list[list[int]]:
    conj = conjugate(p)
    return [[p[i] - j + conj[j] - i - 1 for j in range(p[i])] for i in range(len(p))]


def dimension(p: Partition) -> int:
    """Dimension of the irreducible representation, by the hook-length formula."""
    prod = 1
    for row in hook_lengths(p):
        for h in row:
            prod *= h
    return math.factorial(p.n) // prod


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in descending lexicographic order."""
    if not 1 <= n <= PARTITION_CAP:
        raise ValueError(f"n={n} outside supported range 1..{PARTITION_CAP}")
    return list(_partitions_cached(n))


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    out = []

    def rec(remaining: int, largest: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def _check_perm_cap(n: int) -> None:
    if not 1 <= n <= PERMUTATION_CAP:
        raise ValueError(f"n={n} outside enumeration range 1..{PERMUTATION_CAP}")


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """Stream S_n in lexicographic order of one-line notation."""
    _check_perm_cap(n)
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


@lru_cache(maxsize=4)
def perms0(n: int) -> tuple[tuple[int, ...], ...]:
    """All 0-based permutations of ``range(n)`` in lexicographic order."""
    _check_perm_cap(n)
    return tuple(itertools.permutations(range(n)))


def cycle_type0(p: Sequence[int]) -> CycleType:
    lengths = []
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return Partition(lengths)


@lru_cache(maxsize=4)
def class_labels0(n: int) -> tuple[CycleType, ...]:
    """Cycle type of every permutation in ``perms0(n)``, same order."""
    return tuple(cycle_type0(p) for p in perms0(n))


def _same_n(a: Permutation, b: Permutation) -> None:
    if len(a) != len(b):
        raise ValueError(f"permutations on different n: {len(a)} vs {len(b)}")


def cycle_type(s: Permutation) -> CycleType:
    return cycle_type0(s.zero_based)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``compose(a, b)(i) == a(b(i))``."""
    _same_n(a, b)
    return Permutation(a[x - 1] for x in b)


def inverse(s: Permutation) -> Permutation:
    out = [0] * len(s)
    for i, x in enumerate(s, start=1):
        out[x - 1] = i
    return Permutation(out)


def sign(s: Permutation) -> int:
    return -1 if (len(s) - len(cycle_type(s))) % 2 else 1


def moved_points(t: CycleType) -> int:
    return sum(part for part in t if part > 1)


def class_size(t: CycleType) -> int:
    denom = 1
    for k, mult in Counter(t).items():
        denom *= k ** mult * math.factorial(mult)
    return math.factorial(t.n) // denom
