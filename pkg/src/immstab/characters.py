"""Irreducible characters of S_n by the Murnaghan-Nakayama rule.

Border strips are removed on the beta-set (first-column hook lengths) of the
shape: removing a strip of length k is moving one bead from position b to
b - k, and the strip height is the number of beads jumped over. Beads are
scanned from the largest, which is the rim walked from the first row, and the
largest remaining cycle length is always removed first.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .combinatorics import (
    CycleType, Partition, class_size, dimension, enumerate_partitions,
    PERMUTATION_CAP,
)

__all__ = [
    "mn_character", "mn_character_uncached", "clear_character_memo",
    "CharacterTable", "TableValidationError", "character_table",
    "class_function", "inner_product", "save_table", "load_table",
    "TableCache", "telemetry",
]

# Observable counters: MN recursion calls, memo hits, cache file hits/misses.
telemetry: Counter = Counter()

_memo: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}


def _beta_set(shape: tuple[int, ...]) -> tuple[int, ...]:
    k = len(shape)
    return tuple(part + k - 1 - i for i, part in enumerate(shape))


def _from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    k = len(beta)
    return tuple(x for x in (b - (k - 1 - i) for i, b in enumerate(beta)) if x > 0)


def _strip_removals(shape: tuple[int, ...], k: int):
    """Yield (remaining shape, sign) for every border strip of length k."""
    beta = _beta_set(shape)
    occupied = set(beta)
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for x in beta if target < x < b)
        rest = [x for x in beta if x != b] + [target]
        yield _from_beta(rest), (-1 if height % 2 else 1)


def _mn(shape: tuple[int, ...], rho: tuple[int, ...], memo) -> int:
    if not rho:
        return 1 if not shape else 0
    key = (shape, rho)
    if memo is not None and key in memo:
        telemetry["mn_memo_hits"] += 1
        return memo[key]
    telemetry["mn_calls"] += 1
    total = 0
    for rest, sgn in _strip_removals(shape, rho[0]):
        total += sgn * _mn(rest, rho[1:], memo)
    if memo is not None:
        # idempotent: concurrent writers store the same value
        memo[key] = total
    return total


def _check_sizes(p: Partition, t: CycleType) -> None:
    if p.n != t.n:
        raise ValueError(f"partition {p} and class {t} have different sizes")


def mn_character(p: Partition, t: CycleType) -> int:
    """Value of the irreducible character of shape ``p`` on cycle type ``t``."""
    p, t = Partition(p), Partition(t)
    _check_sizes(p, t)
    return _mn(tuple(p), tuple(t), _memo)


def mn_character_uncached(p: Partition, t: CycleType) -> int:
    """Same recursion without the memo; used to cross-check the memoized path."""
    p, t = Partition(p), Partition(t)
    _check_sizes(p, t)
    return _mn(tuple(p), tuple(t), None)


def clear_character_memo() -> None:
    _memo.clear()


class TableValidationError(ValueError):
    """A character table failed one of its invariants."""


@dataclass(frozen=True)
class CharacterTable:
    n: int
    partitions: tuple[Partition, ...]
    classes: tuple[CycleType, ...]
    values: tuple[tuple[int, ...], ...]
    class_sizes: tuple[int, ...]

    def value(self, p: Partition, t: CycleType) -> int:
        return self.values[self.partitions.index(p)][self.classes.index(t)]

    def row(self, p: Partition) -> dict[CycleType, int]:
        return dict(zip(self.classes, self.values[self.partitions.index(p)]))

    def validate(self) -> None:
        """Raise TableValidationError naming the first violated invariant."""
        n = self.n
        expected = tuple(enumerate_partitions(n))
        if tuple(self.partitions) != expected:
            raise TableValidationError("partitions: rows must be all partitions of n in descending lex order")
        if tuple(self.classes) != expected:
            raise TableValidationError("classes: columns must be all cycle types of n in descending lex order")
        if list(self.class_sizes) != [class_size(t) for t in self.classes]:
            raise TableValidationError("class_sizes: must equal n!/centralizer order")
        k = len(expected)
        if len(self.values) != k or any(len(r) != k for r in self.values):
            raise TableValidationError("values: must be a square p(n) x p(n) matrix")
        if any(type(v) is not int for r in self.values for v in r):
            raise TableValidationError("integrality: every entry must be an integer")
        ident = self.classes.index(Partition([1] * n))
        for lam, r in zip(self.partitions, self.values):
            if r[ident] != dimension(lam):
                raise TableValidationError(f"identity column: chi_{lam}(id) must equal dimension {dimension(lam)}")
        order = math.factorial(n)
        for a in range(k):
            for b in range(a, k):
                s = sum(c * x * y for c, x, y in zip(self.class_sizes, self.values[a], self.values[b]))
                if s != (order if a == b else 0):
                    raise TableValidationError(
                        f"row orthogonality: rows {self.partitions[a]} and {self.partitions[b]} give {s}")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partitions": [list(p) for p in self.partitions],
            "classes": [list(t) for t in self.classes],
            "class_sizes": list(self.class_sizes),
            # decimal strings: safe beyond 53-bit JSON readers
            "values": [[str(v) for v in r] for r in self.values],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CharacterTable":
        try:
            values = tuple(tuple(_parse_int(v) for v in r) for r in data["values"])
            table = cls(
                n=int(data["n"]),
                partitions=tuple(Partition(p) for p in data["partitions"]),
                classes=tuple(Partition(t) for t in data["classes"]),
                values=values,
                class_sizes=tuple(int(c) for c in data["class_sizes"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TableValidationError(f"schema: {exc}") from exc
        table.validate()
        return table


def _parse_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError(f"not an integer entry: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and v.strip().lstrip("-").isdigit():
        return int(v)
    raise ValueError(f"not an integer entry: {v!r}")


def character_table(n: int) -> CharacterTable:
    if not 1 <= n <= PERMUTATION_CAP:
        raise ValueError(f"n={n} outside supported range 1..{PERMUTATION_CAP}")
    parts = tuple(enumerate_partitions(n))
    values = tuple(tuple(mn_character(lam, t) for t in parts) for lam in parts)
    return CharacterTable(n, parts, parts, values, tuple(class_size(t) for t in parts))


def class_function(table: CharacterTable, p: Partition) -> dict[CycleType, Fraction]:
    return {t: Fraction(v) for t, v in table.row(p).items()}


def inner_product(f: Mapping[CycleType, object], g: Mapping[CycleType, object], n: int) -> Fraction:
    """``(1/n!) * sum_c |c| f(c) g(c)`` over the classes of S_n.

    Both arguments are real-valued here, so no conjugation is applied.
    """
    classes = set(enumerate_partitions(n))
    for name, h in (("f", f), ("g", g)):
        if set(map(Partition, h)) != classes:
            raise ValueError(f"{name} is not defined on exactly the classes of S_{n}")
    total = sum(class_size(t) * Fraction(f[t]) * Fraction(g[t]) for t in classes)
    return total / math.factorial(n)


def save_table(table: CharacterTable, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(table.to_json(), indent=1) + "\n")


def load_table(path) -> CharacterTable:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no character table at {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise TableValidationError(f"schema: not valid JSON ({exc})") from exc
    return CharacterTable.from_json(data)


def default_cache_dir() -> Path:
    env = os.environ.get("IMMANANT_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "immstab"


class TableCache:
    """Character tables persisted as JSON, one file per n."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, n: int) -> Path:
        return self.directory / f"character_table_n{n}.json"

    def get(self, n: int) -> CharacterTable:
        path = self.path(n)
        if path.exists():
            telemetry["table_cache_hits"] += 1
            return load_table(path)
        telemetry["table_cache_misses"] += 1
        table = character_table(n)
        save_table(table, path)
        return table
