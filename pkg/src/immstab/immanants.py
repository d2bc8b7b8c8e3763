"""Exact immanants of rational matrices, with determinant and permanent oracles.

A matrix is a tuple of row tuples of :class:`fractions.Fraction`; use
:func:`rational_matrix` to build one from ints, Fractions or ``"p/q"`` strings.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .characters import mn_character
from .combinatorics import (
    PERMUTATION_CAP, Partition, Permutation, class_labels0, enumerate_partitions,
)
from .exactlinalg import rank

__all__ = [
    "Matrix", "rational_matrix", "identity_matrix", "ones_matrix",
    "transpose", "matmul", "diagonal_matrix", "permutation_matrix",
    "load_matrix", "dump_matrix", "random_integer_matrix",
    "immanant", "determinant_oracle", "permanent_oracle",
    "coefficient_vector", "coefficient_vectors_rank", "act", "telemetry",
]

Matrix = tuple[tuple[Fraction, ...], ...]

# "immanant_terms" counts monomials summed by immanant().
telemetry: Counter = Counter()


def _entry(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError(f"invalid matrix entry {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            pass
    raise ValueError(f"invalid matrix entry {x!r}; expected integer or 'p/q'")


def rational_matrix(rows: Sequence[Sequence]) -> Matrix:
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and non-empty")
    return tuple(tuple(_entry(x) for x in r) for r in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def ones_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(1) for _ in range(n)) for _ in range(n))


def diagonal_matrix(diag: Sequence) -> Matrix:
    n = len(diag)
    return tuple(tuple(Fraction(diag[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def permutation_matrix(s: Permutation) -> Matrix:
    """Q with Q[i][s(i)] = 1."""
    n = len(s)
    return tuple(tuple(Fraction(int(s[i] - 1 == j)) for j in range(n)) for i in range(n))


def transpose(X: Matrix) -> Matrix:
    return tuple(zip(*X))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def random_integer_matrix(n: int, rng: random.Random, low: int = -9, high: int = 9) -> Matrix:
    return rational_matrix([[rng.randint(low, high) for _ in range(n)] for _ in range(n)])


def load_matrix(path) -> Matrix:
    """Read a JSON array of arrays; entries are integers or ``"p/q"`` strings."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix file must hold a JSON array of arrays")
    return rational_matrix(data)


def dump_matrix(X: Matrix) -> list[list]:
    """JSON-ready form: ints where integral, else ``"p/q"`` strings."""
    return [[int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}" for x in row] for row in X]


def _check_square(X: Matrix) -> int:
    n = len(X)
    if n == 0 or any(len(r) != n for r in X):
        raise ValueError("matrix must be square and non-empty")
    return n


def _class_weights(p: Partition) -> list[int]:
    """Character value for each permutation in canonical order, one MN call per class."""
    n = p.n
    labels = class_labels0(n)
    by_class = {t: mn_character(p, t) for t in set(labels)}
    return [by_class[t] for t in labels]


def immanant(p: Partition, X: Sequence[Sequence]) -> Fraction:
    """``sum over S_n of chi_p(s) * prod_i X[i][s(i)]``, exactly.

    Permutations are visited depth-first in lexicographic order, which matches
    ``perms0(n)``, so the running product is extended one row at a time.
    """
    p = Partition(p)
    X = X if isinstance(X, tuple) and all(isinstance(x, Fraction) for r in X for x in r) else rational_matrix(X)
    n = _check_square(X)
    if p.n != n:
        raise ValueError(f"partition of {p.n} does not match {n}x{n} matrix")
    if n > PERMUTATION_CAP:
        raise ValueError(f"n={n} exceeds enumeration cap {PERMUTATION_CAP}")
    weights = _class_weights(p)
    # every monomial takes one entry per row, so clearing row denominators
    # scales the whole sum by the product of the row multipliers
    scale = 1
    rows = []
    for r in X:
        d = 1
        for x in r:
            d = d * x.denominator // math.gcd(d, x.denominator)
        scale *= d
        rows.append([int(x * d) for x in r])
    total = 0
    leaf = 0
    used = [False] * n

    def descend(row: int, prod: int) -> None:
        nonlocal total, leaf
        if row == n:
            w = weights[leaf]
            if w:
                total += w * prod
            leaf += 1
            return
        xr = rows[row]
        for col in range(n):
            if not used[col]:
                used[col] = True
                descend(row + 1, prod * xr[col])
                used[col] = False

    descend(0, 1)
    telemetry["immanant_terms"] += leaf
    return Fraction(total, scale)


def determinant_oracle(X: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss elimination on a denominator-cleared copy."""
    X = rational_matrix(X)
    n = len(X)
    scale = Fraction(1)
    A = []
    for row in X:
        d = 1
        for x in row:
            d = d * x.denominator // math.gcd(d, x.denominator)
        scale *= d
        A.append([int(x * d) for x in row])
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return Fraction(sgn * A[n - 1][n - 1]) / scale


def permanent_oracle(X: Sequence[Sequence]) -> Fraction:
    """Ryser's inclusion-exclusion over column subsets, Gray-code ordered."""
    X = rational_matrix(X)
    n = len(X)
    if n > 20:
        raise ValueError("permanent_oracle is capped at n = 20")
    row_sums = [Fraction(0)] * n
    total = Fraction(0)
    in_set = [False] * n
    size = 0
    for k in range(1, 2 ** n):
        # the bit flipped between Gray codes k-1 and k
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            in_set[j] = False
            size -= 1
            for i in range(n):
                row_sums[i] -= X[i][j]
        else:
            in_set[j] = True
            size += 1
            for i in range(n):
                row_sums[i] += X[i][j]
        prod = Fraction(1)
        for s in row_sums:
            prod *= s
            if not prod:
                break
        total += -prod if size % 2 else prod
    return total if n % 2 == 0 else -total


def coefficient_vector(p: Partition) -> tuple[int, ...]:
    """Coefficients of the immanant on the monomials of ``perms0(n)``."""
    return tuple(_class_weights(Partition(p)))


def coefficient_vectors_rank(n: int) -> int:
    if not 1 <= n <= PERMUTATION_CAP:
        raise ValueError(f"n={n} outside enumeration range 1..{PERMUTATION_CAP}")
    return rank([coefficient_vector(lam) for lam in enumerate_partitions(n)])


def act(elem, X: Sequence[Sequence]) -> Matrix:
    """Apply a stabilizer candidate to X.

    In order: optional transpose, rows permuted by tau1, columns by tau2,
    then entrywise scaling by C, giving
    ``Y[i][j] = C[i][j] * X'[tau1(i)][tau2(j)]`` with X' the possibly
    transposed input.
    """
    X = rational_matrix(X)
    n = len(X)
    t1, t2 = elem.tau1, elem.tau2
    C = elem.C.entries if hasattr(elem.C, "entries") else rational_matrix(elem.C)
    if len(t1) != n or len(t2) != n or len(C) != n:
        raise ValueError("stabilizer element and matrix have different sizes")
    if elem.transpose:
        X = transpose(X)
    return tuple(
        tuple(C[i][j] * X[t1[i] - 1][t2[j] - 1] for j in range(n))
        for i in range(n)
    )
