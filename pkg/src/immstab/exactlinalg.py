"""Exact rank, nullspace and integer-kernel computations.

Matrices are plain sequences of rows whose entries are ints or Fractions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .characters import mn_character
from .combinatorics import Partition, class_labels0, perms0

__all__ = [
    "RowEchelon", "rank", "nullspace_basis", "integer_echelon",
    "IntegerEchelon", "integer_kernel_basis", "perm_matrix_row",
    "perm_span_rank", "q_span_rank", "S5System", "build_s5_system",
    "S5Report", "s5_structure_check",
]


def _integer_row(row: Iterable) -> list[int]:
    row = [Fraction(x) for x in row]
    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = math.gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return row


class RowEchelon:
    """Incremental fraction-free elimination; rows are fed one at a time.

    Each stored row is an integer vector with a distinct pivot column, so
    memory is O(cols^2) no matter how many rows stream through.
    """

    def __init__(self, cols: int):
        self.cols = cols
        self.rows: dict[int, list[int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, row: Iterable) -> bool:
        """Reduce ``row`` against the basis; return True if it raised the rank."""
        v = _integer_row(row)
        if len(v) != self.cols:
            raise ValueError(f"row of length {len(v)}, expected {self.cols}")
        for col in range(self.cols):
            a = v[col]
            if a == 0:
                continue
            b = self.rows.get(col)
            if b is None:
                self.rows[col] = _primitive(v)
                return True
            p = b[col]
            g = math.gcd(a, p)
            fa, fp = p // g, a // g
            v = [fa * x - fp * y for x, y in zip(v, b)]
            v = _primitive(v)
        return False


def rank(M: Sequence[Sequence]) -> int:
    M = list(M)
    if not M:
        return 0
    ech = RowEchelon(len(M[0]))
    for row in M:
        ech.add(row)
        if ech.rank == ech.cols:
            break
    return ech.rank


def nullspace_basis(M: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : M v = 0}`` from the reduced row echelon form."""
    M = [[Fraction(x) for x in row] for row in M]
    if not M:
        return []
    cols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for row_i, pc in enumerate(pivots):
            v[pc] = -M[row_i][fc]
        basis.append(tuple(v))
    return basis


@dataclass
class IntegerEchelon:
    """``U @ M == H`` with U unimodular and H in row echelon form.

    Rows ``rank..`` of H are zero, so rows ``rank..`` of U span the integer
    left kernel of M as a lattice. Pivot entries of H are positive.
    """
    H: list[list[int]]
    U: list[list[int]]
    rank: int
    pivots: list[int] = field(default_factory=list)

    @property
    def kernel(self) -> list[tuple[int, ...]]:
        return [tuple(u) for u in self.U[self.rank:]]


def integer_echelon(M: Sequence[Sequence[int]]) -> IntegerEchelon:
    if any(Fraction(x).denominator != 1 for row in M for x in row):
        raise ValueError("integer_echelon needs integer entries")
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    cols = len(A[0]) if A else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for c in range(cols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            U[r], U[piv] = U[piv], U[r]
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                U[r] = [-x for x in U[r]]
            p = A[r][c]
            clean = True
            for i in range(r + 1, m):
                a = A[i][c]
                if a == 0:
                    continue
                q = a // p
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                if A[i][c] != 0:
                    clean = False
            if clean:
                break
        if A[r][c] != 0:
            pivots.append(c)
            r += 1
    return IntegerEchelon(A, U, r, pivots)


def integer_kernel_basis(M: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Lattice basis of ``{m in Z^rows : m^T M = 0}``; every vector is primitive."""
    return integer_echelon(M).kernel


def perm_matrix_row(p: Sequence[int]) -> list[int]:
    """Flattened permutation matrix of a 0-based permutation (entry (i, p[i]) = 1)."""
    n = len(p)
    row = [0] * (n * n)
    for i, j in enumerate(p):
        row[i * n + j] = 1
    return row


def _stream_rank(rows: Iterable[Sequence[int]], cols: int) -> int:
    ech = RowEchelon(cols)
    for row in rows:
        ech.add(row)
        if ech.rank == cols:
            break
    return ech.rank


def perm_span_rank(n: int) -> int:
    """Rank of the n! x n^2 matrix of flattened permutation matrices."""
    return _stream_rank((perm_matrix_row(p) for p in perms0(n)), n * n)


def q_span_rank(p: Partition) -> int:
    """Rank of the permutation-matrix rows over permutations where chi_p is nonzero."""
    p = Partition(p)
    n = p.n
    nonzero = {t: mn_character(p, t) != 0 for t in set(class_labels0(n))}
    rows = (perm_matrix_row(s) for s, t in zip(perms0(n), class_labels0(n)) if nonzero[t])
    return _stream_rank(rows, n * n)


# -- the 12-unknown system on indices {2,3,4,5} ------------------------------

S5_INDICES = (2, 3, 4, 5)


@dataclass(frozen=True)
class S5System:
    unknowns: tuple[tuple[int, int], ...]   # (i, j) for a_ij, i != j
    equations: tuple[tuple[int, ...], ...]  # coefficient rows, "lhs - rhs = 0"
    labels: tuple[str, ...]

    def index(self, i: int, j: int) -> int:
        return self.unknowns.index((i, j))


def build_s5_system() -> S5System:
    unknowns = tuple((i, j) for i in S5_INDICES for j in S5_INDICES if i != j)
    pos = {u: k for k, u in enumerate(unknowns)}
    eqs: list[tuple[int, ...]] = []
    labels: list[str] = []

    def add(plus, minus, label):
        row = [0] * len(unknowns)
        for u in plus:
            row[pos[u]] += 1
        for u in minus:
            row[pos[u]] -= 1
        eqs.append(tuple(row))
        labels.append(label)

    for i, j, k, m in itertools.permutations(S5_INDICES):
        # a_ij + a_jk + a_km = a_ik + a_kj + a_jm
        add([(i, j), (j, k), (k, m)], [(i, k), (k, j), (j, m)],
            f"a{i}{j}+a{j}{k}+a{k}{m}=a{i}{k}+a{k}{j}+a{j}{m}")
    for i, j, k, j2 in itertools.permutations(S5_INDICES):
        # a_ij + a_jk = a_ij' + a_j'k
        add([(i, j), (j, k)], [(i, j2), (j2, k)], f"a{i}{j}+a{j}{k}=a{i}{j2}+a{j2}{k}")
    return S5System(unknowns, tuple(eqs), tuple(labels))


@dataclass
class S5Report:
    nullity: int
    basis: list[tuple[Fraction, ...]]
    lambdas: list[Fraction]
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def _check_solution(system: S5System, a: Sequence[Fraction]) -> tuple[Fraction | None, list[str]]:
    """Return (lambda, problems) for one solution vector."""
    val = {u: Fraction(x) for u, x in zip(system.unknowns, a)}
    problems = []
    pair_means = {(i, j): (val[(i, j)] + val[(j, i)]) / 2
                  for i, j in itertools.combinations(S5_INDICES, 2)}
    lam_values = set(pair_means.values())
    if len(lam_values) != 1:
        problems.append(f"(a_ij + a_ji)/2 depends on the pair: {sorted(lam_values)}")
        return None, problems
    lam = lam_values.pop()
    for mu in itertools.permutations(S5_INDICES):
        mapping = dict(zip(S5_INDICES, mu))
        moved = [i for i in S5_INDICES if mapping[i] != i]
        total = sum((val[(i, mapping[i])] for i in moved), Fraction(0))
        if total != len(moved) * lam:
            problems.append(f"mu={mu}: sum {total} != {len(moved)} * {lam}")
    return lam, problems


def s5_structure_check(extra_solutions: Iterable[Sequence] = ()) -> S5Report:
    """Solve the system and check the moved-point sum identity on every basis solution.

    ``extra_solutions`` are also checked, after confirming they solve the system.
    """
    system = build_s5_system()
    basis = nullspace_basis(system.equations)
    lambdas, failures = [], []
    candidates = [(f"basis[{k}]", v) for k, v in enumerate(basis)]
    for k, v in enumerate(extra_solutions):
        v = [Fraction(x) for x in v]
        residual = [sum(c * x for c, x in zip(eq, v)) for eq in system.equations]
        if any(residual):
            failures.append(f"extra[{k}] does not solve the system")
            continue
        candidates.append((f"extra[{k}]", v))
    for name, v in candidates:
        lam, problems = _check_solution(system, v)
        if lam is not None:
            lambdas.append(lam)
        failures.extend(f"{name}: {msg}" for msg in problems)
    return S5Report(len(basis), basis, lambdas, failures)
