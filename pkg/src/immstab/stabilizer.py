"""Stabilizer analysis for immanants.

A candidate stabilizer element is a triple ``(tau1, tau2, C)`` plus a
transpose flag acting by ``Y[i][j] = C[i][j] * X[tau1(i)][tau2(j)]``. It
preserves the immanant of ``p`` iff for every permutation s

    chi_p(s) * prod_i C[i][s(i)] == chi_p(tau2 . s . tau1^-1).

Everything here is exact. Permutations are processed as 0-based tuples
internally and returned as :class:`~immstab.combinatorics.Permutation`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .characters import mn_character
from .combinatorics import (
    CycleType, Partition, Permutation, class_labels0, enumerate_partitions,
    moved_points, perms0,
)
from .exactlinalg import IntegerEchelon, integer_echelon, perm_matrix_row, q_span_rank, rank
from .immanants import Matrix, act, immanant, random_integer_matrix, rational_matrix

__all__ = [
    "ZeroSets", "GSet", "TorusCoefficients", "StabilizerElement",
    "FactorWitness", "DiagonalPair",
    "zero_sets", "compute_G", "e3_solvable", "e3_certificate",
    "duffner_solvable", "duffner_certificate", "torus_constraint_dimension",
    "coefficient_identity_holds", "verify_element", "counterexample_matrix",
    "factor_as_diagonal_pair", "find_factor_witness", "find_lemma9_tau",
    "longest_rim_hook", "alternating_group", "symmetric_group",
]


# -- data types ---------------------------------------------------------------

@dataclass(frozen=True)
class ZeroSets:
    partition: Partition
    P: frozenset[Permutation]  # character vanishes
    Q: frozenset[Permutation]  # character does not vanish


@dataclass(frozen=True)
class GSet:
    partition: Partition
    members: frozenset[Permutation]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, s) -> bool:
        return Permutation(s) in self.members

    def is_subgroup(self) -> bool:
        if not self.members:
            return False
        n = len(next(iter(self.members)))
        if Permutation.identity(n) not in self.members:
            return False
        m0 = {s.zero_based for s in self.members}
        for a in m0:
            if _inv0(a) not in m0:
                return False
            for b in m0:
                if _mul0(a, b) not in m0:
                    return False
        return True

    def is_normal(self) -> bool:
        """Invariant under conjugation by the generators (1 2) and (1 2 ... n)."""
        n = len(next(iter(self.members)))
        m0 = {s.zero_based for s in self.members}
        gens = []
        if n >= 2:
            gens.append(Permutation.from_cycles(n, [(1, 2)]).zero_based)
            gens.append(Permutation.from_cycles(n, [tuple(range(1, n + 1))]).zero_based)
        for g in gens:
            gi = _inv0(g)
            if {_mul0(_mul0(g, s), gi) for s in m0} != m0:
                return False
        return True


@dataclass(frozen=True)
class TorusCoefficients:
    """Coefficient matrix of the entrywise (torus) action; entries nonzero."""
    entries: Matrix

    def __post_init__(self):
        entries = rational_matrix(self.entries)
        if any(x == 0 for row in entries for x in row):
            raise ValueError("torus coefficients must all be nonzero")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def ones(cls, n: int) -> "TorusCoefficients":
        return cls([[1] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class StabilizerElement:
    tau1: Permutation
    tau2: Permutation
    C: TorusCoefficients
    transpose: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tau1", Permutation(self.tau1))
        object.__setattr__(self, "tau2", Permutation(self.tau2))
        if not isinstance(self.C, TorusCoefficients):
            object.__setattr__(self, "C", TorusCoefficients(self.C))
        if not len(self.tau1) == len(self.tau2) == self.C.n:
            raise ValueError("tau1, tau2 and C must act on the same n")

    @classmethod
    def identity(cls, n: int) -> "StabilizerElement":
        e = Permutation.identity(n)
        return cls(e, e, TorusCoefficients.ones(n))

    @classmethod
    def torus(cls, C) -> "StabilizerElement":
        C = C if isinstance(C, TorusCoefficients) else TorusCoefficients(C)
        e = Permutation.identity(C.n)
        return cls(e, e, C)

    @property
    def n(self) -> int:
        return len(self.tau1)


@dataclass(frozen=True)
class FactorWitness:
    """Permutations making the torus coefficients factor as a diagonal pair.

    ``cycle`` is ``(i1 ... ip)``; the longer cycle is ``(1 i1 ... ip)``.
    sigma is disjoint from both, and the transposition ``pair_ij`` is
    disjoint from tau.
    """
    sigma: Permutation
    cycle: tuple[int, ...]
    tau: Permutation
    pair_ij: tuple[int, int]

    @property
    def p(self) -> int:
        return len(self.cycle)

    def short_product(self) -> Permutation:
        n = len(self.sigma)
        return _perm(_mul0(_cycle0(n, self.cycle), self.sigma.zero_based))

    def long_product(self) -> Permutation:
        n = len(self.sigma)
        return _perm(_mul0(_cycle0(n, (1,) + self.cycle), self.sigma.zero_based))

    def pair_product(self) -> Permutation:
        n = len(self.tau)
        return _perm(_mul0(_cycle0(n, self.pair_ij), self.tau.zero_based))


@dataclass(frozen=True)
class DiagonalPair:
    """Diagonals a, b with C[i][j] == a[i] * b[j]; defect is det(A) * det(B)."""
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    defect: Fraction

    @property
    def normalized(self) -> bool:
        return self.defect == 1


# -- 0-based permutation helpers ----------------------------------------------

def _mul0(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(a[x] for x in b)


def _inv0(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _perm(p0: Sequence[int]) -> Permutation:
    return Permutation.from_zero_based(p0)


def _cycle0(n: int, cycle: Sequence[int]) -> tuple[int, ...]:
    return Permutation.from_cycles(n, [cycle]).zero_based if len(cycle) > 1 else tuple(range(n))


def symmetric_group(n: int) -> frozenset[Permutation]:
    return frozenset(_perm(p) for p in perms0(n))


def alternating_group(n: int) -> frozenset[Permutation]:
    return frozenset(_perm(p) for p, t in zip(perms0(n), class_labels0(n)) if (n - len(t)) % 2 == 0)


@lru_cache(maxsize=64)
def _char_by_perm(p: Partition) -> dict[tuple[int, ...], int]:
    """chi_p of every 0-based permutation, computed once per cycle type."""
    n = p.n
    labels = class_labels0(n)
    by_class = {t: mn_character(p, t) for t in set(labels)}
    return {s: by_class[t] for s, t in zip(perms0(n), labels)}


# -- zero sets and G ------------------------------------------------------------

def zero_sets(p: Partition) -> ZeroSets:
    p = Partition(p)
    chi = _char_by_perm(p)
    P = frozenset(_perm(s) for s, v in chi.items() if v == 0)
    Q = frozenset(_perm(s) for s, v in chi.items() if v != 0)
    return ZeroSets(p, P, Q)


def compute_G(p: Partition) -> GSet:
    """All tau with tau.P inside P and tau.Q inside Q (left composition)."""
    p = Partition(p)
    chi = _char_by_perm(p)
    zero = {s: v == 0 for s, v in chi.items()}
    perms = perms0(p.n)
    members = []
    for tau in perms:
        if all(zero[_mul0(tau, s)] == z for s, z in zero.items()):
            members.append(_perm(tau))
    return GSet(p, frozenset(members))


def e3_certificate(p: Partition, tau: Permutation) -> Optional[dict[Permutation, Fraction]]:
    """Solve ``c[tau.s] * chi(tau.s) == chi(s)`` for all s with every c nonzero.

    Each unknown occurs in exactly one equation, so each is solved on its own;
    unknowns whose equation reads ``0 = 0`` are set to 1.
    """
    p = Partition(p)
    chi = _char_by_perm(p)
    t0 = Permutation(tau).zero_based
    c: dict[Permutation, Fraction] = {}
    for s, v in chi.items():
        ts = _mul0(t0, s)
        w = chi[ts]
        if w == 0:
            if v != 0:
                return None
            c[_perm(ts)] = Fraction(1)
        else:
            if v == 0:
                return None  # would force c = 0
            c[_perm(ts)] = Fraction(v, w)
    return c


def e3_solvable(p: Partition, tau: Permutation) -> bool:
    return e3_certificate(p, tau) is not None


# -- the full coefficient system ----------------------------------------------

@dataclass
class _QSystem:
    Q: list[tuple[int, ...]]
    echelon: IntegerEchelon
    n: int


@lru_cache(maxsize=64)
def _q_system(p: Partition) -> _QSystem:
    chi = _char_by_perm(p)
    Q = [s for s in perms0(p.n) if chi[s] != 0]
    return _QSystem(Q, integer_echelon([perm_matrix_row(s) for s in Q]), p.n)


def _target_ratios(p: Partition, t1: Sequence[int], t2: Sequence[int]) -> Optional[list[Fraction]]:
    """Ratios chi(tau2 s tau1^-1) / chi(s) over Q, or None if the zero pattern breaks."""
    chi = _char_by_perm(p)
    t1i = _inv0(t1)
    image = {}
    for s, v in chi.items():
        w = chi[tuple(t2[s[k]] for k in t1i)]
        if (v == 0) != (w == 0):
            return None
        image[s] = w
    return [Fraction(image[s], chi[s]) for s in _q_system(p).Q]


def _power_product(ratios: Sequence[Fraction], exps: Sequence[int]) -> Fraction:
    num = den = 1
    for r, m in zip(ratios, exps):
        if not m:
            continue
        a, b = r.numerator, r.denominator
        if a == b:
            continue
        if a == -b:
            if m & 1:
                num = -num
            continue
        if m < 0:
            a, b, m = b, a, -m
        num *= a ** m
        den *= b ** m
    return Fraction(num, den)


def _check_pair(p: Partition, tau1, tau2) -> tuple[Partition, tuple, tuple]:
    p = Partition(p)
    t1, t2 = Permutation(tau1), Permutation(tau2)
    if not len(t1) == len(t2) == p.n:
        raise ValueError("tau1, tau2 and the partition must share n")
    return p, t1.zero_based, t2.zero_based


def duffner_solvable(p: Partition, tau1: Permutation, tau2: Permutation) -> bool:
    """Whether nonzero C exist with chi(s) prod_i C[i][s(i)] = chi(tau2 s tau1^-1) for all s.

    The monomial map C -> (prod_i C[i][s(i)]) over s in Q has image cut out by
    ``prod_s r_s^m_s == 1`` for m in the integer left kernel of the
    permutation-row matrix, so the check runs over a lattice basis of that
    kernel.
    """
    p, t1, t2 = _check_pair(p, tau1, tau2)
    ratios = _target_ratios(p, t1, t2)
    if ratios is None:
        return False
    if all(r == 1 for r in ratios):
        return True
    return all(_power_product(ratios, m) == 1 for m in _q_system(p).echelon.kernel)


def _rational_root(x: Fraction, k: int) -> Optional[Fraction]:
    if k == 1:
        return x
    if x < 0:
        if k % 2 == 0:
            return None
        r = _rational_root(-x, k)
        return None if r is None else -r
    num, den = _int_root(x.numerator, k), _int_root(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(a: int, k: int) -> Optional[int]:
    r = round(a ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == a:
            return cand
    return None


def duffner_certificate(p: Partition, tau1: Permutation, tau2: Permutation) -> Optional[TorusCoefficients]:
    """A rational solution C when one exists and the back-substitution stays rational.

    Coordinates off the pivot columns of the Q-span are set to 1.
    """
    p, t1, t2 = _check_pair(p, tau1, tau2)
    ratios = _target_ratios(p, t1, t2)
    if ratios is None:
        return None
    system = _q_system(p)
    ech = system.echelon
    # transformed right-hand sides: s_k = prod_sigma r_sigma^U[k][sigma]
    rhs = [_power_product(ratios, u) for u in ech.U]
    if any(x != 1 for x in rhs[ech.rank:]):
        return None
    n = p.n
    c = [Fraction(1)] * (n * n)
    for k in range(ech.rank - 1, -1, -1):
        col = ech.pivots[k]
        row = ech.H[k]
        known = Fraction(1)
        for j in range(col + 1, n * n):
            if row[j]:
                known *= c[j] ** row[j]
        root = _rational_root(rhs[k] / known, row[col])
        if root is None:
            return None
        c[col] = root
    return TorusCoefficients([c[i * n:(i + 1) * n] for i in range(n)])


def torus_constraint_dimension(p: Partition) -> int:
    """Dimension of the solution set of prod_i C[i][s(i)] = 1 over s in Q."""
    p = Partition(p)
    return p.n ** 2 - q_span_rank(p)


# -- checking concrete elements ------------------------------------------------

def coefficient_identity_holds(p: Partition, elem: StabilizerElement) -> bool:
    p = Partition(p)
    if elem.n != p.n:
        raise ValueError("element and partition have different n")
    chi = _char_by_perm(p)
    # products of entries are compared as numerator/denominator integers
    num = [[x.numerator for x in row] for row in elem.C.entries]
    den = [[x.denominator for x in row] for row in elem.C.entries]
    t2 = elem.tau2.zero_based
    t1i = _inv0(elem.tau1.zero_based)
    for s, v in chi.items():
        w = chi[tuple(t2[s[k]] for k in t1i)]
        if v == 0:
            if w != 0:
                return False
            continue
        a = b = 1
        for i, j in enumerate(s):
            a *= num[i][j]
            b *= den[i][j]
        if v * a != w * b:
            return False
    return True


def verify_element(p: Partition, elem: StabilizerElement, seed: int = 0, trials: int = 10) -> bool:
    """Exact coefficient identity, cross-checked by evaluating the immanant.

    Raises RuntimeError if the two routes disagree; that would be a bug.
    """
    p = Partition(p)
    exact = coefficient_identity_holds(p, elem)
    rng = random.Random(seed)
    evaluated = True
    for _ in range(trials):
        X = random_integer_matrix(p.n, rng)
        if immanant(p, act(elem, X)) != immanant(p, X):
            evaluated = False
            break
    if exact != evaluated:
        raise RuntimeError(f"coefficient identity ({exact}) and evaluation ({evaluated}) disagree for {p}")
    return exact


def counterexample_matrix(e=2) -> TorusCoefficients:
    """4x4 coefficients preserving the (2,2) immanant outside the identity component."""
    e = Fraction(e)
    if e == 0:
        raise ValueError("parameter e must be nonzero")
    return TorusCoefficients([
        [e, -e, -e, e],
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1 / e, -1 / e, 1 / e, -1 / e],
    ])


def factor_as_diagonal_pair(C: TorusCoefficients) -> Optional[DiagonalPair]:
    """Split a rank-one C as ``a[i] * b[j]`` with a = column 0 and b = row 0 / C[0][0].

    The reciprocal gauge (a*t, b/t) leaves det(A)det(B) unchanged, so the
    defect cannot be normalized away without changing C; it is reported.
    """
    C = C if isinstance(C, TorusCoefficients) else TorusCoefficients(C)
    M = C.entries
    n = len(M)
    if rank(M) != 1:
        return None
    a = tuple(M[i][0] for i in range(n))
    b = tuple(M[0][j] / M[0][0] for j in range(n))
    defect = Fraction(1)
    for x in a + b:
        defect *= x
    return DiagonalPair(a, b, defect)


# -- witness searches -----------------------------------------------------------

def _search_order(types: Iterable[CycleType]) -> list[CycleType]:
    """Fewest moved points first, ties in descending lex order."""
    types = sorted(set(types), key=tuple, reverse=True)
    return sorted(types, key=moved_points)


def _realize(n: int, t: Sequence[int], points: Sequence[int]) -> Permutation:
    """A permutation of cycle type t supported on ``points`` (in order)."""
    cycles, k = [], 0
    for length in t:
        cycles.append(tuple(points[k:k + length]))
        k += length
    return Permutation.from_cycles(n, [c for c in cycles if len(c) > 1])


def find_factor_witness(p: Partition) -> Optional[FactorWitness]:
    """Search for sigma, (i1 ... ip) and tau, (i j) with all four characters nonzero.

    In cycle types: for mu the type of sigma on the n - p - 1 remaining
    points, both ``mu + (p, 1)`` and ``mu + (p + 1)`` must be non-vanishing
    classes; for nu the type of tau on n - 2 points, both ``nu + (1, 1)``
    and ``nu + (2,)`` must be. Candidates are scanned by the type of the
    longer product, respectively of ``(i j) tau``.
    """
    p = Partition(p)
    n = p.n
    if n < 3:
        return None

    def chi(parts) -> int:
        return mn_character(p, Partition(sorted(parts, reverse=True)))

    sigma_choice = None
    candidates = []
    for length in range(2, n):
        for mu in (enumerate_partitions(n - length - 1) if n - length - 1 > 0 else [Partition()]):
            candidates.append((Partition(sorted(tuple(mu) + (length + 1,), reverse=True)), length, mu))
    order = {t: k for k, t in enumerate(_search_order(c[0] for c in candidates))}
    candidates.sort(key=lambda c: (order[c[0]], c[1]))
    for _, length, mu in candidates:
        if chi(tuple(mu) + (length, 1)) and chi(tuple(mu) + (length + 1,)):
            sigma_choice = (length, mu)
            break
    if sigma_choice is None:
        return None

    tau_choice = None
    for nu in _search_order(enumerate_partitions(n - 2) if n > 2 else [Partition()]):
        if chi(tuple(nu) + (1, 1)) and chi(tuple(nu) + (2,)):
            tau_choice = nu
            break
    if tau_choice is None:
        return None

    length, mu = sigma_choice
    cycle = tuple(range(2, length + 2))
    sigma = _realize(n, mu, list(range(length + 2, n + 1)))
    tau = _realize(n, tau_choice, list(range(3, n + 1)))
    return FactorWitness(sigma, cycle, tau, (1, 2))


def longest_rim_hook(p: Partition) -> int:
    """Length of the longest border strip: the hook length of the corner cell."""
    p = Partition(p)
    return p[0] + len(p) - 1 if p else 0


def find_lemma9_tau(p: Partition) -> Optional[Permutation]:
    """tau with nonzero character, a cycle of length >= 4 and a fixed point."""
    p = Partition(p)
    n = p.n
    types = [t for t in enumerate_partitions(n) if t[0] >= 4 and t[-1] == 1]
    for t in _search_order(types):
        if mn_character(p, t) != 0:
            return _realize(n, t, list(range(1, n + 1)))
    return None
