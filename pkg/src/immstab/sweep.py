"""Verification sweep: every desk-scale check as a report record.

Records carry ``claim``, ``partition``, ``expected``, ``computed``,
``status`` (pass, fail or info) and ``elapsed``. Order is fixed by the
check list below, never by completion time.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from . import __version__
from .characters import character_table, inner_product
from .combinatorics import (
    Partition, Permutation, conjugate, dimension, enumerate_partitions,
    enumerate_permutations, is_symmetric,
)
from .exactlinalg import perm_span_rank, q_span_rank, rank, s5_structure_check
from .immanants import (
    determinant_oracle, diagonal_matrix, identity_matrix, immanant, matmul,
    permanent_oracle, permutation_matrix, random_integer_matrix, transpose,
)
from .stabilizer import (
    StabilizerElement, alternating_group, compute_G, counterexample_matrix,
    duffner_certificate, duffner_solvable, e3_solvable, factor_as_diagonal_pair,
    find_factor_witness, find_lemma9_tau, symmetric_group,
    torus_constraint_dimension, verify_element,
)

PASS, FAIL, INFO = "pass", "fail", "info"

# partitions for which no long-cycle witness is asserted
LONG_CYCLE_EXCLUDED = {Partition((3, 1, 1, 1)), Partition((4, 1, 1)), Partition((4, 1, 1, 1))}


@dataclass
class CheckRecord:
    claim: str
    partition: Optional[str]
    expected: object
    computed: object
    status: str
    elapsed: float = 0.0
    n: Optional[int] = None


@dataclass
class SweepOptions:
    n_min: int = 3
    n_max: int = 6
    seed: int = 0
    duffner_scan: bool = False
    include_exceptional: bool = False
    full: bool = False       # n = 7 G sets and span sweeps
    allow_n8: bool = False


@dataclass
class SweepReport:
    tool_version: str
    n_range: tuple[int, int]
    seed: int
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        return d


def _s(p) -> str:
    return str(Partition(p))


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _nontrivial(n: int) -> list[Partition]:
    return [p for p in enumerate_partitions(n) if p not in (Partition((n,)), Partition((1,) * n))]


def _timed(fn: Callable[[], list[CheckRecord]]) -> list[CheckRecord]:
    start = time.perf_counter()
    records = fn()
    elapsed = time.perf_counter() - start
    for r in records:
        r.elapsed = round(elapsed / max(len(records), 1), 6)
    return records


# -- individual checks ---------------------------------------------------------

def check_characters(n: int) -> list[CheckRecord]:
    t = character_table(n)
    k = len(t.partitions)
    fact = math.factorial(n)
    row_ok = all(
        sum(c * x * y for c, x, y in zip(t.class_sizes, t.values[a], t.values[b])) == (fact if a == b else 0)
        for a in range(k) for b in range(k))
    col_ok = all(
        sum(t.values[r][a] * t.values[r][b] for r in range(k)) == (fact // t.class_sizes[a] if a == b else 0)
        for a in range(k) for b in range(k))
    ident = t.classes.index(Partition((1,) * n))
    dims = [t.values[r][ident] for r in range(k)]
    hook = [dimension(p) for p in t.partitions]
    sq = sum(d * d for d in hook)
    norms = all(inner_product(t.row(p), t.row(p), n) == 1 for p in t.partitions)
    return [
        CheckRecord("C1.row-orthogonality", None, "n! delta", "exact" if row_ok else "violated", _status(row_ok), n=n),
        CheckRecord("C1.column-orthogonality", None, "n!/|c| delta", "exact" if col_ok else "violated", _status(col_ok), n=n),
        CheckRecord("C1.identity-column", None, hook, dims, _status(dims == hook), n=n),
        CheckRecord("C1.sum-dim-squared", None, fact, sq, _status(sq == fact), n=n),
        CheckRecord("C1.norm-one", None, 1, 1 if norms else "not 1", _status(norms), n=n),
    ]


def check_oracles(n: int, seed: int) -> list[CheckRecord]:
    rng = random.Random(seed * 1000 + n)
    det_bad = perm_bad = 0
    for _ in range(25):
        X = random_integer_matrix(n, rng)
        det_bad += immanant(Partition((1,) * n), X) != determinant_oracle(X)
        perm_bad += immanant(Partition((n,)), X) != permanent_oracle(X)
    return [
        CheckRecord("C2.determinant-oracle", _s((1,) * n), 0, det_bad, _status(det_bad == 0), n=n),
        CheckRecord("C2.permanent-oracle", _s((n,)), 0, perm_bad, _status(perm_bad == 0), n=n),
    ]


def check_identity_value(n: int) -> list[CheckRecord]:
    out = []
    Id = identity_matrix(n)
    for p in enumerate_partitions(n):
        v = immanant(p, Id)
        out.append(CheckRecord("C3.identity-value", _s(p), dimension(p), int(v), _status(v == dimension(p)), n=n))
    return out


def check_invariance(n: int, seed: int) -> list[CheckRecord]:
    rng = random.Random(seed * 1000 + 100 + n)
    out = []
    mats = [random_integer_matrix(n, rng) for _ in range(10)]
    perm_mats = [permutation_matrix(s) for s in enumerate_permutations(n)] if n <= 5 else []
    for p in enumerate_partitions(n):
        vals = [immanant(p, X) for X in mats]
        t_ok = all(immanant(p, transpose(X)) == v for X, v in zip(mats, vals))
        out.append(CheckRecord("C4.transpose", _s(p), "invariant", "invariant" if t_ok else "changed", _status(t_ok), n=n))
        if perm_mats:
            X, v = mats[0], vals[0]
            c_ok = all(immanant(p, matmul(matmul(Qm, X), transpose(Qm))) == v for Qm in perm_mats)
            out.append(CheckRecord("C4.conjugation", _s(p), "invariant", "invariant" if c_ok else "changed", _status(c_ok), n=n))
        s_ok = True
        for X, v in zip(mats[:3], vals[:3]):
            a = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(n)]
            b = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(n)]
            scale = math.prod(a) * math.prod(b)
            lhs = immanant(p, matmul(matmul(diagonal_matrix(a), X), diagonal_matrix(b)))
            s_ok &= lhs == scale * v
        out.append(CheckRecord("C4.diagonal-scaling", _s(p), "det(A)det(B) factor", "holds" if s_ok else "violated", _status(s_ok), n=n))
    return out


def _fmt_group(members) -> list[str]:
    return sorted(str(s) for s in members)


def check_gsets(n: int) -> list[CheckRecord]:
    out = []
    if n == 3:
        expected = {(3,): symmetric_group(3), (2, 1): alternating_group(3), (1, 1, 1): alternating_group(3)}
    elif n == 4:
        klein = frozenset([Permutation.identity(4)] + [Permutation.from_cycles(4, c) for c in
                                                        ([(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)])])
        expected = {(4,): symmetric_group(4), (3, 1): klein, (2, 2): alternating_group(4),
                    (2, 1, 1): klein, (1, 1, 1, 1): alternating_group(4)}
    else:
        trivial = frozenset([Permutation.identity(n)])
        expected = {tuple(p): trivial for p in _nontrivial(n)}
        expected[(n,)] = symmetric_group(n)
        expected[(1,) * n] = alternating_group(n)
    for p in enumerate_partitions(n):
        g = compute_G(p)
        want = expected[tuple(p)]
        ok = g.members == want
        shown_exp = _fmt_group(want) if len(want) <= 4 else f"{len(want)} elements"
        shown_got = _fmt_group(g.members) if len(g.members) <= 4 else f"{len(g.members)} elements"
        out.append(CheckRecord("C5.G-set", _s(p), shown_exp, shown_got, _status(ok), n=n))
        if n >= 5:
            normal = g.is_subgroup() and g.is_normal()
            out.append(CheckRecord("C5.G-normal", _s(p), True, normal, _status(normal), n=n))
    return out


def check_perm_span(n: int) -> list[CheckRecord]:
    r = perm_span_rank(n)
    want = (n - 1) ** 2 + 1
    return [CheckRecord("C6.perm-span-rank", None, want, r, _status(r == want), n=n)]


def check_q_span(n: int, include_exceptional: bool) -> list[CheckRecord]:
    out = []
    for p in _nontrivial(n):
        q = q_span_rank(p)
        dim = n * n - q
        if n == 7 and p == Partition((4, 1, 1, 1)):
            if include_exceptional:
                out.append(CheckRecord("C6.torus-dimension", _s(p), None, dim, INFO, n=n))
            continue
        out.append(CheckRecord("C6.q-span-rank", _s(p), (n - 1) ** 2 + 1, q, _status(q == (n - 1) ** 2 + 1), n=n))
        d2 = torus_constraint_dimension(p)
        out.append(CheckRecord("C6.torus-dimension", _s(p), 2 * n - 2, d2, _status(d2 == 2 * n - 2 and d2 + q == n * n), n=n))
    return out


def check_duffner_scan(n: int = 5) -> list[CheckRecord]:
    out = []
    perms = list(enumerate_permutations(n))
    for p in _nontrivial(n):
        mismatches = 0
        for t1, t2 in itertools.product(perms, perms):
            if duffner_solvable(p, t1, t2) != (t1 == t2):
                mismatches += 1
        out.append(CheckRecord("C7.duffner-scan", _s(p), f"solvable iff tau1 == tau2 ({len(perms) ** 2} pairs)",
                               f"{mismatches} mismatches", _status(mismatches == 0), n=n))
    return out


def check_counterexample() -> list[CheckRecord]:
    out = []
    for e in (Fraction(2), Fraction(3), Fraction(-5, 7)):
        C = counterexample_matrix(e)
        ok_verify = verify_element(Partition((2, 2)), StabilizerElement.torus(C))
        r = rank(C.entries)
        fac = factor_as_diagonal_pair(C)
        ok = ok_verify and r >= 2 and fac is None
        computed = {"stabilizes": ok_verify, "rank": r,
                    "factorable": "not factorable as diagonal pair" if fac is None else "factorable"}
        out.append(CheckRecord(f"C8.counterexample[e={e}]", "(2,2)",
                               {"stabilizes": True, "rank": ">= 2", "factorable": "not factorable as diagonal pair"},
                               computed, _status(ok), n=4))
    return out


def check_factor_witness(n: int) -> list[CheckRecord]:
    out = []
    for p in enumerate_partitions(n):
        w = find_factor_witness(p)
        shown = None if w is None else {
            "sigma": str(w.sigma), "cycle": list(w.cycle), "tau": str(w.tau), "pair": list(w.pair_ij)}
        if p in _nontrivial(n) and not is_symmetric(p) and n >= 5:
            out.append(CheckRecord("C9.factor-witness", _s(p), "found", shown, _status(w is not None), n=n))
        else:
            out.append(CheckRecord("C9.factor-witness", _s(p), None, shown, INFO, n=n))
    return out


def check_long_cycle_witness(n: int) -> list[CheckRecord]:
    out = []
    for p in enumerate_partitions(n):
        tau = find_lemma9_tau(p)
        shown = None if tau is None else str(tau)
        if p in LONG_CYCLE_EXCLUDED or conjugate(p) in LONG_CYCLE_EXCLUDED:
            out.append(CheckRecord("C9.long-cycle-witness", _s(p), None, shown, INFO, n=n))
        else:
            out.append(CheckRecord("C9.long-cycle-witness", _s(p), "found", shown, _status(tau is not None), n=n))
    return out


def check_s5() -> list[CheckRecord]:
    rep = s5_structure_check()
    return [CheckRecord("C10.s5-structure", None, "sum over moved points = l * lambda",
                        {"nullity": rep.nullity, "failures": rep.failures[:5]}, _status(rep.passed))]


def check_e3_vs_G(n: int) -> list[CheckRecord]:
    out = []
    perms = list(enumerate_permutations(n))
    for p in enumerate_partitions(n):
        g = compute_G(p)
        bad = sum(e3_solvable(p, t) != (t in g.members) for t in perms)
        out.append(CheckRecord("C11.e3-iff-G", _s(p), 0, bad, _status(bad == 0), n=n))
    return out


def check_certificates(n: int, seed: int, sample: Optional[int] = None) -> list[CheckRecord]:
    """Every certificate returned for the scanned pairs must verify."""
    out = []
    perms = list(enumerate_permutations(n))
    pairs = list(itertools.product(perms, perms))
    if sample is not None and sample < len(pairs):
        rng = random.Random(seed * 1000 + 200 + n)
        pairs = [(t, t) for t in perms] + rng.sample(pairs, sample)
    for p in enumerate_partitions(n):
        solvable = certified = bad = 0
        for t1, t2 in pairs:
            if not duffner_solvable(p, t1, t2):
                continue
            solvable += 1
            C = duffner_certificate(p, t1, t2)
            if C is None:
                continue
            certified += 1
            if not verify_element(p, StabilizerElement(t1, t2, C), seed=seed):
                bad += 1
        out.append(CheckRecord("C11.certificates-verify", _s(p), 0,
                               {"solvable": solvable, "certified": certified, "failed": bad},
                               _status(bad == 0), n=n))
    return out


# -- orchestration ---------------------------------------------------------------

def iter_checks(opts: SweepOptions) -> Iterator[Callable[[], list[CheckRecord]]]:
    lo, hi = opts.n_min, opts.n_max
    ns = range(lo, hi + 1)
    for n in ns:
        if 2 <= n <= 7:
            yield lambda n=n: check_characters(n)
    for n in ns:
        if n <= 6:
            yield lambda n=n: check_oracles(n, opts.seed)
    for n in ns:
        if n <= 7:
            yield lambda n=n: check_identity_value(n)
    for n in ns:
        if n <= 6:
            yield lambda n=n: check_invariance(n, opts.seed)
    for n in ns:
        if 3 <= n <= 6 or (n == 7 and opts.full):
            yield lambda n=n: check_gsets(n)
        elif n == 7:
            yield lambda: [CheckRecord("C5.G-set", None, None, "skipped: pass --full for n=7", INFO, n=7)]
    for n in ns:
        if 2 <= n <= 7:
            yield lambda n=n: check_perm_span(n)
        if n in (5, 6) or (n == 7 and (opts.full or opts.include_exceptional)):
            yield lambda n=n: check_q_span(n, opts.include_exceptional)
    if lo <= 5 <= hi:
        if opts.duffner_scan:
            yield lambda: check_duffner_scan(5)
        else:
            yield lambda: [CheckRecord("C7.duffner-scan", None, None, "skipped: pass --duffner-scan", INFO, n=5)]
    if lo <= 4 <= hi:
        yield check_counterexample
    top = 8 if opts.allow_n8 else 7
    for n in ns:
        if 5 <= n <= top:
            yield lambda n=n: check_factor_witness(n)
    if hi >= 8 and not opts.allow_n8:
        yield lambda: [CheckRecord("C9.factor-witness", None, None, "skipped: pass --allow-n8", INFO, n=8)]
    for n in ns:
        if n in (6, 7):
            yield lambda n=n: check_long_cycle_witness(n)
    yield check_s5
    for n in ns:
        if n <= 5:
            yield lambda n=n: check_e3_vs_G(n)
        if n == 4:
            yield lambda n=n: check_certificates(n, opts.seed)
        if n == 5:
            yield lambda n=n: check_certificates(n, opts.seed, sample=200)


def run_sweep(opts: SweepOptions) -> SweepReport:
    report = SweepReport(__version__, (opts.n_min, opts.n_max), opts.seed)
    for check in iter_checks(opts):
        report.checks.extend(_timed(check))
    return report


def render(report: SweepReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=1, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["claim", "n", "partition", "expected", "computed", "status", "elapsed"])
        for c in report.checks:
            w.writerow([c.claim, c.n, c.partition, json.dumps(c.expected, default=str),
                        json.dumps(c.computed, default=str), c.status, c.elapsed])
        return buf.getvalue()
    lines = []
    for c in report.checks:
        where = f"n={c.n} " if c.n is not None else ""
        part = f"{c.partition} " if c.partition else ""
        lines.append(f"[{c.status.upper():4}] {c.claim} {where}{part}expected={c.expected} computed={c.computed}")
    counts = {s: sum(c.status == s for c in report.checks) for s in (PASS, FAIL, INFO)}
    lines.append(f"{counts[PASS]} pass, {counts[FAIL]} fail, {counts[INFO]} info")
    return "\n".join(lines) + "\n"
