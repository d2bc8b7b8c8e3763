"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .characters import TableCache, mn_character
from .combinatorics import Partition, Permutation, is_symmetric
from .exactlinalg import perm_span_rank, q_span_rank, rank
from .immanants import dump_matrix, immanant, load_matrix
from .stabilizer import (
    compute_G, counterexample_matrix, duffner_certificate, duffner_solvable,
    factor_as_diagonal_pair, find_factor_witness, find_lemma9_tau,
    torus_constraint_dimension, verify_element, StabilizerElement,
)
from .sweep import (
    FAIL, INFO, PASS, CheckRecord, SweepOptions, SweepReport, render, run_sweep,
)


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _permutation(text: str) -> Permutation:
    try:
        return Permutation(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"invalid permutation {text!r}: {exc}") from None


def _emit_records(records: list[CheckRecord], fmt: str, out) -> int:
    report = SweepReport(__version__, (0, 0), 0, records)
    if fmt == "json":
        text = json.dumps([r.__dict__ for r in records], indent=1, default=str) + "\n"
    else:
        text = render(report, fmt)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def cmd_char(args) -> int:
    p, t = _partition(args.partition), _partition(args.cls)
    if p.n != t.n:
        raise UsageError(f"partition {p} and class {t} have different sizes")
    print(mn_character(p, t))
    return 0


def cmd_table(args) -> int:
    if not 1 <= args.n <= 9:
        raise UsageError("--n must be between 1 and 9")
    table = TableCache(args.cache_dir).get(args.n)
    if args.format == "json":
        print(json.dumps(table.to_json(), indent=1))
    else:
        sep = "," if args.format == "csv" else "\t"
        print(sep.join(["partition"] + [str(c) for c in table.classes]))
        print(sep.join(["class_size"] + [str(s) for s in table.class_sizes]))
        for p, row in zip(table.partitions, table.values):
            print(sep.join([str(p)] + [str(v) for v in row]))
    return 0


def cmd_imm(args) -> int:
    p = _partition(args.partition)
    try:
        X = load_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix: {exc}") from None
    if len(X) != p.n:
        raise UsageError(f"partition of {p.n} does not match {len(X)}x{len(X)} matrix")
    print(immanant(p, X))
    return 0


def _g_expected(p: Partition):
    n = p.n
    if p == Partition((n,)):
        return "S_n", lambda g: len(g) == math.factorial(n)
    if p == Partition((1,) * n):
        return "A_n", lambda g: len(g) == math.factorial(n) // 2
    if n >= 5:
        return "trivial", lambda g: len(g) == 1
    return None, None


def cmd_gset(args) -> int:
    p = _partition(args.partition)
    if args.n is not None and args.n != p.n:
        raise UsageError(f"--n {args.n} does not match partition {p}")
    g = compute_G(p)
    members = sorted(str(s) for s in g.members)
    label, test = _g_expected(p)
    status = INFO if test is None else (PASS if test(g.members) else FAIL)
    rec = CheckRecord("gset", str(p), label, {"size": len(members), "members": members}, status, n=p.n)
    return _emit_records([rec], args.format, args.out)


def cmd_stabdim(args) -> int:
    p = _partition(args.partition)
    n = p.n
    q = q_span_rank(p)
    dim = torus_constraint_dimension(p)
    in_range = n >= 5 and p not in (Partition((n,)), Partition((1,) * n)) and n <= 6
    expected = {"q_span_rank": (n - 1) ** 2 + 1, "dimension": 2 * n - 2}
    status = (PASS if dim == 2 * n - 2 else FAIL) if in_range else INFO
    rec = CheckRecord("stabdim", str(p), expected, {"q_span_rank": q, "dimension": dim}, status, n=n)
    return _emit_records([rec], args.format, args.out)


def cmd_spanrank(args) -> int:
    if not 1 <= args.n <= 9:
        raise UsageError("--n must be between 1 and 9")
    r = perm_span_rank(args.n)
    want = (args.n - 1) ** 2 + 1
    rec = CheckRecord("spanrank", None, want, r, PASS if r == want else FAIL, n=args.n)
    return _emit_records([rec], args.format, args.out)


def cmd_witness(args) -> int:
    p = _partition(args.partition)
    n = p.n
    if n > 8:
        raise UsageError("witness searches are limited to n <= 8")
    w = find_factor_witness(p)
    asserted = 5 <= n and not is_symmetric(p) and p not in (Partition((n,)), Partition((1,) * n))
    shown = None if w is None else {"sigma": str(w.sigma), "cycle": list(w.cycle),
                                    "tau": str(w.tau), "pair": list(w.pair_ij)}
    recs = [CheckRecord("factor-witness", str(p), "found" if asserted else None, shown,
                        (PASS if w else FAIL) if asserted else INFO, n=n)]
    tau = find_lemma9_tau(p)
    excluded = {Partition((3, 1, 1, 1)), Partition((4, 1, 1)), Partition((4, 1, 1, 1))}
    asserted9 = n in (6, 7) and p not in excluded
    recs.append(CheckRecord("long-cycle-witness", str(p), "found" if asserted9 else None,
                            None if tau is None else str(tau),
                            (PASS if tau else FAIL) if asserted9 else INFO, n=n))
    return _emit_records(recs, args.format, args.out)


def cmd_counterexample(args) -> int:
    try:
        e = Fraction(args.e)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid parameter e={args.e!r}") from None
    if e == 0:
        raise UsageError("parameter e must be nonzero")
    C = counterexample_matrix(e)
    ok = verify_element(Partition((2, 2)), StabilizerElement.torus(C), seed=args.seed)
    r = rank(C.entries)
    fac = factor_as_diagonal_pair(C)
    computed = {"stabilizes": ok, "rank": r,
                "factorable": "not factorable as diagonal pair" if fac is None else "factorable",
                "C": dump_matrix(C.entries)}
    status = PASS if ok and r >= 2 and fac is None else FAIL
    rec = CheckRecord("counterexample", "(2,2)",
                      {"stabilizes": True, "rank": ">= 2", "factorable": "not factorable as diagonal pair"},
                      computed, status, n=4)
    return _emit_records([rec], args.format, args.out)


def cmd_duffner(args) -> int:
    p = _partition(args.partition)
    t1, t2 = _permutation(args.tau1), _permutation(args.tau2)
    if not len(t1) == len(t2) == p.n:
        raise UsageError("tau1, tau2 and the partition must share n")
    ok = duffner_solvable(p, t1, t2)
    C = duffner_certificate(p, t1, t2) if ok else None
    computed = {"solvable": ok, "certificate": None if C is None else dump_matrix(C.entries)}
    rec = CheckRecord("duffner", str(p), None, computed, INFO, n=p.n)
    return _emit_records([rec], args.format, args.out)


def cmd_sweep(args) -> int:
    top = 8 if args.allow_n8 else 7
    if not 2 <= args.n_min <= args.n_max <= top:
        raise UsageError(f"need 2 <= --from <= --to <= {top}")
    opts = SweepOptions(args.n_min, args.n_max, args.seed, args.duffner_scan,
                        args.include_exceptional, args.full, args.allow_n8)
    report = run_sweep(opts)
    fmt = args.format or ("json" if args.out else "text")
    text = render(report, fmt)
    if args.out:
        Path(args.out).write_text(text)
        counts = {s: sum(c.status == s for c in report.checks) for s in (PASS, FAIL, INFO)}
        print(f"wrote {args.out}: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[INFO]} info")
    else:
        sys.stdout.write(text)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="immstab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"immstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(sp, default="text"):
        sp.add_argument("--format", choices=["json", "csv", "text"], default=default)
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("char", help="character value chi_partition(class)")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--class", dest="cls", required=True, help="cycle type, e.g. 3,2")
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("table", help="full character table (cached)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cache-dir", help="default: $IMMANANT_CACHE or ~/.cache/immstab")
    sp.add_argument("--format", choices=["json", "csv", "text"], default="text")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("imm", help="immanant of a matrix file")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--matrix", required=True, help="JSON array of arrays; entries int or 'p/q'")
    sp.set_defaults(func=cmd_imm)

    sp = sub.add_parser("gset", help="the group G of zero-set preserving permutations")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--n", type=int)
    with_output(sp)
    sp.set_defaults(func=cmd_gset)

    sp = sub.add_parser("stabdim", help="torus part dimension of the stabilizer")
    sp.add_argument("--partition", required=True)
    with_output(sp)
    sp.set_defaults(func=cmd_stabdim)

    sp = sub.add_parser("spanrank", help="rank of the span of permutation matrices")
    sp.add_argument("--n", type=int, required=True)
    with_output(sp)
    sp.set_defaults(func=cmd_spanrank)

    sp = sub.add_parser("witness", help="factorization and long-cycle witness searches")
    sp.add_argument("--partition", required=True)
    with_output(sp)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("counterexample", help="the (2,2) coefficient matrix outside the identity component")
    sp.add_argument("--e", default="2")
    sp.add_argument("--seed", type=int, default=0)
    with_output(sp)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("duffner", help="solvability of the coefficient system for (tau1, tau2)")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--tau1", required=True, help="one-line notation, e.g. 2,1,3,4")
    sp.add_argument("--tau2", required=True)
    with_output(sp)
    sp.set_defaults(func=cmd_duffner)

    sp = sub.add_parser("sweep", help="run every verification check over a range of n")
    sp.add_argument("--from", dest="n_min", type=int, default=3)
    sp.add_argument("--to", dest="n_max", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--duffner-scan", action="store_true", help="all 14400 (tau1, tau2) pairs at n=5")
    sp.add_argument("--include-exceptional", action="store_true", help="info records for (4,1,1,1) at n=7")
    sp.add_argument("--full", action="store_true", help="n=7 G sets and span sweeps")
    sp.add_argument("--allow-n8", action="store_true")
    sp.add_argument("--format", choices=["json", "csv", "text"])
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"immstab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
