"""Command-line interface: ``z4class <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .classify import (
    IncompleteCellError,
    TableCounts,
    classify_cell,
    classify_length,
    counts_from_cells,
    duality_check,
    load_table_counts,
    save_cell,
)
from .code_model import dual, format_generator, read_generator, residue
from .enumeration import cells, closed_form_count
from .equivalence import are_equivalent
from .tables import N_PRIME, N_PRIME_TOTAL, N_TOTAL
from .weights import KINDS, enumerator, weight_profile

log = logging.getLogger("z4class")


def _cmd_cell(args) -> int:
    cell = classify_cell(args.n, args.k1, args.k2, fast=args.fast, report=args.report_filters, time_limit=args.time_limit)
    if not cell.complete:
        print(f"N'({args.n},{args.k1},{args.k2}) incomplete: stopped after {cell.candidates} candidates")
        return 3
    print(f"N'({cell.n},{cell.k1},{cell.k2}) = {cell.n_prime}  [{cell.method}, {cell.elapsed:.2f}s]")
    if args.report_filters and cell.report is not None:
        print(json.dumps(cell.report.as_dict()))
    if args.out:
        path = save_cell(args.out, cell)
        print(f"wrote {path}")
    return 0


def _prior_for(n: int, args) -> TableCounts | None:
    if n == 1:
        return None
    for source in (args.prior, args.out):
        if source:
            counts = load_table_counts(source, n - 1)
            if counts is None:
                try:
                    counts = counts_from_cells(source, n - 1)[-1]
                except FileNotFoundError:
                    counts = None
            if counts is not None:
                return counts
    if args.prior:
        raise FileNotFoundError(f"no length-{n - 1} results under {args.prior}")
    log.info("no prior for length %d; classifying lengths 1..%d first", n, n - 1)
    prior = None
    for m in range(1, n):
        table = classify_length(m, prior, out_dir=args.out)
        prior = TableCounts(m, table.n_prime, table.n_counts)
    return prior


def _cmd_length(args) -> int:
    prior = _prior_for(args.n, args)
    table = classify_length(args.n, prior, out_dir=args.out, fast=args.fast)
    if not table.complete:
        print(f"length {args.n} incomplete")
        return 3
    for (k1, k2), cell in table.cells.items():
        print(
            f"N'({args.n},{k1},{k2}) = {cell.n_prime:>6}   N({args.n},{k1},{k2}) = {table.n_counts[(k1, k2)]:>6}"
            f"   [{cell.method}, {cell.elapsed:.2f}s]"
        )
    print(f"N'({args.n}) = {table.n_prime_total}")
    print(f"N({args.n}) = {table.n_total}")
    print(table.duality)
    return 0 if table.duality.ok else 1


def _cmd_equiv(args) -> int:
    a = read_generator(args.file_a).code
    b = read_generator(args.file_b).code
    witness = are_equivalent(a, b) if a.n == b.n else None
    if witness is None:
        print("inequivalent")
        return 1
    print("equivalent")
    print(witness)
    return 0


def _cmd_dual(args) -> int:
    parsed = read_generator(args.file)
    d = dual(parsed.standard)
    columns = [parsed.perm[p] + 1 for p in d.perm]
    print(format_generator(d.generator, [f"columns: {' '.join(map(str, columns))}"]), end="")
    return 0


def _cmd_residue(args) -> int:
    parsed = read_generator(args.file)
    res = residue(parsed.standard)
    # residue() works in standard-form coordinates; report it in the file's own order
    inverse = [0] * parsed.code.n
    for j, p in enumerate(parsed.perm):
        inverse[p] = j
    print(f"{res.n} {res.dimension}")
    for row in res.generator:
        print(" ".join(str(int(row[inverse[c]])) for c in range(res.n)))
    print(f"# weight distribution: {' '.join(map(str, res.weight_distribution()))}")
    return 0


def _cmd_weights(args) -> int:
    code = read_generator(args.file).code
    names = {"hamming": "hwe", "lee": "lwe", "symmetrized": "swe"}
    for kind in KINDS:
        print(f"{names[kind]}: {enumerator(code, kind)}")
    print(weight_profile(code))
    return 0


def _cmd_check(args) -> int:
    failures = 0

    def line(ok: bool, text: str):
        nonlocal failures
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {text}")

    tables = counts_from_cells(args.dir, args.n)
    for t in tables:
        n = t.n
        report = duality_check(t)
        line(report.ok, str(report))
        for k1, k2 in cells(n):
            expected = closed_form_count(n, k1, k2)
            if expected is not None:
                got = t.n_prime[(k1, k2)]
                line(got == expected, f"closed form N'({n},{k1},{k2}) = {expected}, classified {got}")
        if n in N_PRIME:
            bad = {k: (v, N_PRIME[n][k]) for k, v in t.n_prime.items() if N_PRIME[n][k] != v}
            line(not bad, f"table for length {n}" + (f": mismatches {bad}" if bad else ""))
            line(sum(t.n_prime.values()) == N_PRIME_TOTAL[n], f"N'({n}) = {sum(t.n_prime.values())} (published {N_PRIME_TOTAL[n]})")
            line(sum(t.n_counts.values()) == N_TOTAL[n], f"N({n}) = {sum(t.n_counts.values())} (published {N_TOTAL[n]})")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="z4class", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cell", help="classify one (n, k1, k2) cell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--fast", action="store_true", help="use closed-form constructions where available")
    p.add_argument("--report-filters", action="store_true", help="print candidate filter counts as JSON")
    p.add_argument("--time-limit", type=float, help="give up after this many seconds")
    p.set_defaults(func=_cmd_cell)

    p = sub.add_parser("length", help="classify every cell of length n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prior", type=Path, help="directory holding length n-1 results")
    p.add_argument("--out", type=Path, help="checkpoint directory; completed cells are reused")
    p.add_argument("--fast", action="store_true")
    p.set_defaults(func=_cmd_length)

    p = sub.add_parser("equiv", help="test equivalence; the witness maps FILE_B onto FILE_A")
    p.add_argument("file_a", type=Path)
    p.add_argument("file_b", type=Path)
    p.set_defaults(func=_cmd_equiv)

    for name, func, text in (
        ("dual", _cmd_dual, "standard-form generator of the dual code"),
        ("residue", _cmd_residue, "generator of the binary residue code"),
        ("weights", _cmd_weights, "weight enumerators and minimum weights"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file", type=Path)
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="re-verify saved results for lengths 1..n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dir", type=Path, required=True)
    p.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, IncompleteCellError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
