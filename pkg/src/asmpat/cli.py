"""Command line interface.

Exit codes: 0 success (or "contains"), 1 "avoids" from ``contains``,
2 usage or input error, 3 generation ceiling refused, 4 a check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import formulas
from .core import (
    Asm,
    ContainmentMode,
    InputShapeError,
    InvalidAsmError,
    PatternMatrix,
    Permutation,
    Symmetry,
    apply_symmetry_pattern,
    parse_grid_rows,
    parse_matrix_text,
    to_grid,
    to_json,
    word_to_pattern,
)
from .enumerator import (
    STRUCTURE_SUITES,
    AvoidanceQuery,
    SequenceRecord,
    at_most_one_negative_patterns,
    count_avoiding,
    sequence,
    verify_structure_suite,
)
from .generator import (
    CeilingError,
    GammaSpec,
    GammaVariant,
    block_diagonal,
    check_ceiling,
    composition_count,
    gamma,
    generate_asms,
    parse_shard,
)
from .goldens import GOLDENS
from .matcher import contains

EXIT_OK, EXIT_AVOIDS, EXIT_USAGE, EXIT_CEILING, EXIT_FAILED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# --- pattern specs -----------------------------------------------------------


def parse_pattern_spec(spec: str) -> PatternMatrix:
    """``2143`` permutation, ``w:1231`` word, ``wt:111`` transposed word, ``@file`` grid."""
    spec = spec.strip()
    if not spec:
        raise UsageError("empty pattern spec")
    if spec.startswith("@"):
        return PatternMatrix(parse_grid_rows(Path(spec[1:]).read_text(encoding="utf-8")))
    if spec.startswith("w:"):
        return word_to_pattern(spec[2:])
    if spec.startswith("wt:"):
        return apply_symmetry_pattern(word_to_pattern(spec[3:]), Symmetry.TRANSPOSE)
    if spec.isdigit():
        return Permutation.parse(spec).pattern()
    raise UsageError(f"unrecognised pattern spec {spec!r}")


def parse_pattern_list(text: str | None) -> tuple[PatternMatrix, ...]:
    if not text:
        return ()
    return tuple(parse_pattern_spec(s) for s in text.split(",") if s.strip())


def _mode(name: str | None) -> ContainmentMode | None:
    return ContainmentMode(name) if name else None


def _query(patterns, mode, k=None, k_at_most=None) -> AvoidanceQuery:
    try:
        return AvoidanceQuery(patterns, mode, k, k_at_most)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- output --------------------------------------------------------------------


def emit_sequence(rec: SequenceRecord, fmt: str) -> str:
    if fmt == "bfile":
        return "".join(f"{n} {t}\n" for n, t in rec.items())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count"])
        w.writerows(rec.items())
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "name": rec.name,
            "offset": rec.offset,
            "terms": rec.terms,
            "provenance": rec.provenance.value,
            "mode": rec.mode,
            "patterns": rec.patterns,
            "n_range": list(rec.n_range) if rec.n_range else None,
            "k": rec.k,
            "k_at_most": rec.k_at_most,
        }
        return json.dumps(payload) + "\n"
    raise UsageError(f"unknown output format {fmt!r}")


def _emit_asm(a: Asm, fmt: str) -> str:
    return to_json(a) + "\n" if fmt == "json" else to_grid(a)


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- subcommands -------------------------------------------------------------


def cmd_generate(args) -> int:
    shard = parse_shard(args.shard) if args.shard else None
    out = []
    for idx, a in enumerate(generate_asms(args.n, shard=shard, allow_large=args.allow_large)):
        if args.limit is not None and idx >= args.limit:
            break
        if args.format == "asm-grid" and out:
            out.append("\n")
        out.append(_emit_asm(a, args.format))
    _write(args, "".join(out))
    return EXIT_OK


def cmd_count(args) -> int:
    patterns = parse_pattern_list(args.patterns)
    q = _query(patterns, _mode(args.mode), args.k, args.k_at_most)
    check_ceiling(args.n_max, args.allow_large)
    rec = sequence(q, args.n_max, args.n_min, threads=args.threads, allow_large=args.allow_large)
    _write(args, emit_sequence(rec, args.format))
    return EXIT_OK


def _read_host(path: str) -> Asm:
    return parse_matrix_text(Path(path).read_text(encoding="utf-8"))


def cmd_contains(args) -> int:
    host = _read_host(args.host)
    pattern = parse_pattern_spec(args.pattern)
    occ = contains(host, pattern, ContainmentMode(args.mode))
    if occ is None:
        sys.stdout.write("avoids\n")
        return EXIT_AVOIDS
    sys.stdout.write(f"{occ}\n")
    return EXIT_OK


def _parse_block(spec: str) -> Asm:
    if spec.startswith("@"):
        return _read_host(spec[1:])
    kind, _, rest = spec.partition(":")
    if kind in ("gamma", "gamma-prime") and rest:
        n_text, _, pi_text = rest.partition(":")
        variant = GammaVariant.PRIMED if kind == "gamma-prime" else GammaVariant.PLAIN
        return gamma(GammaSpec(int(n_text), Permutation.parse(pi_text), variant))
    if spec.isdigit():
        return Permutation.parse(spec).matrix()
    raise UsageError(f"unrecognised block spec {spec!r}")


def cmd_construct(args) -> int:
    if args.kind in ("gamma", "gamma-prime"):
        if args.n is None or args.pi is None:
            raise UsageError(f"construct {args.kind} needs --n and --pi")
        variant = GammaVariant.PRIMED if args.kind == "gamma-prime" else GammaVariant.PLAIN
        a = gamma(GammaSpec(args.n, Permutation.parse(args.pi), variant))
    else:
        if args.count is not None:
            _write(args, f"{composition_count(args.count)}\n")
            return EXIT_OK
        if not args.block:
            raise UsageError("construct block-diagonal needs --block (or --count)")
        a = block_diagonal([_parse_block(b) for b in args.block])
    _write(args, _emit_asm(a, args.format))
    return EXIT_OK


def cmd_sequence(args) -> int:
    if args.list or not args.name:
        lines = [f"{g.name}\t{g.provenance.value}\t{g.description}\n" for g in GOLDENS.values()]
        _write(args, "".join(lines))
        return EXIT_OK
    if args.name not in GOLDENS:
        raise UsageError(f"unknown sequence {args.name!r}; see --list")
    golden = GOLDENS[args.name]
    q = golden.query()
    n_max = args.n_max if args.n_max is not None else min(len(golden.terms), 7)
    check_ceiling(n_max, args.allow_large)
    rec = sequence(q, n_max, name=golden.name, threads=args.threads, allow_large=args.allow_large)
    _write(args, emit_sequence(rec, args.format))
    if args.check:
        expected = list(golden.terms[: len(rec.terms)])
        if len(expected) < len(rec.terms) or rec.terms != expected:
            sys.stderr.write(f"MISMATCH {golden.name}: got {rec.terms}, expected {expected}\n")
            return EXIT_FAILED
        sys.stderr.write(f"MATCH {golden.name} n=1..{n_max}\n")
    return EXIT_OK


def _table(header: Sequence[str], rows: list[Sequence]) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in [header, *rows])


def _verify_rows(target: str, n_max: int, args) -> tuple[list[str], list[tuple]]:
    """Per-n rows ending with a boolean ``ok`` column."""
    if target == "thm14":
        gf = formulas.thm14_gf_coefficients(n_max)
        rows = []
        for n in range(n_max + 1):
            c, t = formulas.thm14_closed(n), formulas.thm14_triple_sum(n)
            rows.append((n, c, t, gf[n], c == t == gf[n]))
        return ["n", "closed", "triple_sum", "gf", "ok"], rows
    if target == "skew-merged":
        gf = formulas.skew_merged_gf(n_max).integer_coeffs()
        rows = [(n, formulas.skew_merged(n), gf[n], formulas.skew_merged(n) == gf[n]) for n in range(n_max + 1)]
        return ["n", "formula", "gf", "ok"], rows
    if target == "appendix":
        if n_max < 7:
            raise UsageError("the appendix identity starts at n = 7")
        report = formulas.verify_appendix_identity(7, n_max)
        gf = formulas.appendix_gf(n_max - 5).integer_coeffs()
        rows = [
            (r.n, r.lhs, r.rhs, r.reindexed_lhs, r.reindexed_rhs, gf[r.n - 5], r.ok and gf[r.n - 5] == r.reindexed_lhs)
            for r in report.rows
        ]
        return ["n", "lhs", "rhs", "reindexed_lhs", "reindexed_rhs", "gf", "ok"], rows
    if target in ("prop62", "remark62"):
        check_ceiling(n_max, args.allow_large)
        if target == "prop62":
            q, f = AvoidanceQuery(at_most_one_negative_patterns()), formulas.at_most_one_formula
        else:
            q, f = AvoidanceQuery(k=1), formulas.one_negative_formula
        rows = []
        for n in range(1, n_max + 1):
            e = count_avoiding(n, q, args.threads, args.allow_large)
            rows.append((n, e, f(n), e == f(n)))
        return ["n", "enumerated", "formula", "ok"], rows
    if target.startswith("lemma:"):
        name = target.split(":", 1)[1]
        if name not in STRUCTURE_SUITES:
            raise UsageError(f"unknown lemma id {name!r}; expected one of {sorted(STRUCTURE_SUITES)}")
        check_ceiling(n_max, args.allow_large)
        report = verify_structure_suite(name, n_max, args.allow_large)
        bad = {}
        for n, _ in report.counterexamples:
            bad[n] = bad.get(n, 0) + 1
        rows = [
            (n, report.population[n], report.applicable[n], bad.get(n, 0), bad.get(n, 0) == 0)
            for n in sorted(report.population)
        ]
        return ["n", "population", "applicable", "counterexamples", "ok"], rows
    raise UsageError(f"unknown verify target {target!r}")


def cmd_verify(args) -> int:
    header, rows = _verify_rows(args.target, args.n_max, args)
    passed = sum(1 for r in rows if r[-1])
    status = "PASS" if passed == len(rows) else "FAIL"
    if args.format == "json":
        payload = {
            "target": args.target,
            "status": status,
            "passed": passed,
            "total": len(rows),
            "rows": [dict(zip(header, r)) for r in rows],
        }
        _write(args, json.dumps(payload) + "\n")
    else:
        _write(args, _table(header, rows) + f"{status} {passed}/{len(rows)}\n")
    return EXIT_OK if status == "PASS" else EXIT_FAILED


_SERIES = {
    "thm14": formulas.thm14_gf,
    "skew-merged": formulas.skew_merged_gf,
    "appendix": formulas.appendix_gf,
    "central-binomial": formulas.central_binomial_series,
}


def cmd_series(args) -> int:
    coeffs = _SERIES[args.gf](args.order).integer_coeffs()
    _write(args, "".join(f"{n} {c}\n" for n, c in enumerate(coeffs)))
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asmpat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads=False):
        sp.add_argument("--allow-large", action="store_true", help="lift the generation ceiling")
        sp.add_argument("--output", help="write to this file instead of stdout")
        if threads:
            sp.add_argument("--threads", type=_positive, default=1, help="worker processes")

    g = sub.add_parser("generate", help="stream every n x n ASM")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--format", choices=["asm-grid", "json"], default="asm-grid")
    g.add_argument("--limit", type=_nonneg)
    g.add_argument("--shard", help="i/m: emit only shard i of m")
    common(g)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("count", help="count ASMs avoiding patterns, for n = n-min..n-max")
    c.add_argument("--n-max", type=_positive, required=True)
    c.add_argument("--n-min", type=_positive, default=1)
    c.add_argument("--patterns", default="", help='comma-separated specs: "2143", "w:1231", "wt:111", "@file"')
    c.add_argument("--mode", choices=[m.value for m in ContainmentMode])
    kk = c.add_mutually_exclusive_group()
    kk.add_argument("--k", type=_nonneg, help="exactly K entries equal to -1")
    kk.add_argument("--k-at-most", type=_nonneg, help="at most K entries equal to -1")
    c.add_argument("--format", choices=["bfile", "csv", "json"], default="bfile")
    common(c, threads=True)
    c.set_defaults(func=cmd_count)

    h = sub.add_parser("contains", help="decide containment of one pattern in one host")
    h.add_argument("--host", required=True, help="asm-grid or JSON file")
    h.add_argument("--pattern", required=True)
    h.add_argument("--mode", choices=[m.value for m in ContainmentMode], required=True)
    h.set_defaults(func=cmd_contains)

    k = sub.add_parser("construct", help="build the explicit constructions")
    k.add_argument("kind", choices=["gamma", "gamma-prime", "block-diagonal"])
    k.add_argument("--n", type=_positive)
    k.add_argument("--pi")
    k.add_argument("--block", action="append", help='"@file", "gamma:N:PI", "gamma-prime:N:PI" or a permutation')
    k.add_argument("--count", type=_positive, help="print the number of block-diagonal formations of size N")
    k.add_argument("--format", choices=["asm-grid", "json"], default="asm-grid")
    common(k)
    k.set_defaults(func=cmd_construct)

    s = sub.add_parser("sequence", help="reproduce a named reference sequence")
    s.add_argument("--name")
    s.add_argument("--list", action="store_true")
    s.add_argument("--n-max", type=_positive)
    s.add_argument("--check", action="store_true", help="compare against the stored terms")
    s.add_argument("--format", choices=["bfile", "csv", "json"], default="bfile")
    common(s, threads=True)
    s.set_defaults(func=cmd_sequence)

    v = sub.add_parser("verify", help="check identities and structural lemmas")
    v.add_argument(
        "--target",
        required=True,
        help="thm14 | skew-merged | appendix | prop62 | remark62 | lemma:<id> (" + ", ".join(STRUCTURE_SUITES) + ")",
    )
    v.add_argument("--n-max", type=_nonneg, required=True)
    v.add_argument("--format", choices=["text", "json"], default="text")
    common(v, threads=True)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("series", help="print generating-function coefficients")
    r.add_argument("--gf", choices=sorted(_SERIES), required=True)
    r.add_argument("--order", type=_nonneg, required=True)
    common(r)
    r.set_defaults(func=cmd_series)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CeilingError as exc:
        sys.stderr.write(f"asmpat: {exc}\n")
        return EXIT_CEILING
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (UsageError, InputShapeError, InvalidAsmError, ValueError, OSError) as exc:
        sys.stderr.write(f"asmpat: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
