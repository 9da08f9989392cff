"""Command-line entry point: ``uccasnacs <command> ...``.

Exit codes: 0 success, 1 data error (unreadable or malformed input), 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import analytics, metrics
from .conllulex import AlignedSentence, align, read_conllulex, snacs_targets
from .errors import UccaSnacsError
from .govobj import dump_tsv, resolve
from .graph import edge_signature, format_bracketed, strip_refinements, validate
from .integrate import IntegrationOptions, failures_tsv, integrate_corpus
from .transitions import RELATION_LEVEL, TERMINAL_LEVEL, encode, oracle, replay
from .ucca_io import read_passages, to_dot, write_passage


class DataError(UccaSnacsError):
    pass


def _options(args) -> IntegrationOptions:
    return IntegrationOptions(ignore_punct=args.ignore_punct, refine_remotes=args.refine_remotes)


def _aligned(lex: Sequence[str], ucca: Sequence[str]) -> list[AlignedSentence]:
    sentences = [s for path in lex for s in read_conllulex(path)]
    return align(sentences, read_passages(ucca))


def _passages(args):
    """Passages from --ucca, integrated first when --lex is given."""
    if getattr(args, "lex", None):
        aligned = _aligned(args.lex, args.ucca)
        passages, _ = integrate_corpus(aligned, _options(args))
    else:
        passages = read_passages(args.ucca)
    return sorted(passages, key=lambda p: p.id)


def _write(path: Optional[str], text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def cmd_integrate(args) -> int:
    aligned = sorted(_aligned(args.lex, args.ucca), key=lambda a: a.id)
    passages, results = integrate_corpus(aligned, _options(args))
    for p in passages:
        if args.format == "bracket":
            os.makedirs(args.out, exist_ok=True)
            _write(os.path.join(args.out, f"{p.id}.txt"), format_bracketed(p) + "\n")
        else:
            write_passage(p, args.out, args.format)
    if args.failures:
        _write(args.failures, failures_tsv(results))
    ok = sum(r.refined for r in results)
    coverage = 100.0 * ok / len(results) if results else 100.0
    print(f"sentences\t{len(aligned)}\ntargets\t{len(results)}\nsuccesses\t{ok}\ncoverage\t{coverage:.1f}%")
    return 0


def cmd_evaluate(args) -> int:
    pairs = metrics.pair_by_id(read_passages(args.gold), read_passages(args.pred))
    report = metrics.score_corpus(pairs)
    emit = {"tsv": report.to_tsv, "json": report.to_json, "table": report.to_table}[args.report]
    _write(args.out, emit())
    return 0


def cmd_stats(args) -> int:
    stats, breakdowns = {}, {}
    for name, lex, ucca in args.split:
        aligned = _aligned([lex], [ucca])
        passages, results = integrate_corpus(aligned, _options(args))
        stats[name] = analytics.split_stats(aligned, passages, results)
        breakdowns[name] = analytics.construction_breakdown(results)
    names = list(stats)
    emit = analytics.to_markdown if args.format == "markdown" else analytics.to_tsv
    text = emit(analytics.corpus_stats(stats), names) + "\n" + emit(analytics.breakdown_rows(breakdowns), names)
    _write(args.out, text)
    return 0


def cmd_roundtrip(args) -> int:
    passages = _passages(args)
    failures = []
    lines = []
    for encoding in (TERMINAL_LEVEL, RELATION_LEVEL):
        ok = 0
        for p in passages:
            try:
                rebuilt = replay(p.terminals, oracle(p, encoding), p.id)
                good = edge_signature(rebuilt) == edge_signature(encode(p, encoding))
                reason = "" if good else "reconstruction differs"
            except UccaSnacsError as e:
                good, reason = False, str(e)
            ok += good
            if not good:
                failures.append(f"{p.id}\t{encoding}\t{reason}")
        rate = 100.0 * ok / len(passages) if passages else 100.0
        lines.append(f"{encoding}\t{ok}/{len(passages)}\t{rate:.1f}%")
    print("\n".join(lines))
    if args.failures:
        _write(args.failures, "passage\tencoding\treason\n" + "".join(f + "\n" for f in failures))
    return 0


def cmd_dot(args) -> int:
    by_id = {p.id: p for p in _passages(args)}
    if args.id not in by_id:
        raise DataError(f"unknown passage id {args.id!r}")
    _write(args.out, to_dot(by_id[args.id]))
    return 0


def cmd_govobj(args) -> int:
    rows = [(s.id, resolve(s, t)) for path in args.lex for s in read_conllulex(path) for t in snacs_targets(s)]
    _write(args.out, dump_tsv(rows))
    return 0


def cmd_strip(args) -> int:
    for p in read_passages(args.ucca):
        write_passage(strip_refinements(p), args.out, args.format)
    return 0


def cmd_validate(args) -> int:
    bad = 0
    for p in sorted(read_passages(args.ucca), key=lambda p: p.id):
        for v in validate(p, strict=args.strict):
            bad += v.severity == "error"
            print(f"{p.id}\t{v.severity}\t{v.kind}\t{v.message}")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uccasnacs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def integration_flags(p):
        p.add_argument("--ignore-punct", action="store_true",
                       help="skip punctuation when testing a unit's first/last terminal")
        p.add_argument("--refine-remotes", action="store_true",
                       help="also refine remote edges entering a refined unit")

    p = sub.add_parser("integrate", help="place supersenses on UCCA edges")
    p.add_argument("--ucca", nargs="+", required=True, help="passage files or directories")
    p.add_argument("--lex", nargs="+", required=True, help=".conllulex file(s)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("json", "xml", "bracket"), default="json")
    p.add_argument("--failures", help="write failed targets as TSV")
    integration_flags(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("evaluate", help="score predicted against gold passages")
    p.add_argument("--gold", nargs="+", required=True)
    p.add_argument("--pred", nargs="+", required=True)
    p.add_argument("--report", choices=("tsv", "json", "table"), default="table")
    p.add_argument("--out", help="write report here instead of stdout")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="corpus and construction-type tables")
    p.add_argument("--split", nargs=3, action="append", required=True, metavar=("NAME", "LEX", "UCCA"))
    p.add_argument("--format", choices=("markdown", "tsv"), default="markdown")
    p.add_argument("--out")
    integration_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("roundtrip", help="oracle/replay reconstruction rate per encoding")
    p.add_argument("--ucca", nargs="+", required=True)
    p.add_argument("--lex", nargs="+", help="integrate with these before the round trip")
    p.add_argument("--failures", help="write failures as TSV")
    integration_flags(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("dot", help="Graphviz rendering of one passage")
    p.add_argument("--ucca", nargs="+", required=True)
    p.add_argument("--lex", nargs="+", help="integrate with these before rendering")
    p.add_argument("--id", required=True)
    p.add_argument("--out")
    integration_flags(p)
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("govobj", help="governor/object of every target as TSV")
    p.add_argument("--lex", nargs="+", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_govobj)

    p = sub.add_parser("strip", help="copy passages without refinements")
    p.add_argument("--ucca", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("json", "xml"), default="json")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("validate", help="report structural violations")
    p.add_argument("--ucca", nargs="+", required=True)
    p.add_argument("--strict", action="store_true", help="include warnings")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UccaSnacsError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
