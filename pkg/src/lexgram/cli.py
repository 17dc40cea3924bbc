"""Command-line front end.

Exit status: 0 on success, 1 for "no parse" / oracle disagreement,
2 for load errors, malformed input or an exceeded search limit.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .categories import CategoryLevelError, format_category, from_curried, parse_category, to_curried
from .grammar_file import GrammarError
from .lexicon import CompiledLexicon, demo_grammar_path, load_grammar_file
from .oracle.crosscheck import cross_check_pairs
from .parser import ParseLimits, Parser, format_derivation

DEMO_NAME = "DEMO-EN"
DEFAULT_SHOWN = 8


class UsageError(Exception):
    pass


def _load(path: str) -> CompiledLexicon:
    if path == DEMO_NAME and not Path(path).exists():
        path = str(demo_grammar_path())
    try:
        return load_grammar_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read grammar {path}: {exc.strerror or exc}") from None
    except GrammarError as exc:
        raise UsageError("\n".join(f"{path}: {d}" for d in exc.diagnostics)) from None


def _target(text: str):
    try:
        return from_curried(parse_category(text))
    except ValueError as exc:
        raise UsageError(f"bad target {text!r}: {exc}") from None


def cmd_parse(args, out, err) -> int:
    lex = _load(args.grammar)
    target = _target(args.target)
    tokens = " ".join(args.sentence).split()
    if args.max_derivations < 1:
        raise UsageError("--max-derivations must be at least 1")
    limits = ParseLimits(max_derivations=args.max_derivations, max_depth=args.max_depth)
    result = Parser(lex).parse(tokens, target, limits)
    shown = result.derivations if args.all else result.derivations[:DEFAULT_SHOWN]
    style = "golden" if args.output == "golden" else "pretty"
    for i, d in enumerate(shown):
        if style == "pretty":
            if i:
                print(file=out)
            print(f"# derivation {i + 1}", file=out)
        print(format_derivation(d, style), file=out)
    print(f"derivations: {len(result.derivations)}", file=out)
    if result.limit_exceeded:
        print(f"search limit exceeded: {result.limit_exceeded}", file=err)
        return 2
    return 0 if result.derivations else 1


def cmd_check(args, out, err) -> int:
    lex = _load(args.grammar)
    for w in lex.warnings:
        print(f"{args.grammar}: warning: {w}", file=err)
    n_alts = sum(len(lex.expand(w)) for w in lex.words())
    print(f"ok: {len(lex.atoms)} atoms, {len(lex.classes)} classes, "
          f"{len(lex.words())} words, {n_alts} lexical trees", file=out)
    return 0


def _curried_text(tree) -> str:
    try:
        return format_category(to_curried(tree))
    except CategoryLevelError:
        return format_category(to_curried(tree, strict=False)) + "  [not level-valid]"


def cmd_dump(args, out, err) -> int:
    lex = _load(args.grammar)
    words = [args.word] if args.word is not None else lex.words()
    printed = 0
    for word in words:
        for tree, trace in zip(lex.expand(word), lex.provenance(word)):
            line = f"{word}\t{tree}\t{_curried_text(tree)}"
            if args.provenance:
                line += "\t" + " ".join(f"{c}#{i + 1}" for c, i in trace)
            print(line, file=out)
            printed += 1
    if not printed:
        print("no entries", file=out)
    return 0


def read_corpus(path: str) -> list[tuple[list[str], str]]:
    pairs = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read corpus {path}: {exc.strerror or exc}") from None
    for no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise UsageError(f"{path}:{no}: expected 'sentence<TAB>target'")
        sentence, target = line.rsplit("\t", 1)
        if not target.strip():
            raise UsageError(f"{path}:{no}: empty target")
        _target(target.strip())
        pairs.append((sentence.split(), target.strip()))
    return pairs


def cmd_oracle(args, out, err) -> int:
    lex = _load(args.grammar)
    pairs = read_corpus(args.corpus)
    report = cross_check_pairs(lex, pairs)
    print(report.format(), file=out)
    return 0 if report.agree else 1


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lexgram", description="Lexicalized categorial grammar parser")
    sub = ap.add_subparsers(dest="command", required=True)

    def grammar_arg(p):
        p.add_argument("--grammar", required=True,
                       help=f"grammar file ({DEMO_NAME} selects the bundled demo grammar)")

    p = sub.add_parser("parse", help="parse a sentence and print its derivations")
    grammar_arg(p)
    p.add_argument("--target", required=True, help="goal category, e.g. s or np{case=nom}")
    p.add_argument("--all", action="store_true", help=f"print every derivation, not just the first {DEFAULT_SHOWN}")
    p.add_argument("--max-derivations", type=int, default=ParseLimits.max_derivations)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--output", choices=("pretty", "golden"), default="pretty")
    p.add_argument("sentence", nargs="*", help="the sentence (whitespace tokenized)")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("check", help="load a grammar and report problems")
    grammar_arg(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dump", help="print expanded lexical trees and their curried categories")
    grammar_arg(p)
    p.add_argument("--word")
    p.add_argument("--provenance", action="store_true", help="append the class clauses used")
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("oracle", help="cross-check the parser against the reference engines")
    grammar_arg(p)
    p.add_argument("--corpus", required=True, help="file of 'sentence<TAB>target' lines")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        print(f"lexgram: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
