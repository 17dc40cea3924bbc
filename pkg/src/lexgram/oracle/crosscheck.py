"""Compare the parser against both reference engines."""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..categories import CategoryLevelError, STree, from_curried, parse_category, to_curried
from ..lexicon import CompiledLexicon
from ..parser import ParseLimits, Parser
from .lambek import LambekProver, ProverBoundExceeded, Sequent
from .naive import NaiveEngine

ENGINES = ("parser", "naive", "lambek")


@dataclass
class CheckRow:
    sentence: tuple[str, ...]
    target: str
    engine: str
    verdict: str  # derivable | underivable | limit | n/a
    roots: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{' '.join(self.sentence)}\t{self.target}\t{self.engine}\t{self.verdict}"


@dataclass
class Disagreement:
    sentence: tuple[str, ...]
    target: str
    verdicts: dict[str, str]
    roots: dict[str, tuple[str, ...]]

    def __str__(self) -> str:
        parts = ", ".join(f"{e}={v}" for e, v in self.verdicts.items())
        return f"{' '.join(self.sentence) or '<empty>'} -> {self.target}: {parts}"


@dataclass
class CrossCheckReport:
    rows: list[CheckRow] = field(default_factory=list)
    disagreements: list[Disagreement] = field(default_factory=list)
    lambek_used: bool = False
    checks: int = 0

    @property
    def agree(self) -> bool:
        return not self.disagreements

    @property
    def witness(self) -> Disagreement | None:
        """The shortest disagreeing sentence, if any."""
        if not self.disagreements:
            return None
        return min(self.disagreements, key=lambda d: (len(d.sentence), d.sentence, d.target))

    def summary(self) -> str:
        if self.agree:
            return f"AGREE: {self.checks} checks, 0 disagreements"
        return (f"DISAGREE: {len(self.disagreements)} of {self.checks} checks disagree; "
                f"witness: {self.witness}")

    def format(self, rows: bool = True) -> str:
        lines = [str(r) for r in self.rows] if rows else []
        lines.append(self.summary())
        return "\n".join(lines)


def target_tree(target) -> STree:
    if isinstance(target, STree):
        return target
    return from_curried(parse_category(str(target)))


class CrossChecker:
    """Runs one (sentence, target) pair through all engines, sharing memo tables."""

    def __init__(self, lex: CompiledLexicon, parser_options: dict | None = None,
                 limits: ParseLimits | None = None, lambek: bool | None = None,
                 keep_rows: bool = True):
        self.lex = lex
        self.parser = Parser(lex, **(parser_options or {}))
        self.limits = limits or ParseLimits()
        self.naive = NaiveEngine(lex)
        self.prover = LambekProver()
        self.keep_rows = keep_rows
        self._curried: dict[str, list] = {}
        if lambek is None:
            lambek = lex.feature_free and self._all_curried()
        self.use_lambek = lambek
        self.on_parse = None  # optional hook(tokens, target, ParseResult)

    def _all_curried(self) -> bool:
        try:
            for w in self.lex.words():
                self.curried(w)
        except CategoryLevelError:
            return False
        return True

    def curried(self, word: str) -> list:
        if word not in self._curried:
            self._curried[word] = [to_curried(t) for t in self.lex.expand(word)]
        return self._curried[word]

    def check(self, tokens: Sequence[str], target, report: CrossCheckReport):
        tokens = tuple(tokens)
        goal = target_tree(target)
        label = str(target)
        verdicts: dict[str, str] = {}
        roots: dict[str, tuple[str, ...]] = {}

        result = self.parser.parse(tokens, goal, self.limits)
        if self.on_parse is not None:
            self.on_parse(tokens, goal, result)
        verdicts["parser"] = "limit" if result.limit_exceeded == "max_depth" else (
            "derivable" if result.derivations else "underivable")
        roots["parser"] = tuple(sorted({str(d.result.root) for d in result.derivations}))

        self.naive.budget_exhausted = False
        naive = self.naive.parse(tokens, goal)
        verdicts["naive"] = "derivable" if naive else (
            "limit" if self.naive.budget_exhausted else "underivable")
        roots["naive"] = tuple(sorted({str(r.root) for r in naive}))

        if self.use_lambek:
            verdicts["lambek"] = self._lambek(tokens, goal)
            roots["lambek"] = roots["naive"] if verdicts["lambek"] == "derivable" else ()

        report.checks += 1
        if self.keep_rows:
            for engine, verdict in verdicts.items():
                report.rows.append(CheckRow(tokens, label, engine, verdict, roots[engine]))
        decided = {e: v for e, v in verdicts.items() if v != "n/a"}
        if len(set(decided.values())) > 1 or roots["parser"] != roots["naive"]:
            report.disagreements.append(Disagreement(tokens, label, verdicts, roots))

    def _lambek(self, tokens, goal: STree) -> str:
        if not tokens:
            return "underivable"
        try:
            succedent = to_curried(goal)
        except CategoryLevelError:
            return "n/a"
        choices = [self.curried(w) for w in tokens]
        try:
            for combo in itertools.product(*choices):
                if self.prover.prove(Sequent(tuple(combo), succedent)).provable:
                    return "derivable"
        except ProverBoundExceeded:
            return "limit"
        return "underivable"


def cross_check(lex: CompiledLexicon, sentences: Iterable[Sequence[str]], targets: Iterable,
                **options) -> CrossCheckReport:
    """Check every sentence against every target."""
    targets = list(targets)
    return cross_check_pairs(lex, ((s, t) for s in sentences for t in targets), **options)


def cross_check_pairs(lex: CompiledLexicon, pairs: Iterable[tuple[Sequence[str], object]],
                      **options) -> CrossCheckReport:
    checker = CrossChecker(lex, **options)
    report = CrossCheckReport(lambek_used=checker.use_lambek)
    for tokens, target in pairs:
        checker.check(tokens, target, report)
    return report
