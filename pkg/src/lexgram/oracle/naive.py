"""Reference engine without slash threading.

Instead of carrying trace hypotheses through the search, a complement's
slash elements are placed directly into its phonology: the complement's
string is every order-preserving interleaving of the adjacent words with
the trace items.  A phonology is a sequence of words and trace items, and
every item must be used as the head of some phrase.

This is deliberately a different search from :mod:`lexgram.parser`: it
works on explicit item sequences rather than string positions, and it
never keeps a slash stack.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations, permutations

from ..categories import LEFT, RIGHT, STree
from ..lexicon import CompiledLexicon
from ..terms import Var
from ..unify import EMPTY, is_ground, rename_apart, substitute, unify, unify_all, walk


@dataclass(frozen=True)
class Token:
    word: str

    def __str__(self) -> str:
        return self.word


@dataclass(frozen=True)
class TraceItem:
    tree: STree

    def __str__(self) -> str:
        return f"ε:{self.tree}"


PhonItem = Token | TraceItem


def interleavings(phon: Sequence, extras: Sequence) -> list[tuple]:
    """All distinct merges of ``phon`` (order kept) with ``extras`` (any order)."""
    if not extras:
        return [tuple(phon)]
    total = len(phon) + len(extras)
    out = []
    seen = set()
    for perm in dict.fromkeys(permutations(extras)):
        for slots in combinations(range(total), len(extras)):
            merged = []
            it_p, it_e = iter(phon), iter(perm)
            slot_set = set(slots)
            for i in range(total):
                merged.append(next(it_e) if i in slot_set else next(it_p))
            merged = tuple(merged)
            if merged not in seen:
                seen.add(merged)
                out.append(merged)
    return out


class NaiveEngine:
    def __init__(self, lex: CompiledLexicon):
        self.lex = lex
        self.budget_exhausted = False
        self._memo: dict = {}
        self._entries: dict[str, list[STree]] = {}

    def entries(self, word: str) -> list[STree]:
        if word not in self._entries:
            self._entries[word] = self.lex.expand(word)
        return self._entries[word]

    def default_budget(self, n_tokens: int) -> int:
        return self.lex.slash_total() * n_tokens

    def parse(self, tokens: Sequence[str], target: STree, trace_budget: int | None = None) -> list[STree]:
        """Distinct result trees for ``tokens`` as ``target``."""
        if trace_budget is None:
            trace_budget = self.default_budget(len(tokens))
        items = tuple(Token(w) for w in tokens)
        results = []
        for s, _ in self.derive(items, target, EMPTY, trace_budget):
            r = substitute(target, s)
            if r not in results:
                results.append(r)
        return results

    def derive(self, items: tuple, target: STree, s, budget: int) -> Iterator[tuple[dict, int]]:
        goal = substitute(target, s)
        if is_ground(goal) and all(isinstance(i, Token) or is_ground(i.tree) for i in items):
            key = (items, goal, budget)
            left = self._memo.get(key)
            if left is None:
                left = sorted({b for _, b in self._derive(items, goal, EMPTY, budget)}, reverse=True)
                self._memo[key] = left
            for b in left:
                yield s, b
            return
        yield from self._derive(items, goal, s, budget)

    def _derive(self, items, target, s, budget):
        if not items:
            return
        root = walk(target, s).root
        n = len(items)
        for h, it in enumerate(items):
            heads = self.entries(it.word) if isinstance(it, Token) else [it.tree]
            for head in heads:
                if isinstance(head, Var) or head.root.symbol != root.symbol:
                    continue
                if h > 0 and not any(leaf.dir is LEFT for leaf in head.leaves):
                    continue
                if h < n - 1 and not any(leaf.dir is RIGHT for leaf in head.leaves):
                    continue
                head = rename_apart(head)
                s1 = unify(head.root, root, s)
                if s1 is not None:
                    yield from self._reduce(items, h, h + 1, head, 0, target, s1, budget)

    def _reduce(self, items, lo, hi, head, k, target, s, budget):
        n = len(items)
        if lo == 0 and hi == n:
            for s2 in unify_all(STree(head.root, head.leaves[k:]), target, s):
                yield s2, budget
        if k == len(head.leaves):
            return
        leaf = head.leaves[k]
        cat = walk(leaf.cat, s)
        if isinstance(cat, Var):
            return
        cat = substitute(cat, s)
        goal = STree(cat.root, cat.leaves)
        traces = [TraceItem(t) for t in cat.slash]
        if len(traces) > budget:
            self.budget_exhausted = True
            return
        rest = budget - len(traces)
        if leaf.dir is RIGHT:
            spans = [(hi, j) for j in range(hi, n + 1)]
        else:
            spans = [(i, lo) for i in range(lo, -1, -1)]
        for a, b in spans:
            phon = items[a:b]
            if not phon and not traces:
                continue
            for merged in interleavings(phon, traces):
                for s2, b2 in self.derive(merged, goal, s, rest):
                    if leaf.dir is RIGHT:
                        yield from self._reduce(items, lo, b, head, k + 1, target, s2, b2)
                    else:
                        yield from self._reduce(items, a, hi, head, k + 1, target, s2, b2)


def parse_naive(tokens: Sequence[str], target: STree, lex: CompiledLexicon,
                trace_budget: int | None = None) -> list[STree]:
    return NaiveEngine(lex).parse(tokens, target, trace_budget)
