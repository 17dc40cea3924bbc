"""Head-driven parser with on-demand traces and nested slash frames.

Proof search runs backwards from a goal ``lo-hi -> Target``:

* *choice of head*: pick a word inside the span whose lexical tree has the
  target's root (``lex``), or take a pending trace hypothesis from the slash
  stack and guess a zero-width insertion point for it (``trace``);
* *reduction*: discharge the head's leaves one by one.  A ``right`` leaf
  consumes a complement adjacent to the right edge of the material covered
  so far, a ``left`` leaf one adjacent to the left edge.  The complement's
  slash multiset is pushed as a new frame, and the frame must come back
  empty, i.e. every hypothesis in it was used as a trace inside the
  complement.  When both flanking spans are empty the remaining head unifies
  with the target (``axiom``).

Sequences are pairs of string positions; the slash stack is threaded through
the search as an in/out value.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .categories import LEFT, RIGHT, Leaf, STree, format_category, to_curried
from .lexicon import CompiledLexicon
from .terms import Var
from .unify import EMPTY, Subst, is_ground, rename_apart, substitute, unify, unify_all, variables, walk

Frame = tuple  # multiset of trace hypotheses (STree)
SlashStack = tuple  # of Frame, innermost first


# -- slash stack -------------------------------------------------------------

class FrameNotEmpty(Exception):
    """A complement finished with unused trace hypotheses in its frame."""


def push_frame(stack: SlashStack, multiset) -> SlashStack:
    return (tuple(multiset),) + stack


def pop_frame_checked(stack: SlashStack) -> SlashStack:
    if stack[0]:
        raise FrameNotEmpty(stack[0])
    return stack[1:]


def remove_trace(stack: SlashStack, pattern, s: Subst = EMPTY) -> Iterator[tuple[SlashStack, Subst, int]]:
    """Remove one hypothesis unifying with ``pattern``, innermost frame first.

    Yields ``(new_stack, subst, frame_index)`` where ``frame_index`` counts
    from the bottom of the stack (the top-level frame is 0).
    """
    for k, frame in enumerate(stack):
        tried = []
        for j, hyp in enumerate(frame):
            if hyp in tried:
                continue
            tried.append(hyp)
            for s2 in unify_all(hyp, pattern, s):
                new_frame = frame[:j] + frame[j + 1:]
                yield stack[:k] + (new_frame,) + stack[k + 1:], s2, len(stack) - 1 - k


# -- derivations -------------------------------------------------------------

@dataclass(frozen=True)
class Axiom:
    pass


@dataclass(frozen=True)
class Lex:
    word: str
    lo: int
    hi: int
    entry: STree
    body: object


@dataclass(frozen=True)
class Trace:
    hypothesis: STree
    pos: int
    frame: int
    body: object


@dataclass(frozen=True)
class ReduceRight:
    leaf: Leaf
    lo: int
    hi: int
    complement: object
    rest: object


@dataclass(frozen=True)
class ReduceLeft:
    leaf: Leaf
    lo: int
    hi: int
    complement: object
    rest: object


@dataclass
class Derivation:
    tree: Lex | Trace
    subst: Subst
    result: STree
    tokens: tuple[str, ...]

    def nodes(self):
        return iter_nodes(self.tree)

    def traces(self) -> list[Trace]:
        return [n for n in self.nodes() if isinstance(n, Trace)]

    def __str__(self) -> str:
        return format_derivation(self)


def iter_nodes(node):
    yield node
    if isinstance(node, (Lex, Trace)):
        yield from iter_nodes(node.body)
    elif isinstance(node, (ReduceRight, ReduceLeft)):
        yield from iter_nodes(node.complement)
        yield from iter_nodes(node.rest)


@dataclass(frozen=True)
class ParseLimits:
    max_derivations: int = 64
    max_depth: int | None = None  # default: 10 * input length

    def depth_for(self, n: int) -> int:
        return self.max_depth if self.max_depth is not None else 10 * max(n, 1)


@dataclass
class ParseResult:
    derivations: list[Derivation] = field(default_factory=list)
    limit_exceeded: str | None = None  # "max_derivations" or "max_depth"

    def __len__(self) -> int:
        return len(self.derivations)

    def __iter__(self):
        return iter(self.derivations)

    def __getitem__(self, i):
        return self.derivations[i]

    def __bool__(self) -> bool:
        return bool(self.derivations)


class SearchLoop(AssertionError):
    """A goal repeated on one search path (only raised with ``check_termination``)."""


# -- search ------------------------------------------------------------------

class Parser:
    """Head-driven parser over a compiled lexicon.

    ``check_frames=False`` drops the emptiness check on popped slash frames;
    it exists only so the oracle comparison can be shown to catch it.
    """

    def __init__(self, lex: CompiledLexicon, *, check_frames: bool = True,
                 check_termination: bool = False):
        self.lex = lex
        self.check_frames = check_frames
        self.check_termination = check_termination

    def parse(self, tokens: Sequence[str], target: STree,
              limits: ParseLimits | None = None) -> ParseResult:
        limits = limits or ParseLimits()
        search = _Search(self, tuple(tokens), limits.depth_for(len(tokens)))
        result = ParseResult()
        seen = set()
        for node, s, stack in search.prove_span(0, len(tokens), target, ((),), EMPTY, 0):
            if stack[0] and self.check_frames:
                continue
            d = Derivation(node, s, substitute(target, s), tuple(tokens))
            key = format_derivation(d)
            if key in seen:
                continue
            seen.add(key)
            if len(result.derivations) == limits.max_derivations:
                result.limit_exceeded = "max_derivations"
                break
            result.derivations.append(d)
        if result.limit_exceeded is None and search.depth_exceeded:
            result.limit_exceeded = "max_depth"
        return result

    def prove_span(self, tokens: Sequence[str], span: tuple[int, int], target: STree,
                   stack: SlashStack = ((),), s: Subst = EMPTY):
        """Choice of head for ``span -> target``; yields ``(node, subst, stack_out)``."""
        search = _Search(self, tuple(tokens), ParseLimits().depth_for(len(tokens)))
        return search.prove_span(span[0], span[1], target, stack, s, 0)

    def prove_item(self, tokens: Sequence[str], left: tuple[int, int], item: STree,
                   right: tuple[int, int], target: STree, stack: SlashStack = ((),),
                   s: Subst = EMPTY):
        """Reduce ``item``'s leaves against the flanking spans; yields ``(node, subst, stack_out)``."""
        search = _Search(self, tuple(tokens), ParseLimits().depth_for(len(tokens)))
        return search.prove_item(left[0], left[1], item, 0, right[0], right[1], target, stack, s, 0)


def parse(tokens: Sequence[str], target: STree, lex: CompiledLexicon,
          limits: ParseLimits | None = None, **options) -> ParseResult:
    """All derivations of ``tokens`` as ``target`` (up to ``limits``)."""
    return Parser(lex, **options).parse(tokens, target, limits)


def _has_dir(leaves, d) -> bool:
    return any(leaf.dir is d for leaf in leaves)


class _Search:
    def __init__(self, parser: Parser, tokens: tuple[str, ...], max_depth: int):
        self.parser = parser
        self.tokens = tokens
        self.max_depth = max_depth
        self.depth_exceeded = False
        self.check_frames = parser.check_frames
        self.path: set | None = set() if parser.check_termination else None
        entries = {}
        for w in dict.fromkeys(tokens):
            alts = parser.lex.expand(w)
            entries[w] = [(t, is_ground(t), _has_dir(t.leaves, LEFT), _has_dir(t.leaves, RIGHT))
                          for t in alts]
        self.entries = [entries[w] for w in tokens]

    def prove_span(self, lo, hi, target, stack, s, depth):
        if depth > self.max_depth:
            self.depth_exceeded = True
            return
        key = None
        if self.path is not None:
            key = (lo, hi, format_category(to_curried(substitute(target, s), strict=False)),
                   repr(substitute(stack, s)))
            if key in self.path:
                raise SearchLoop(f"goal repeated on search path: {key}")
            self.path.add(key)
        try:
            yield from self._lex(lo, hi, target, stack, s, depth)
            yield from self._trace(lo, hi, target, stack, s, depth)
        finally:
            if key is not None:
                self.path.discard(key)

    def _lex(self, lo, hi, target, stack, s, depth):
        target_root = walk(target, s).root
        symbol = target_root.symbol
        for p in range(lo, hi):
            for entry, ground, has_left, has_right in self.entries[p]:
                if entry.root.symbol != symbol:
                    continue
                if (p > lo and not has_left) or (p + 1 < hi and not has_right):
                    continue
                if not ground:
                    entry = rename_apart(entry)
                s1 = unify(entry.root, target_root, s)
                if s1 is None:
                    continue
                for body, s2, stack2 in self.prove_item(lo, p, entry, 0, p + 1, hi,
                                                        target, stack, s1, depth):
                    yield Lex(self.tokens[p], p, p + 1, entry, body), s2, stack2

    def _trace(self, lo, hi, target, stack, s, depth):
        target_root = walk(target, s).root
        for k, frame in enumerate(stack):
            tried = []
            for j, hyp in enumerate(frame):
                h = walk(hyp, s)
                if isinstance(h, Var) or h in tried:
                    continue
                tried.append(h)
                if h.root.symbol != target_root.symbol:
                    continue
                s1 = unify(h.root, target_root, s)
                if s1 is None:
                    continue
                new_stack = stack[:k] + (frame[:j] + frame[j + 1:],) + stack[k + 1:]
                frame_index = len(stack) - 1 - k
                has_left, has_right = _has_dir(h.leaves, LEFT), _has_dir(h.leaves, RIGHT)
                for i2 in range(lo, hi + 1):
                    if (i2 > lo and not has_left) or (i2 < hi and not has_right):
                        continue
                    for body, s2, stack2 in self.prove_item(lo, i2, h, 0, i2, hi,
                                                            target, new_stack, s1, depth):
                        yield Trace(h, i2, frame_index, body), s2, stack2

    def prove_item(self, llo, lhi, item, k, rlo, rhi, target, stack, s, depth):
        leaves = item.leaves
        if llo == lhi and rlo == rhi:
            remaining = STree(item.root, leaves[k:]) if k else item.bare()
            for s2 in unify_all(remaining, target, s):
                yield Axiom(), s2, stack
        if k == len(leaves):
            return
        leaf = leaves[k]
        cat = walk(leaf.cat, s)
        if isinstance(cat, Var):
            return
        goal = cat.bare()
        pushed = (cat.slash,) + stack
        can_be_empty = any(pushed)
        if leaf.dir is RIGHT:
            for i4 in range(rlo, rhi + 1):
                if i4 == rlo and not can_be_empty:
                    continue
                for comp, s2, st2 in self.prove_span(rlo, i4, goal, pushed, s, depth + 1):
                    if st2[0] and self.check_frames:
                        continue
                    for rest, s3, st3 in self.prove_item(llo, lhi, item, k + 1, i4, rhi,
                                                         target, st2[1:], s2, depth):
                        yield ReduceRight(leaf, rlo, i4, comp, rest), s3, st3
        else:
            for i1 in range(lhi, llo - 1, -1):
                if i1 == lhi and not can_be_empty:
                    continue
                for comp, s2, st2 in self.prove_span(i1, lhi, goal, pushed, s, depth + 1):
                    if st2[0] and self.check_frames:
                        continue
                    for rest, s3, st3 in self.prove_item(llo, i1, item, k + 1, rlo, rhi,
                                                         target, st2[1:], s2, depth):
                        yield ReduceLeft(leaf, i1, lhi, comp, rest), s3, st3


# -- serialization -----------------------------------------------------------

def _cat(t, level=1) -> str:
    return format_category(to_curried(t, level=level, strict=False))


def _normalizer(d: Derivation) -> dict:
    terms = []
    for node in d.nodes():
        if isinstance(node, Lex):
            terms.append(node.entry)
        elif isinstance(node, Trace):
            terms.append(node.hypothesis)
    names = {}
    for v in variables(substitute(tuple(terms), d.subst)):
        names[v] = Var(v.id, f"_{len(names) + 1}")
    return names


def format_derivation(d: Derivation, style: str = "golden") -> str:
    """Serialize a derivation.

    ``golden`` is one line of nested groups::

        (LEX loves@1-2 (s\\np)/np (REDR 2-3 np (LEX mary@2-3 np (AX)) ...))

    ``pretty`` is the same tree with one node per indented line.
    """
    names = _normalizer(d)

    def show(t, level=1):
        return _cat(substitute(substitute(t, d.subst), names), level)

    def label(node):
        if isinstance(node, Lex):
            return f"LEX {node.word}@{node.lo}-{node.hi} {show(node.entry)}", [node.body]
        if isinstance(node, Trace):
            return f"TRACE ε@{node.pos} {show(node.hypothesis)}", [node.body]
        if isinstance(node, ReduceRight):
            return f"REDR {node.lo}-{node.hi} {show(node.leaf.cat, 2)}", [node.complement, node.rest]
        if isinstance(node, ReduceLeft):
            return f"REDL {node.lo}-{node.hi} {show(node.leaf.cat, 2)}", [node.complement, node.rest]
        return "AX", []

    if style == "golden":
        def golden(node):
            text, kids = label(node)
            return "(" + " ".join([text] + [golden(k) for k in kids]) + ")"
        return golden(d.tree)

    lines = []

    def pretty(node, indent):
        text, kids = label(node)
        lines.append("  " * indent + text)
        for kid in kids:
            pretty(kid, indent + 1)

    pretty(d.tree, 0)
    return "\n".join(lines)


# -- invariant checks --------------------------------------------------------

def check_derivation(d: Derivation, target: STree | None = None) -> list[str]:
    """Audit a derivation; returns a list of violations (empty when sound).

    Checked: spans tile the input with every token consumed exactly once by
    one ``LEX`` node; axioms only between empty flanks; each pushed frame is
    discharged by exactly the traces drawn from it (so the trace count equals
    the summed slash sizes of reduced leaves and nothing is left in the
    top-level frame); each axiom holds under the final substitution.
    """
    problems: list[str] = []
    tokens = d.tokens
    n = len(tokens)
    used = [0] * n
    trace_frames: list[tuple[int, STree]] = []
    pushed_total = 0
    s = d.subst
    target = d.result if target is None else target

    def span(node, lo, hi, goal, height):
        nonlocal pushed_total
        if isinstance(node, Lex):
            if not (lo <= node.lo and node.hi == node.lo + 1 and node.hi <= hi):
                problems.append(f"LEX {node.word}@{node.lo}-{node.hi} outside span {lo}-{hi}")
                return
            if tokens[node.lo] != node.word:
                problems.append(f"LEX {node.word}@{node.lo} does not match token {tokens[node.lo]!r}")
            used[node.lo] += 1
            item(node.body, lo, node.lo, node.entry, 0, node.hi, hi, goal, height)
        elif isinstance(node, Trace):
            if not lo <= node.pos <= hi:
                problems.append(f"TRACE at {node.pos} outside span {lo}-{hi}")
                return
            if not 0 <= node.frame < height:
                problems.append(f"TRACE at {node.pos} draws on frame {node.frame} that is not open")
            trace_frames.append((node.frame, node.hypothesis))
            item(node.body, lo, node.pos, node.hypothesis, 0, node.pos, hi, goal, height)
        else:
            problems.append(f"span {lo}-{hi} headed by {type(node).__name__}")

    def item(node, llo, lhi, head, k, rlo, rhi, goal, height):
        nonlocal pushed_total
        if isinstance(node, Axiom):
            if llo != lhi or rlo != rhi:
                problems.append(f"AX with flanks {llo}-{lhi} / {rlo}-{rhi}")
            remaining = substitute(STree(head.root, head.leaves[k:]), s)
            if unify(remaining, substitute(goal, s)) is None:
                problems.append(f"AX does not hold under the final substitution: {remaining}")
            return
        if not isinstance(node, (ReduceRight, ReduceLeft)):
            problems.append(f"item position holds {type(node).__name__}")
            return
        if k >= len(head.leaves) or node.leaf != head.leaves[k]:
            problems.append(f"reduction of a leaf the head does not have next: {node.leaf}")
            return
        cat = substitute(node.leaf.cat, s)
        before = len(trace_frames)
        if isinstance(node, ReduceRight):
            if node.lo != rlo or node.hi > rhi:
                problems.append(f"REDR {node.lo}-{node.hi} not adjacent within {rlo}-{rhi}")
            span(node.complement, node.lo, node.hi, cat.bare(), height + 1)
            next_args = (llo, lhi, head, k + 1, node.hi, rhi)
        else:
            if node.hi != lhi or node.lo < llo:
                problems.append(f"REDL {node.lo}-{node.hi} not adjacent within {llo}-{lhi}")
            span(node.complement, node.lo, node.hi, cat.bare(), height + 1)
            next_args = (llo, node.lo, head, k + 1, rlo, rhi)
        pushed_total += len(cat.slash)
        mine = [h for f, h in trace_frames[before:] if f == height]
        got = Counter(str(substitute(h, s)) for h in mine)
        want = Counter(str(e) for e in cat.slash)
        if got != want:
            problems.append(f"frame pushed for {cat} discharged by traces {sorted(got.elements())}")
        item(node.rest, *next_args, goal, height)

    span(d.tree, 0, n, substitute(target, s), 1)
    for i, count in enumerate(used):
        if count != 1:
            problems.append(f"token {i} ({tokens[i]!r}) consumed {count} times")
    if any(f == 0 for f, _ in trace_frames):
        problems.append("trace drawn from the top-level frame")
    if len(trace_frames) != pushed_total:
        problems.append(f"{len(trace_frames)} traces but {pushed_total} slash elements pushed")
    return problems
