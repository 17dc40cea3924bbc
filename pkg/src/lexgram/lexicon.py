"""Word-class hierarchy compiler.

A grammar is a set of parameterized word classes (``class name(Params) :=
body .``, several clauses per name being alternatives) and word entries whose
bodies call those classes.  Expanding an entry is a bottom-up walk of the
hierarchy: each call unifies the class parameters with the arguments and
conjoins the clause body with the description being built.  Because the
class graph must be acyclic, every entry is expanded eagerly at load time
and the resulting trees are served from a table.

Descriptions are built from :class:`~lexgram.terms.Struct` terms with open
lists, so a constraint may mention parts of a tree (e.g. only its first
leaf) before the rest is known::

    stree(Root, [leaf(Dir, Cat) | Rest], Slash)

Builtins available in bodies:

``tree(Root, Leaves)``
    a tree with the given root and leaf list.
``slashed(Tree, Slash)``
    ``Tree`` with its slash multiset fixed to ``Slash``.
``first_leaf_slash(Tree, Slash)``
    ``Tree`` whose first leaf's argument carries the slash ``Slash``.

The prelude adds ``movement(Host, Base)``, which places ``Base`` as the
single slash element of the host's first complement.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .categories import LEFT, RIGHT, Leaf, RootTerm, STree, validate_lexical_tree
from .grammar_file import (AtomDecl, CallE, ClauseDecl, ConjE, Diagnostic, EntryDecl,
                           GrammarError, LeafE, ListE, NameE, RootE, VarE, read_grammar)
from .terms import NIL, Struct, Var, cons, fresh_var
from .unify import EMPTY, Subst, is_ground, rename_apart, substitute, unify, walk

log = logging.getLogger(__name__)

PRELUDE = """
class movement(Host, Base) := first_leaf_slash(Host, [Base]) .
"""

BUILTINS = {"tree": 2, "slashed": 2, "first_leaf_slash": 2}


@dataclass
class ClassDef:
    name: str
    arity: int
    clauses: list[ClauseDecl] = field(default_factory=list)


def _stree(root=None, leaves=None, slash=None) -> Struct:
    return Struct("stree", (
        fresh_var("Root") if root is None else root,
        fresh_var("Leaves") if leaves is None else leaves,
        fresh_var("Slash") if slash is None else slash,
    ))


def first_leaf_slash_pattern(slash) -> Struct:
    """Description of a tree whose first complement carries ``slash``."""
    first = Struct("leaf", (fresh_var("Dir"), _stree(slash=slash)))
    return _stree(leaves=cons(first, fresh_var("MoreLeaves")))


def movement_schema(host, base, s: Subst = EMPTY):
    """Constrain ``host`` so that ``base`` is the single slash element of its
    first complement.  Returns ``(host, subst)`` or ``None`` on a clash."""
    s2 = unify(host, first_leaf_slash_pattern(cons(base, NIL)), s)
    if s2 is None:
        return None
    return substitute(host, s2), s2


class ExpansionError(Exception):
    pass


@dataclass(frozen=True)
class Expansion:
    tree: STree
    trace: tuple[tuple[str, int], ...]  # (class, clause index) in call order


class CompiledLexicon:
    """Expanded lexicon: token -> alternative lexical trees, in source order."""

    def __init__(self, atoms, classes, entries, cache: bool = True, values=()):
        self.atoms: tuple[str, ...] = tuple(atoms)
        self.values: tuple[str, ...] = tuple(values)
        self.classes: dict[str, ClassDef] = classes
        self.entries: list[EntryDecl] = entries
        self.warnings: list[Diagnostic] = []
        self.cache_enabled = cache
        self._table: dict[str, tuple[Expansion, ...]] = {}
        self._ground: dict[str, bool] = {}

    @property
    def atom_set(self) -> frozenset[str]:
        return frozenset(self.atoms)

    def words(self) -> list[str]:
        return list(dict.fromkeys(e.surface for e in self.entries))

    def expansions(self, word: str) -> tuple[Expansion, ...]:
        if word in self._table:
            return self._table[word]
        return tuple(self._evaluate_word(word))

    def expand(self, word: str) -> list[STree]:
        """All alternatives for ``word`` with fresh variables; unknown words give ``[]``."""
        if not self.cache_enabled:
            return [rename_apart(x.tree) for x in self._evaluate_word(word)]
        alts = self._table.get(word, ())
        if self._ground.get(word, True):
            return [x.tree for x in alts]
        return [rename_apart(x.tree) for x in alts]

    def provenance(self, word: str) -> list[tuple[tuple[str, int], ...]]:
        return [x.trace for x in self.expansions(word)]

    @property
    def feature_free(self) -> bool:
        return all(not _has_features(x.tree) for alts in self._table.values() for x in alts)

    def slash_total(self) -> int:
        """Sum of all slash sizes over every expanded entry."""
        return sum(_slash_size(x.tree) for alts in self._table.values() for x in alts)

    def _evaluate_word(self, word: str) -> Iterator[Expansion]:
        for entry in self.entries:
            if entry.surface != word:
                continue
            for term, s, trace in _Evaluator(self).conjunction(entry.body, {}, EMPTY, ()):
                yield Expansion(reify(term, s), trace)

    def _compile(self):
        for word in self.words():
            line = next(e.line for e in self.entries if e.surface == word)
            try:
                alts = tuple(self._evaluate_word(word))
            except ExpansionError as exc:
                raise GrammarError([Diagnostic(line, f"entry {word!r}: {exc}")]) from None
            problems = []
            for alt in alts:
                problems.extend(validate_lexical_tree(alt.tree, self.atoms, path=word))
            if problems:
                raise GrammarError([Diagnostic(line, p) for p in problems])
            if not alts:
                self.warnings.append(Diagnostic(line, f"entry {word!r} expands to no alternatives"))
            self._table[word] = alts
            self._ground[word] = all(is_ground(a.tree) for a in alts)


def _has_features(t) -> bool:
    if not isinstance(t, STree):
        return False
    return bool(t.root.features) or any(_has_features(leaf.cat) for leaf in t.leaves) \
        or any(_has_features(e) for e in t.slash)


def _slash_size(t) -> int:
    if not isinstance(t, STree):
        return 0
    return len(t.slash) + sum(_slash_size(leaf.cat) for leaf in t.leaves) \
        + sum(_slash_size(e) for e in t.slash)


class _Evaluator:
    """Backtracking interpreter for class bodies; yields ``(term, subst, trace)``."""

    def __init__(self, lex: CompiledLexicon):
        self.lex = lex

    def conjunction(self, conj: ConjE, env, s, trace):
        this = fresh_var("Self")
        yield from self._conj_parts(conj.parts, this, env, s, trace)

    def _conj_parts(self, parts, this, env, s, trace):
        if not parts:
            yield this, s, trace
            return
        for term, s2, trace2 in self.expr(parts[0], env, s, trace):
            s3 = unify(this, term, s2)
            if s3 is not None:
                yield from self._conj_parts(parts[1:], this, env, s3, trace2)

    def expr(self, e, env, s, trace):
        if isinstance(e, VarE):
            yield _var(env, e.name), s, trace
        elif isinstance(e, ConjE):
            yield from self.conjunction(e, env, s, trace)
        elif isinstance(e, NameE):
            if e.name in self.lex.classes:
                yield from self.call(e.name, (), env, s, trace)
            elif e.name in self.lex.values:
                yield e.name, s, trace
            else:
                yield RootTerm(e.name), s, trace
        elif isinstance(e, RootE):
            feats = tuple((a, _var(env, v.name) if isinstance(v, VarE) else v) for a, v in e.features)
            yield RootTerm(e.name, feats), s, trace
        elif isinstance(e, ListE):
            tail = _var(env, e.tail.name) if e.tail is not None else NIL
            yield from self._list(e.items, tail, env, s, trace)
        elif isinstance(e, LeafE):
            for cat, s2, trace2 in self.expr(e.cat, env, s, trace):
                yield Struct("leaf", (e.dir, cat)), s2, trace2
        elif isinstance(e, CallE):
            yield from self.call(e.name, e.args, env, s, trace)
        else:
            raise ExpansionError(f"cannot evaluate {e!r}")

    def _list(self, items, tail, env, s, trace):
        if not items:
            yield tail, s, trace
            return
        for head, s2, trace2 in self.expr(items[0], env, s, trace):
            for rest, s3, trace3 in self._list(items[1:], tail, env, s2, trace2):
                yield cons(head, rest), s3, trace3

    def _args(self, args, env, s, trace):
        if not args:
            yield (), s, trace
            return
        for first, s2, trace2 in self.expr(args[0], env, s, trace):
            for rest, s3, trace3 in self._args(args[1:], env, s2, trace2):
                yield (first,) + rest, s3, trace3

    def call(self, name, args, env, s, trace):
        for values, s2, trace2 in self._args(args, env, s, trace):
            if name in BUILTINS:
                yield from self._builtin(name, values, s2, trace2)
                continue
            cls = self.lex.classes[name]
            for index, clause in enumerate(cls.clauses):
                local: dict[str, Var] = {}
                s3 = s2
                for param, value in zip(clause.params, values):
                    s3 = unify(_var(local, param), value, s3)
                    if s3 is None:
                        break
                if s3 is None:
                    continue
                yield from self.conjunction(clause.body, local, s3, trace2 + ((name, index),))

    def _builtin(self, name, values, s, trace):
        first, second = values
        if name == "tree":
            yield _stree(first, second), s, trace
            return
        if name == "slashed":
            pattern = _stree(slash=second)
        else:
            pattern = first_leaf_slash_pattern(second)
        s2 = unify(first, pattern, s)
        if s2 is not None:
            yield first, s2, trace


def _var(env: dict[str, Var], name: str) -> Var:
    if name == "_":
        return fresh_var()
    if name not in env:
        env[name] = fresh_var(name)
    return env[name]


def _list_items(term, s) -> list:
    items = []
    term = walk(term, s)
    while isinstance(term, Struct) and term.functor == ".":
        items.append(term.args[0])
        term = walk(term.args[1], s)
    if isinstance(term, Var):  # open tail closes to the empty list
        return items
    if term != NIL:
        raise ExpansionError(f"expected a list, got {substitute(term, s)}")
    return items


def reify(term, s: Subst) -> STree:
    """Turn a (fully constrained) description into an :class:`STree`."""
    t = walk(term, s)
    if isinstance(t, Var):
        raise ExpansionError("tree left unresolved")
    if isinstance(t, RootTerm):
        raise ExpansionError(f"expected a tree, got root term {substitute(t, s)}; "
                             f"use tree({t.symbol}, []) or a maxproj class")
    if not (isinstance(t, Struct) and t.functor == "stree"):
        raise ExpansionError(f"expected a tree, got {substitute(t, s)}")
    root_t, leaves_t, slash_t = t.args
    root = walk(root_t, s)
    if not isinstance(root, RootTerm):
        raise ExpansionError("tree root left unresolved" if isinstance(root, Var)
                             else f"tree root {root} is not a root term")
    root = substitute(root, s)
    leaves = []
    for item in _list_items(leaves_t, s):
        item = walk(item, s)
        if not (isinstance(item, Struct) and item.functor == "leaf"):
            raise ExpansionError(f"leaf without direction: {substitute(item, s)}")
        d = walk(item.args[0], s)
        if d not in ("left", "right"):
            raise ExpansionError(f"leaf direction left unresolved in tree rooted {root}")
        leaves.append(Leaf(LEFT if d == "left" else RIGHT, reify(item.args[1], s)))
    slash = tuple(reify(x, s) for x in _list_items(slash_t, s))
    return STree(root, tuple(leaves), slash)


# -- loading -----------------------------------------------------------------

def _iter_exprs(e):
    yield e
    if isinstance(e, (CallE,)):
        for a in e.args:
            yield from _iter_exprs(a)
    elif isinstance(e, ConjE):
        for p in e.parts:
            yield from _iter_exprs(p)
    elif isinstance(e, ListE):
        for i in e.items:
            yield from _iter_exprs(i)
    elif isinstance(e, LeafE):
        yield from _iter_exprs(e.cat)


def _called_classes(body, classes) -> list[tuple[str, int]]:
    calls = []
    for e in _iter_exprs(body):
        if isinstance(e, CallE) and e.name in classes:
            calls.append((e.name, e.line))
        elif isinstance(e, NameE) and e.name in classes:
            calls.append((e.name, e.line))
    return calls


def check_acyclic(classes: dict[str, ClassDef]) -> list[str]:
    """Return one cycle of the class-call graph, or ``[]`` if there is none."""
    graph = {name: [c for clause in cls.clauses for c, _ in _called_classes(clause.body, classes)]
             for name, cls in classes.items()}
    state: dict[str, int] = {}
    stack: list[str] = []

    def visit(node):
        state[node] = 1
        stack.append(node)
        for succ in graph.get(node, ()):
            if state.get(succ) == 1:
                return stack[stack.index(succ):]
            if succ not in state:
                found = visit(succ)
                if found:
                    return found
        stack.pop()
        state[node] = 2
        return None

    for name in graph:
        if name not in state:
            cycle = visit(name)
            if cycle:
                return list(cycle)
    return []


def _check_names(body, atoms, classes, errors, values=()):
    for e in _iter_exprs(body):
        if isinstance(e, NameE):
            if e.name not in atoms and e.name not in classes and e.name not in values:
                errors.append(Diagnostic(e.line, f"undeclared atom or class {e.name!r}"))
            elif e.name in classes and classes[e.name].arity != 0:
                errors.append(Diagnostic(
                    e.line, f"class {e.name!r} expects {classes[e.name].arity} arguments, got 0"))
        elif isinstance(e, RootE):
            if e.name not in atoms:
                errors.append(Diagnostic(e.line, f"undeclared atom {e.name!r}"))
        elif isinstance(e, CallE):
            if e.name in BUILTINS:
                expected = BUILTINS[e.name]
            elif e.name in classes:
                expected = classes[e.name].arity
            else:
                errors.append(Diagnostic(e.line, f"undeclared class {e.name!r}"))
                continue
            if len(e.args) != expected:
                errors.append(Diagnostic(
                    e.line, f"class {e.name!r} expects {expected} arguments, got {len(e.args)}"))


def load_grammar(text: str, cache: bool = True) -> CompiledLexicon:
    """Parse, check and eagerly expand a grammar.  Raises :class:`GrammarError`."""
    statements = read_grammar(text)
    prelude = read_grammar(PRELUDE)
    errors: list[Diagnostic] = []
    atoms: list[str] = []
    values: list[str] = []
    classes: dict[str, ClassDef] = {}
    entries: list[EntryDecl] = []
    for st in statements:
        if isinstance(st, AtomDecl):
            bucket = atoms if st.kind == "atom" else values
            bucket.extend(a for a in st.names if a not in bucket)
        elif isinstance(st, ClauseDecl):
            cls = classes.setdefault(st.name, ClassDef(st.name, len(st.params)))
            if cls.arity != len(st.params):
                errors.append(Diagnostic(
                    st.line, f"class {st.name!r} redeclared with arity {len(st.params)}, was {cls.arity}"))
                continue
            cls.clauses.append(st)
        else:
            entries.append(st)
    for st in prelude:
        if st.name not in classes:
            classes[st.name] = ClassDef(st.name, len(st.params), [st])
    if not atoms:
        raise GrammarError([Diagnostic(0, "no atoms declared")])
    for name in values:
        if name in atoms:
            errors.append(Diagnostic(0, f"{name!r} is both an atom and a value"))
    for name in classes:
        if name in values:
            errors.append(Diagnostic(classes[name].clauses[0].line, f"{name!r} is both a value and a class"))
        if name in atoms:
            errors.append(Diagnostic(classes[name].clauses[0].line, f"{name!r} is both an atom and a class"))
        if name in BUILTINS:
            errors.append(Diagnostic(classes[name].clauses[0].line, f"{name!r} is a builtin"))
    for cls in classes.values():
        for clause in cls.clauses:
            _check_names(clause.body, atoms, classes, errors, values)
    for entry in entries:
        _check_names(entry.body, atoms, classes, errors, values)
    if errors:
        raise GrammarError(errors)
    cycle = check_acyclic(classes)
    if cycle:
        line = classes[cycle[0]].clauses[0].line
        raise GrammarError([Diagnostic(line, "cyclic class graph: " + " -> ".join(cycle + cycle[:1]))])
    lex = CompiledLexicon(atoms, classes, entries, cache=cache, values=values)
    lex._compile()
    for w in lex.warnings:
        log.warning("%s", w)
    return lex


def load_grammar_file(path, cache: bool = True) -> CompiledLexicon:
    return load_grammar(Path(path).read_text(encoding="utf-8"), cache=cache)


def expand(word: str, lex: CompiledLexicon) -> list[STree]:
    return lex.expand(word)


def demo_grammar_path() -> Path:
    return Path(__file__).parent / "data" / "demo_en.lg"


def load_demo() -> CompiledLexicon:
    """The eight-word English demo grammar shipped with the package."""
    return load_grammar_file(demo_grammar_path())
