"""First-order unification over root terms, trees and lexicon descriptions.

Substitutions are plain dicts from :class:`Var` to terms.  They are kept
idempotent (every bound value is already fully substituted) and are never
mutated once returned; extension builds a new dict.

Root terms unify as open records: the symbols must agree and attributes that
both sides carry must unify, while an attribute present on one side only is
not a clash.  Slash multisets unify under some pairing of their elements, so
a pair of trees can have several most general unifiers; :func:`unify_all`
enumerates them and :func:`unify` returns the first.
"""
from __future__ import annotations

from collections.abc import Iterator, Mapping

from .categories import Leaf, RootTerm, STree
from .terms import Struct, Var, fresh_var

Subst = Mapping[Var, object]

EMPTY: Subst = {}


def walk(t, s: Subst):
    while isinstance(t, Var):
        bound = s.get(t)
        if bound is None:
            return t
        t = bound
    return t


def substitute(t, s: Subst):
    """Apply ``s`` to every variable in ``t`` (``s`` is assumed idempotent)."""
    if not s:
        return t
    if isinstance(t, Var):
        return s.get(t, t)
    if isinstance(t, str):
        return t
    if isinstance(t, RootTerm):
        if not any(isinstance(v, Var) for _, v in t.features):
            return t
        return RootTerm(t.symbol, tuple((a, substitute(v, s)) for a, v in t.features))
    if isinstance(t, STree):
        root = substitute(t.root, s)
        leaves = tuple(substitute(leaf, s) for leaf in t.leaves)
        slash = tuple(substitute(e, s) for e in t.slash)
        if root is t.root and all(x is y for x, y in zip(leaves, t.leaves)) \
                and all(x is y for x, y in zip(slash, t.slash)):
            return t
        return STree(root, leaves, slash)
    if isinstance(t, Leaf):
        cat = substitute(t.cat, s)
        return t if cat is t.cat else Leaf(t.dir, cat)
    if isinstance(t, Struct):
        return Struct(t.functor, tuple(substitute(a, s) for a in t.args))
    if isinstance(t, tuple):
        return tuple(substitute(x, s) for x in t)
    return t


apply = substitute


def iter_vars(t) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, RootTerm):
        for _, v in t.features:
            if isinstance(v, Var):
                yield v
    elif isinstance(t, STree):
        yield from iter_vars(t.root)
        for leaf in t.leaves:
            yield from iter_vars(leaf)
        for e in t.slash:
            yield from iter_vars(e)
    elif isinstance(t, Leaf):
        yield from iter_vars(t.cat)
    elif isinstance(t, Struct):
        for a in t.args:
            yield from iter_vars(a)
    elif isinstance(t, tuple):
        for x in t:
            yield from iter_vars(x)


def variables(t) -> list[Var]:
    """Variables of ``t`` in order of first occurrence."""
    return list(dict.fromkeys(iter_vars(t)))


def is_ground(t) -> bool:
    return next(iter_vars(t), None) is None


def occurs(v: Var, t) -> bool:
    return any(x == v for x in iter_vars(t))


def bind(v: Var, t, s: Subst) -> Subst | None:
    """Extend ``s`` with ``v -> t``; ``None`` if the occurs-check fails."""
    t = substitute(t, s)
    if t == v:
        return s
    if occurs(v, t):
        return None
    single = {v: t}
    extended = {k: substitute(val, single) for k, val in s.items()}
    extended[v] = t
    return extended


def unify_all(a, b, s: Subst = EMPTY) -> Iterator[Subst]:
    """Enumerate the most general unifiers of ``a`` and ``b`` extending ``s``."""
    seen = set()
    for result in _unify(a, b, s):
        key = frozenset(result.items())
        if key not in seen:
            seen.add(key)
            yield result


def unify(a, b, s: Subst = EMPTY) -> Subst | None:
    """The first most general unifier of ``a`` and ``b`` extending ``s``, or ``None``."""
    return next(_unify(a, b, s), None)


def unify_root(a: RootTerm, b: RootTerm, s: Subst = EMPTY) -> Subst | None:
    return unify(a, b, s)


def unify_stree(a: STree, b: STree, s: Subst = EMPTY) -> Subst | None:
    return unify(a, b, s)


def _unify(a, b, s: Subst) -> Iterator[Subst]:
    a = walk(a, s)
    b = walk(b, s)
    if a is b:
        yield s
        return
    if isinstance(a, Var):
        s2 = bind(a, b, s)
        if s2 is not None:
            yield s2
        return
    if isinstance(b, Var):
        s2 = bind(b, a, s)
        if s2 is not None:
            yield s2
        return
    if type(a) is not type(b):
        return
    if isinstance(a, str):
        if a == b:
            yield s
        return
    if isinstance(a, RootTerm):
        s2 = _unify_root(a, b, s)
        if s2 is not None:
            yield s2
        return
    if isinstance(a, Leaf):
        if a.dir is b.dir:
            yield from _unify(a.cat, b.cat, s)
        return
    if isinstance(a, STree):
        if len(a.leaves) != len(b.leaves) or len(a.slash) != len(b.slash):
            return
        s2 = _unify_root(a.root, b.root, s)
        if s2 is None:
            return
        for s3 in _unify_seq(a.leaves, b.leaves, s2):
            yield from _unify_multiset(a.slash, b.slash, s3)
        return
    if isinstance(a, Struct):
        if a.functor == b.functor and len(a.args) == len(b.args):
            yield from _unify_seq(a.args, b.args, s)
        return
    if isinstance(a, tuple):
        if len(a) == len(b):
            yield from _unify_seq(a, b, s)
        return
    if a == b:
        yield s


def _unify_root(a: RootTerm, b: RootTerm, s: Subst) -> Subst | None:
    if a.symbol != b.symbol:
        return None
    if not a.features or not b.features:
        return s
    other = dict(b.features)
    for attr, value in a.features:
        if attr in other:
            s = next(_unify(value, other[attr], s), None)
            if s is None:
                return None
    return s


def _unify_seq(xs, ys, s: Subst) -> Iterator[Subst]:
    if not xs:
        yield s
        return
    for s2 in _unify(xs[0], ys[0], s):
        yield from _unify_seq(xs[1:], ys[1:], s2)


def _unify_multiset(xs, ys, s: Subst) -> Iterator[Subst]:
    if not xs:
        yield s
        return
    first, rest = xs[0], xs[1:]
    tried = []
    for j, y in enumerate(ys):
        if y in tried:
            continue
        tried.append(y)
        remaining = ys[:j] + ys[j + 1:]
        for s2 in _unify(first, y, s):
            yield from _unify_multiset(rest, remaining, s2)


def rename_apart(t, mapping: dict[Var, Var] | None = None):
    """Copy ``t`` with every variable replaced by a fresh one, consistently."""
    vs = variables(t)
    if not vs:
        return t
    if mapping is None:
        mapping = {}
    for v in vs:
        if v not in mapping:
            mapping[v] = fresh_var(v.name)
    return substitute(t, mapping)


def is_variant(a, b) -> bool:
    """True if ``a`` and ``b`` are equal up to a bijective renaming of variables."""
    va, vb = variables(a), variables(b)
    if len(va) != len(vb):
        return False
    return substitute(a, dict(zip(va, vb))) == b
