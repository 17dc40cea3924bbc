"""Lexical syntax trees, curried categories, and the translation between them.

A lexical entry is an :class:`STree`: a root term plus an ordered list of
direction-annotated leaves (expected complements).  Each leaf carries an
argument tree whose ``slash`` multiset lists the traces its derivation must
contain.  The curried view writes the same information as a categorial
category: leaves become ``/`` and ``\\`` at odd embedding levels, slash
elements become ``|`` at even levels::

    {root: s, leaves: [right: np, left: np]}   <->   (s\\np)/np
"""
from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Union

from .terms import Var, fresh_var

Value = Union[str, Var]


class Direction(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def operator(self) -> str:
        return "\\" if self is Direction.LEFT else "/"


LEFT = Direction.LEFT
RIGHT = Direction.RIGHT


@dataclass(frozen=True)
class RootTerm:
    """An atomic category symbol with a flat feature bundle."""

    symbol: str
    features: tuple[tuple[str, Value], ...] = ()

    def __post_init__(self):
        feats = self.features
        if isinstance(feats, Mapping):
            feats = tuple(feats.items())
        feats = tuple(sorted(feats, key=lambda kv: kv[0]))
        for (a, _), (b, _) in zip(feats, feats[1:]):
            if a == b:
                raise ValueError(f"duplicate attribute {a!r} on {self.symbol}")
        object.__setattr__(self, "features", feats)

    def feature(self, attr: str):
        for key, value in self.features:
            if key == attr:
                return value
        return None

    def __str__(self) -> str:
        if not self.features:
            return self.symbol
        body = ",".join(f"{k}={v}" for k, v in self.features)
        return f"{self.symbol}{{{body}}}"


@dataclass(frozen=True)
class Leaf:
    dir: Direction
    cat: "STree | Var"

    def __str__(self) -> str:
        return f"{self.dir.value}: {self.cat}"


@dataclass(frozen=True)
class STree:
    """Root term, ordered leaves (head-adjacent first) and a slash multiset.

    The slash is stored in canonical order, so equality of two trees holds up
    to permutation of their slash elements.  A tree with an empty slash is a
    plain ``stree``; with a non-empty slash it plays the ``arg_stree`` role.
    """

    root: RootTerm
    leaves: tuple[Leaf, ...] = ()
    slash: tuple["STree | Var", ...] = ()

    def __post_init__(self):
        if not isinstance(self.leaves, tuple):
            object.__setattr__(self, "leaves", tuple(self.leaves))
        slash = self.slash
        if not isinstance(slash, tuple):
            slash = tuple(slash)
        if len(slash) > 1:
            slash = tuple(sorted(slash, key=category_text))
        object.__setattr__(self, "slash", slash)

    @property
    def is_maxproj(self) -> bool:
        return not self.leaves

    def bare(self) -> "STree":
        """The same tree without its slash."""
        return STree(self.root, self.leaves) if self.slash else self

    def __str__(self) -> str:
        if not self.leaves:
            text = str(self.root)
        else:
            text = f"tree({self.root}, [{', '.join(map(str, self.leaves))}])"
        if self.slash:
            text = f"slashed({text}, [{', '.join(map(str, self.slash))}])"
        return text


ArgSTree = STree


def atom(symbol: str, **features) -> STree:
    """A maximal projection: ``atom("np", case="nom")`` is ``np{case=nom}``."""
    return STree(RootTerm(symbol, tuple(features.items())))


# -- curried categories ------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    root: RootTerm

    def __str__(self) -> str:
        return str(self.root)


@dataclass(frozen=True)
class Conn:
    result: "Atom | Conn"
    op: str
    arg: "Atom | Conn"

    def __post_init__(self):
        if self.op not in ("/", "\\", "|"):
            raise ValueError(f"unknown connective {self.op!r}")

    def __str__(self) -> str:
        return format_category(self)


CurriedCategory = Union[Atom, Conn]


class CategoryLevelError(ValueError):
    """A connective occurs at an embedding level that does not admit it."""


def _wrap(c: CurriedCategory) -> str:
    return f"({format_category(c)})" if isinstance(c, Conn) else str(c)


def format_category(c: CurriedCategory) -> str:
    if isinstance(c, Atom):
        return str(c.root)
    return f"{_wrap(c.result)}{c.op}{_wrap(c.arg)}"


def category_text(t) -> str:
    """Canonical text of a tree, used to order slash multisets."""
    if isinstance(t, Var):
        return str(t)
    return format_category(to_curried(t, strict=False))


def to_curried(t: STree, level: int = 1, strict: bool = True) -> CurriedCategory:
    """Fold a tree into its curried category.

    The first leaf becomes the outermost connective.  At odd levels leaves
    map to ``/`` (right) and ``\\`` (left); at even levels slash elements map
    to ``|`` in canonical order, the first element innermost.  With
    ``strict`` a tree that needs a connective at the wrong level raises
    :class:`CategoryLevelError`; otherwise it is printed anyway.
    """
    if isinstance(t, Var):
        raise TypeError(f"cannot curry unbound variable {t}")
    odd = level % 2 == 1
    if strict:
        if odd and t.slash:
            raise CategoryLevelError(f"slash on {t.root} at odd level {level}")
        if not odd and t.leaves:
            raise CategoryLevelError(f"leaves on {t.root} at even level {level}")
    c: CurriedCategory = Atom(t.root)
    for elem in t.slash:
        c = Conn(c, "|", to_curried(elem, level + 1, strict))
    for leaf in reversed(t.leaves):
        c = Conn(c, leaf.dir.operator, to_curried(leaf.cat, level + 1, strict))
    return c


def from_curried(c: CurriedCategory, level: int = 1) -> STree:
    """Inverse of :func:`to_curried` (up to slash permutation)."""
    odd = level % 2 == 1
    leaves: list[Leaf] = []
    slash: list[STree] = []
    while isinstance(c, Conn):
        if c.op == "|":
            if odd:
                raise CategoryLevelError(f"'|' at odd level {level} in {format_category(c)}")
            slash.append(from_curried(c.arg, level + 1))
        else:
            if not odd:
                raise CategoryLevelError(
                    f"{c.op!r} at even level {level} in {format_category(c)}")
            d = RIGHT if c.op == "/" else LEFT
            leaves.append(Leaf(d, from_curried(c.arg, level + 1)))
        c = c.result
    return STree(c.root, tuple(leaves), tuple(slash))


def check_levels(c: CurriedCategory, level: int = 1) -> list[str]:
    """List every connective that violates the odd/even discipline."""
    problems = []
    while isinstance(c, Conn):
        odd = level % 2 == 1
        if (c.op == "|") == odd:
            problems.append(f"{c.op!r} at level {level}")
        problems.extend(check_levels(c.arg, level + 1))
        c = c.result
    return problems


# -- category text -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_][A-Za-z0-9_'\-]*)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    return [t for t in tokens if t and not t.isspace()]


def is_variable_name(name: str) -> bool:
    return name[:1].isupper() or name[:1] == "_"


class _CategoryReader:
    def __init__(self, text: str, variables: dict[str, Var]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise ValueError(f"expected {want} at token {self.pos} in {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def category(self) -> CurriedCategory:
        left = self.operand()
        if self.peek() in ("/", "\\", "|"):
            op = self.take()
            right = self.operand()
            if self.peek() in ("/", "\\", "|"):
                raise ValueError(f"ambiguous category {self.text!r}: parenthesize nested connectives")
            return Conn(left, op, right)
        return left

    def operand(self) -> CurriedCategory:
        if self.peek() == "(":
            self.take("(")
            inner = self.category()
            self.take(")")
            return inner
        return Atom(self.root())

    def value(self) -> Value:
        name = self.take()
        if is_variable_name(name):
            if name == "_":
                return fresh_var()
            if name not in self.variables:
                self.variables[name] = fresh_var(name)
            return self.variables[name]
        return name

    def root(self) -> RootTerm:
        symbol = self.take()
        if not (symbol[0].isalnum() or symbol[0] == "_") or is_variable_name(symbol):
            raise ValueError(f"expected an atom symbol in {self.text!r}, got {symbol!r}")
        feats = []
        if self.peek() == "{":
            self.take("{")
            while self.peek() != "}":
                attr = self.take()
                self.take("=")
                feats.append((attr, self.value()))
                if self.peek() == ",":
                    self.take(",")
            self.take("}")
        return RootTerm(symbol, tuple(feats))


def parse_category(text: str, variables: dict[str, Var] | None = None) -> CurriedCategory:
    """Read the plain-text form, e.g. ``(n\\n)/(s|np)`` or ``np{case=nom}``."""
    reader = _CategoryReader(text, {} if variables is None else variables)
    c = reader.category()
    if reader.peek() is not None:
        raise ValueError(f"trailing input in category {text!r}: {reader.peek()!r}")
    return c


def parse_root(text: str) -> RootTerm:
    reader = _CategoryReader(text, {})
    root = reader.root()
    if reader.peek() is not None:
        raise ValueError(f"trailing input in root term {text!r}")
    return root


# -- well-formedness ---------------------------------------------------------

def validate_lexical_tree(t, atoms: Iterable[str] | None = None, path: str = "tree") -> list[str]:
    """Report every way ``t`` fails to be a well-formed lexical tree.

    The flat leaves list always induces a binary, head-anchored tree, so the
    structural conditions reduce to recursive well-formedness of every
    embedded argument tree and slash element.  An empty list means ok.
    """
    declared = None if atoms is None else set(atoms)
    problems: list[str] = []
    _validate(t, declared, path, problems, slash_element=False)
    return problems


def _validate(t, declared, path, problems, slash_element):
    if isinstance(t, Var):
        problems.append(f"{path}: unresolved variable {t}")
        return
    if not isinstance(t, STree):
        problems.append(f"{path}: expected a tree, got {type(t).__name__}")
        return
    root = t.root
    if not isinstance(root, RootTerm):
        problems.append(f"{path}.root: expected a root term, got {root!r}")
    else:
        if declared is not None and root.symbol not in declared:
            problems.append(f"{path}.root: undeclared atom {root.symbol!r}")
        attrs = [a for a, _ in root.features]
        if len(attrs) != len(set(attrs)):
            problems.append(f"{path}.root: duplicate attributes")
        for attr, value in root.features:
            if not isinstance(value, (str, Var)):
                problems.append(f"{path}.root: feature {attr} has non-atomic value {value!r}")
    if slash_element and t.slash:
        problems.append(f"{path}: a slash element cannot carry its own slash")
    for i, leaf in enumerate(t.leaves):
        if not isinstance(leaf, Leaf) or not isinstance(leaf.dir, Direction):
            problems.append(f"{path}.leaves[{i}]: leaf without direction")
            continue
        _validate(leaf.cat, declared, f"{path}.leaves[{i}].cat", problems, False)
    for i, elem in enumerate(t.slash):
        _validate(elem, declared, f"{path}.slash[{i}]", problems, True)
