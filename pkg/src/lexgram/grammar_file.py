"""Reader for the line-oriented grammar file format.

::

    % comments run to the end of the line; statements end with '.'
    atom s, np, n .
    value nom, acc .
    class maxproj(R) := tree(R, []) .
    class tv(R, Obj, Subj) := tree(R, [right: Obj, left: Subj]) .
    entry loves : tv(s, maxproj(np), maxproj(np)) .

Identifiers starting with an uppercase letter or ``_`` are variables.  The
reader only builds an abstract syntax; name resolution happens when the
lexicon is compiled.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass
class Diagnostic:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}" if self.line else self.message


class GrammarError(Exception):
    """The grammar could not be loaded; ``diagnostics`` lists every problem."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(map(str, self.diagnostics)))


# -- syntax tree -------------------------------------------------------------

@dataclass(frozen=True)
class VarE:
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class NameE:
    """A bare identifier: an atom or a call to a zero-place class."""

    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RootE:
    name: str
    features: tuple  # of (attr, VarE | str)
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CallE:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LeafE:
    dir: str
    cat: object
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ListE:
    items: tuple
    tail: VarE | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ConjE:
    parts: tuple
    line: int = field(default=0, compare=False)


@dataclass
class ClauseDecl:
    name: str
    params: tuple[str, ...]
    body: ConjE
    line: int


@dataclass
class EntryDecl:
    surface: str
    body: ConjE
    line: int


@dataclass
class AtomDecl:
    names: tuple[str, ...]
    line: int
    kind: str = "atom"  # or "value": a feature constant usable as a class argument


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<string>'[^'\n]*'|"[^"\n]*")
  | (?P<ident>[A-Za-z0-9_][A-Za-z0-9_'\-]*)
  | (?P<punct>:=|[:.,()\[\]{}=&|])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise GrammarError([Diagnostic(line, f"unexpected character {text[pos]!r}")])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind == "string":
            tokens.append(Token("ident", m.group()[1:-1], line))
        elif kind in ("ident", "punct"):
            tokens.append(Token(kind, m.group(), line))
        pos = m.end()
    tokens.append(Token("eof", "", line))
    return tokens


def is_var_name(name: str) -> bool:
    return name[:1].isupper() or name[:1] == "_"


# -- recursive descent -------------------------------------------------------

class _Reader:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str) -> GrammarError:
        return GrammarError([Diagnostic(self.tok.line, message)])

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of file"
            raise self.error(f"expected {want}, got {got}")
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def statements(self):
        while self.tok.kind != "eof":
            yield self.statement()

    def statement(self):
        head = self.take(kind="ident")
        if head.text in ("atom", "value"):
            names = [self.take(kind="ident").text]
            while self.at(","):
                self.take(",")
                names.append(self.take(kind="ident").text)
            self.take(".")
            for name in names:
                if is_var_name(name):
                    raise GrammarError([Diagnostic(head.line, f"{head.text} {name!r} must not start uppercase")])
            return AtomDecl(tuple(names), head.line, head.text)
        if head.text == "class":
            name = self.take(kind="ident").text
            params: list[str] = []
            if self.at("("):
                self.take("(")
                if not self.at(")"):
                    params.append(self.param())
                    while self.at(","):
                        self.take(",")
                        params.append(self.param())
                self.take(")")
            self.take(":=")
            body = self.conjunction()
            self.take(".")
            return ClauseDecl(name, tuple(params), body, head.line)
        if head.text == "entry":
            surface = self.take(kind="ident").text
            self.take(":")
            body = self.conjunction()
            self.take(".")
            return EntryDecl(surface, body, head.line)
        raise GrammarError([Diagnostic(head.line, f"unknown statement {head.text!r}")])

    def param(self) -> str:
        tok = self.take(kind="ident")
        if not is_var_name(tok.text):
            raise GrammarError([Diagnostic(tok.line, f"class parameter {tok.text!r} must be a variable")])
        return tok.text

    def conjunction(self) -> ConjE:
        line = self.tok.line
        parts = [self.expr()]
        while self.at("&"):
            self.take("&")
            parts.append(self.expr())
        return ConjE(tuple(parts), line)

    def expr(self):
        if self.at("["):
            return self.list_expr()
        if self.at("("):
            self.take("(")
            inner = self.conjunction()
            self.take(")")
            return inner
        tok = self.take(kind="ident")
        if is_var_name(tok.text):
            return VarE(tok.text, tok.line)
        if self.at("("):
            self.take("(")
            args = []
            if not self.at(")"):
                args.append(self.conjunction_or_expr())
                while self.at(","):
                    self.take(",")
                    args.append(self.conjunction_or_expr())
            self.take(")")
            return CallE(tok.text, tuple(args), tok.line)
        if self.at("{"):
            self.take("{")
            feats = []
            while not self.at("}"):
                attr = self.take(kind="ident").text
                self.take("=")
                val = self.take(kind="ident")
                feats.append((attr, VarE(val.text, val.line) if is_var_name(val.text) else val.text))
                if not self.at("}"):
                    self.take(",")
            self.take("}")
            return RootE(tok.text, tuple(feats), tok.line)
        return NameE(tok.text, tok.line)

    def conjunction_or_expr(self):
        conj = self.conjunction()
        return conj.parts[0] if len(conj.parts) == 1 else conj

    def list_expr(self) -> ListE:
        line = self.take("[").line
        items = []
        tail = None
        if not self.at("]"):
            items.append(self.list_item())
            while self.at(","):
                self.take(",")
                items.append(self.list_item())
            if self.at("|"):
                self.take("|")
                tok = self.take(kind="ident")
                if not is_var_name(tok.text):
                    raise GrammarError([Diagnostic(tok.line, "list tail must be a variable")])
                tail = VarE(tok.text, tok.line)
        self.take("]")
        return ListE(tuple(items), tail, line)

    def list_item(self):
        tok = self.tok
        nxt = self.tokens[self.pos + 1]
        if tok.kind == "ident" and tok.text in ("left", "right") and nxt.text == ":":
            self.pos += 2
            return LeafE(tok.text, self.conjunction_or_expr(), tok.line)
        return self.conjunction_or_expr()


def read_grammar(text: str) -> list:
    """Parse grammar text into a list of statement declarations."""
    return list(_Reader(tokenize(text)).statements())
