"""Lexicalized categorial grammar: lexical trees, a slash-threading
head-driven parser, and reference engines to check it against."""
from .categories import (LEFT, RIGHT, ArgSTree, Atom, CategoryLevelError, Conn, Direction, Leaf, RootTerm,
                         STree, atom, check_levels, format_category, from_curried, parse_category, to_curried,
                         validate_lexical_tree)
from .grammar_file import Diagnostic, GrammarError
from .lexicon import CompiledLexicon, check_acyclic, expand, load_demo, load_grammar, load_grammar_file
from .parser import Derivation, ParseLimits, ParseResult, Parser, check_derivation, format_derivation, parse
from .unify import rename_apart, substitute, unify, unify_all, unify_root, unify_stree

__version__ = "0.1.0"

__all__ = [
    "LEFT", "RIGHT", "ArgSTree", "Atom", "CategoryLevelError", "CompiledLexicon", "Conn", "Derivation",
    "Diagnostic", "Direction", "GrammarError", "Leaf", "ParseLimits", "ParseResult", "Parser", "RootTerm",
    "STree", "atom", "check_acyclic", "check_derivation", "check_levels", "expand", "format_category",
    "format_derivation", "from_curried", "load_demo", "load_grammar", "load_grammar_file", "parse",
    "parse_category", "rename_apart", "substitute", "to_curried", "unify", "unify_all", "unify_root",
    "unify_stree", "validate_lexical_tree",
]
