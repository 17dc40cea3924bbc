"""Logic variables and generic compound terms shared by all modules."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

_ids = itertools.count(1)


@dataclass(frozen=True)
class Var:
    """A logic variable; identity is the numeric id, the name is cosmetic."""

    id: int
    name: str = field(default="_", compare=False)

    def __str__(self) -> str:
        return self.name if self.name not in ("", "_") else f"_G{self.id}"


def fresh_var(name: str = "_") -> Var:
    return Var(next(_ids), name)


@dataclass(frozen=True)
class Struct:
    """A functor applied to arguments; used for partial descriptions in the lexicon."""

    functor: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.functor
        return f"{self.functor}({', '.join(map(str, self.args))})"


NIL = Struct("[]")


def cons(head, tail) -> Struct:
    return Struct(".", (head, tail))


def from_list(items, tail=NIL) -> Struct:
    result = tail
    for item in reversed(list(items)):
        result = cons(item, result)
    return result
