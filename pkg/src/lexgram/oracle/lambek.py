"""Brute-force prover for the semi-directional Lambek calculus.

Directional ``/`` and ``\\`` sit at odd embedding levels and are only ever
eliminated; the undirected ``|`` sits at even levels and is only ever
introduced.  In sequent form that leaves four rules, searched backwards::

    (ax)   X => X
    (/L)   U => Y    G, X, D => Z    gives   G, X/Y, U, D => Z
    (\\L)   U => Y    G, X, D => Z    gives   G, U, X\\Y, D => Z
    (|R)   G, Y, D => X              gives   G, D => X|Y     (Y at any position)

Every rule removes a connective, so the search is finite; results are
memoized per sequent.  ``U`` may be empty, matching complements that
consist of traces only.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from ..categories import Atom, CategoryLevelError, Conn, CurriedCategory, check_levels, format_category
from ..unify import is_ground


class ProverBoundExceeded(Exception):
    """The sequent is larger than the configured search bound."""


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[CurriedCategory, ...]
    succedent: CurriedCategory

    def __str__(self) -> str:
        return ", ".join(map(format_category, self.antecedent)) + " => " + format_category(self.succedent)


@dataclass(frozen=True)
class ProofResult:
    provable: bool
    proofs: int  # number of cut-free proofs, capped at the prover's limit


def _encode(c: CurriedCategory):
    if isinstance(c, Atom):
        if not is_ground(c.root):
            raise ValueError(f"the prover needs ground atoms, got {c.root}")
        return str(c.root)
    return (c.op, _encode(c.result), _encode(c.arg))


def _size(c) -> int:
    return 0 if isinstance(c, str) else 1 + _size(c[1]) + _size(c[2])


def _polarity(c, sign: int, acc: Counter):
    if isinstance(c, (Atom, Conn)):
        c = _encode(c)
    if isinstance(c, str):
        acc[c] += sign
    else:
        _polarity(c[1], sign, acc)
        _polarity(c[2], -sign, acc)


def balanced(antecedent, succedent) -> bool:
    """Count check: atoms with polarity must cancel out in any provable sequent."""
    acc: Counter = Counter()
    for c in antecedent:
        _polarity(c, 1, acc)
    _polarity(succedent, -1, acc)
    return not any(acc.values())


class LambekProver:
    def __init__(self, bound: int = 40, proof_limit: int = 1000):
        self.bound = bound
        self.proof_limit = proof_limit
        self._memo: dict = {}

    def prove(self, seq: Sequent) -> ProofResult:
        if not seq.antecedent:
            raise ValueError("antecedent must be nonempty")
        for c in (*seq.antecedent, seq.succedent):
            problems = check_levels(c)
            if problems:
                raise CategoryLevelError(f"{format_category(c)}: {', '.join(problems)}")
        ante = tuple(_encode(c) for c in seq.antecedent)
        goal = _encode(seq.succedent)
        size = len(ante) + sum(map(_size, ante)) + _size(goal)
        if size > self.bound:
            raise ProverBoundExceeded(f"sequent size {size} exceeds bound {self.bound}")
        n = self._count(ante, goal)
        return ProofResult(n > 0, n)

    def _count(self, ante: tuple, goal) -> int:
        key = (ante, goal)
        if key in self._memo:
            return self._memo[key]
        if not balanced(ante, goal):
            self._memo[key] = 0
            return 0
        total = 0
        if len(ante) == 1 and ante[0] == goal:
            total += 1
        if not isinstance(goal, str) and goal[0] == "|":
            _, result, hyp = goal
            for p in range(len(ante) + 1):
                total += self._count(ante[:p] + (hyp,) + ante[p:], result)
        for i, c in enumerate(ante):
            if isinstance(c, str) or c[0] == "|":
                continue
            op, result, arg = c
            if op == "/":
                for j in range(i + 1, len(ante) + 1):
                    a = self._count(ante[i + 1:j], arg)
                    if a:
                        total += a * self._count(ante[:i] + (result,) + ante[j:], goal)
            else:
                for j in range(i, -1, -1):
                    a = self._count(ante[j:i], arg)
                    if a:
                        total += a * self._count(ante[:j] + (result,) + ante[i + 1:], goal)
            if total >= self.proof_limit:
                break
        total = min(total, self.proof_limit)
        self._memo[key] = total
        return total


def prove_lambek(seq: Sequent | tuple[Sequence[CurriedCategory], CurriedCategory],
                 bound: int = 40, proof_limit: int = 1000) -> ProofResult:
    if not isinstance(seq, Sequent):
        ante, succ = seq
        seq = Sequent(tuple(ante), succ)
    return LambekProver(bound, proof_limit).prove(seq)


__all__ = ["Atom", "Conn", "LambekProver", "ProofResult", "ProverBoundExceeded",
           "Sequent", "balanced", "prove_lambek"]
