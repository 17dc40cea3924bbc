"""Brute-force reference for root-term unification.

Works semantically: a ground substitution unifies two root terms when
their instances have the same symbol and agree on every attribute they
share.  The unifier under test is never consulted.
"""
from __future__ import annotations

import itertools

from lexgram.categories import RootTerm
from lexgram.terms import Var

ATOMS = ("a", "b", "c")
ATTRS = ("f", "g")
X, Y = Var(-101, "X"), Var(-102, "Y")
VARS = (X, Y)


def universe():
    """Every root term over the small universe: 3 * 6 * 6 = 108 terms."""
    values = (None, *ATOMS, *VARS)
    for symbol in ATOMS:
        for vf, vg in itertools.product(values, repeat=2):
            feats = tuple((k, v) for k, v in zip(ATTRS, (vf, vg)) if v is not None)
            yield RootTerm(symbol, feats)


def ground_substitutions():
    for vals in itertools.product(ATOMS, repeat=len(VARS)):
        yield dict(zip(VARS, vals))


def ground(term: RootTerm, g: dict) -> RootTerm:
    return RootTerm(term.symbol, tuple((k, g.get(v, v)) for k, v in term.features))


def compatible(a: RootTerm, b: RootTerm) -> bool:
    if a.symbol != b.symbol:
        return False
    fa, fb = dict(a.features), dict(b.features)
    return all(fa[k] == fb[k] for k in fa.keys() & fb.keys())


def ground_unifiers(a: RootTerm, b: RootTerm) -> list[dict]:
    return [g for g in ground_substitutions() if compatible(ground(a, g), ground(b, g))]


def resolve(v, theta: dict, g: dict):
    """Value of ``v`` under ``g`` after applying ``theta``."""
    seen = set()
    while isinstance(v, Var) and v in theta and v not in seen:
        seen.add(v)
        v = theta[v]
    return g.get(v, v) if isinstance(v, Var) else v


def check_mgu(a: RootTerm, b: RootTerm, theta: dict | None) -> str | None:
    """Return a complaint, or None if ``theta`` is a correct MGU answer."""
    expected = ground_unifiers(a, b)
    if theta is None:
        return None if not expected else f"failed but {len(expected)} ground unifiers exist"
    if not expected:
        return f"returned {theta} but no unifier exists"
    for g in ground_substitutions():
        factors = all(resolve(v, theta, g) == g[v] for v in VARS)
        if factors != (g in expected):
            kind = "a unifier that does not factor" if not factors else "factors but is no unifier"
            return f"{g} is {kind} through {theta}"
    return None
