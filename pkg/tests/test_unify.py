import itertools
import random

import pytest
from bruteforce import VARS, X, Y, check_mgu, universe

from lexgram.categories import LEFT, RIGHT, Leaf, RootTerm, STree, atom
from lexgram.terms import Var, fresh_var
from lexgram.unify import (EMPTY, is_ground, is_variant, rename_apart, substitute, unify,
                           unify_all, unify_root, unify_stree, variables)

np_, s_ = atom("np"), atom("s")


def test_root_binds_feature_variable():
    nom = Var(-1, "Nom")
    s = unify_root(RootTerm("np", (("case", nom),)), RootTerm("np", (("case", "nom"),)), EMPTY)
    assert s == {nom: "nom"}


def test_root_identity_and_clash():
    assert unify_root(RootTerm("np"), RootTerm("np"), EMPTY) == {}
    assert unify_root(RootTerm("np", (("case", "nom"),)), RootTerm("np", (("case", "acc"),)), EMPTY) is None
    assert unify_root(RootTerm("np"), RootTerm("s"), EMPTY) is None


def test_missing_attribute_is_not_a_clash():
    assert unify_root(RootTerm("np", (("case", "nom"),)), RootTerm("np", (("num", "sg"),))) == {}


def test_stree_examples():
    assert unify_stree(np_, np_, EMPTY) == {}
    x = Var(-2, "X")
    s = unify_stree(STree(s_.root, (), (np_,)), STree(s_.root, (), (x,)), EMPTY)
    assert s == {x: np_}
    one = STree(s_.root, (Leaf(RIGHT, np_),))
    two = STree(s_.root, (Leaf(RIGHT, np_), Leaf(LEFT, np_)))
    assert unify_stree(one, two) is None


def test_leaf_direction_matters():
    assert unify(STree(s_.root, (Leaf(RIGHT, np_),)), STree(s_.root, (Leaf(LEFT, np_),))) is None


def test_slash_multiset_tries_every_pairing():
    a, b = Var(-3, "A"), Var(-4, "B")
    pattern = STree(s_.root, (), (STree(RootTerm("np", (("case", a),))), STree(RootTerm("np", (("case", b),)))))
    ground_ = STree(s_.root, (), (atom("np", case="nom"), atom("np", case="acc")))
    results = list(unify_all(pattern, ground_))
    assert sorted((r[a], r[b]) for r in results) == [("acc", "nom"), ("nom", "acc")]


def test_slash_size_mismatch_fails():
    assert unify(STree(s_.root, (), (np_,)), STree(s_.root, (), (np_, np_))) is None


def test_occurs_check():
    x = Var(-5, "X")
    assert unify(x, STree(s_.root, (Leaf(RIGHT, x),))) is None


def test_variable_chains_resolve():
    x, y = Var(-6, "X"), Var(-7, "Y")
    s = unify(x, y)
    s = unify(y, np_, s)
    assert substitute(x, s) == np_


def test_rename_apart():
    c = Var(-8, "C")
    t = STree(RootTerm("np", (("case", c),)))
    r = rename_apart(t)
    c2 = r.root.feature("case")
    assert isinstance(c2, Var) and c2 != c and c2.name == "C"
    assert is_variant(t, r)
    assert rename_apart(np_) == np_


def test_rename_apart_keeps_sharing():
    v = Var(-9, "V")
    t = STree(s_.root, (Leaf(RIGHT, STree(RootTerm("np", (("num", v),)))), Leaf(LEFT, STree(RootTerm("np", (("num", v),))))))
    r = rename_apart(t)
    assert r.leaves[0].cat.root.feature("num") is r.leaves[1].cat.root.feature("num")
    assert set(variables(r)).isdisjoint(variables(t))


def test_is_variant_distinguishes_sharing():
    a, b = fresh_var("A"), fresh_var("B")
    shared = RootTerm("np", (("f", a), ("g", a)))
    apart = RootTerm("np", (("f", a), ("g", b)))
    assert not is_variant(shared, apart)


def test_is_ground():
    assert is_ground(np_)
    assert not is_ground(RootTerm("np", (("case", fresh_var()),)))


# -- MGU against the brute-force oracle --------------------------------------

TERMS = list(universe())


def test_universe_size():
    assert len(TERMS) == 108


def test_mgu_sampled_against_bruteforce():
    # the exhaustive version runs in the acceptance suite
    rng = random.Random(7)
    pairs = rng.sample(list(itertools.product(TERMS, repeat=2)), 2000)
    failures = [(a, b, msg) for a, b in pairs if (msg := check_mgu(a, b, unify_root(a, b)))]
    assert failures == []


def test_unify_is_symmetric_in_success():
    rng = random.Random(11)
    for _ in range(2000):
        a, b = rng.choice(TERMS), rng.choice(TERMS)
        assert (unify_root(a, b) is None) == (unify_root(b, a) is None)


def test_mgu_results_are_idempotent():
    for a in TERMS[:40]:
        for b in TERMS:
            s = unify_root(a, b)
            if s is not None:
                assert all(substitute(v, s) == substitute(substitute(v, s), s) for v in VARS)
                assert substitute(a, s).symbol == substitute(b, s).symbol


def test_bruteforce_oracle_catches_a_wrong_answer():
    a = RootTerm("a", (("f", X),))
    b = RootTerm("a", (("f", "b"), ("g", Y)))
    assert check_mgu(a, b, {X: "b"}) is None
    assert check_mgu(a, b, {X: "b", Y: "c"}) is not None  # too specific
    assert check_mgu(a, b, {}) is not None  # not a unifier
    assert check_mgu(a, b, None) is not None


@pytest.mark.parametrize("pair", [(X, np_), (np_, X)])
def test_variable_against_tree(pair):
    assert substitute(X, unify(*pair)) == np_
