import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexgram.categories import (LEFT, RIGHT, Atom, CategoryLevelError, Conn, Leaf, RootTerm, STree,
                                atom, check_levels, format_category, from_curried, parse_category,
                                to_curried, validate_lexical_tree)
from lexgram.terms import Var

np_, n_, s_ = atom("np"), atom("n"), atom("s")


def test_example_one_folds_slash_to_undirected():
    x = [atom(f"X{i}") for i in range(5)]
    tree = STree(RootTerm("X0"), (Leaf(RIGHT, STree(RootTerm("X2"), (), (x[3], x[4]))),
                                   Leaf(RIGHT, x[1])))
    assert format_category(to_curried(tree)) == "(X0/X1)/((X2|X3)|X4)"


def test_atomic_category():
    assert to_curried(np_) == Atom(RootTerm("np"))
    assert from_curried(parse_category("np")) == np_


def test_transitive_verb_folds_first_leaf_outermost():
    loves = STree(RootTerm("s"), (Leaf(RIGHT, np_), Leaf(LEFT, np_)))
    assert format_category(to_curried(loves)) == "(s\\np)/np"
    assert from_curried(parse_category("(s\\np)/np")) == loves


def test_relativizer_category():
    that = STree(RootTerm("n"), (Leaf(RIGHT, STree(RootTerm("s"), (), (np_,))), Leaf(LEFT, n_)))
    assert from_curried(parse_category("(n\\n)/(s|np)")) == that
    assert format_category(to_curried(that)) == "(n\\n)/(s|np)"


def test_slash_order_is_canonical():
    a = STree(RootTerm("s"), (), (np_, n_))
    b = STree(RootTerm("s"), (), (n_, np_))
    assert a == b
    assert format_category(to_curried(a, level=2)) == "(s|n)|np"


def test_features_survive_translation():
    c = parse_category("s\\np{case=nom,num=sg}")
    t = from_curried(c)
    assert t.leaves[0].cat.root.feature("case") == "nom"
    assert format_category(to_curried(t)) == "s\\np{case=nom,num=sg}"


def test_uppercase_feature_values_are_variables():
    shared = {}
    c = parse_category("(s\\np{num=N})/np{num=N}", shared)
    t = from_curried(c)
    v1 = t.leaves[0].cat.root.feature("num")
    v2 = t.leaves[1].cat.root.feature("num")
    assert isinstance(v1, Var) and v1 == v2


@pytest.mark.parametrize("text", ["s|np", "(s\\np)/(s/np)", "np/(s|(np|n))"])
def test_level_violations_are_rejected(text):
    c = parse_category(text)
    assert check_levels(c)
    with pytest.raises(CategoryLevelError):
        from_curried(c)


def test_top_level_slash_cannot_be_curried_strictly():
    with pytest.raises(CategoryLevelError):
        to_curried(STree(RootTerm("s"), (), (np_,)))
    assert format_category(to_curried(STree(RootTerm("s"), (), (np_,)), strict=False)) == "s|np"


def test_control_complement_is_not_expressible():
    # a complement with its own leaves would need '/' at an even level
    ctrl = STree(RootTerm("s"), (Leaf(RIGHT, STree(RootTerm("s"), (Leaf(LEFT, np_),))),))
    with pytest.raises(CategoryLevelError):
        to_curried(ctrl)


def test_unparenthesized_chain_is_rejected():
    with pytest.raises(ValueError):
        parse_category("s\\np/np")


def test_parse_rejects_garbage():
    for bad in ["", "(s", "s)", "s//np", "np{case}"]:
        with pytest.raises(ValueError):
            parse_category(bad)


def test_validate_accepts_trivial_and_two_leaf_entries():
    assert validate_lexical_tree(np_, ["np"]) == []
    gives = STree(RootTerm("s"), (Leaf(RIGHT, np_), Leaf(RIGHT, np_), Leaf(LEFT, np_)))
    assert validate_lexical_tree(gives, ["s", "np"]) == []


def test_validate_reports_undeclared_slash_atom():
    t = STree(RootTerm("n"), (Leaf(RIGHT, STree(RootTerm("s"), (), (atom("pp"),))),))
    problems = validate_lexical_tree(t, ["n", "s", "np"])
    assert len(problems) == 1 and "pp" in problems[0] and "slash" in problems[0]


def test_validate_reports_nested_slash_and_unbound_var():
    inner = STree(RootTerm("s"), (), (np_,))
    t = STree(RootTerm("s"), (Leaf(RIGHT, STree(RootTerm("s"), (), (inner,))), Leaf(LEFT, Var(-1, "X"))))
    problems = validate_lexical_tree(t, ["s", "np"])
    assert any("own slash" in p for p in problems)
    assert any("unresolved variable" in p for p in problems)


def test_root_term_rejects_duplicate_attributes():
    with pytest.raises(ValueError):
        RootTerm("np", (("case", "nom"), ("case", "acc")))


# -- property: random well-formed trees roundtrip ----------------------------

SYMBOLS = ["s", "np", "n", "pp"]


def odd_trees(depth: int):
    """Trees at an odd level: a root with leaves, no slash."""
    roots = st.builds(RootTerm, st.sampled_from(SYMBOLS))
    if depth == 0:
        return st.builds(STree, roots)
    leaf = st.builds(Leaf, st.sampled_from([LEFT, RIGHT]), even_trees(depth - 1))
    return st.builds(STree, roots, st.lists(leaf, max_size=3).map(tuple))


def even_trees(depth: int):
    """Complements at an even level: a root with a slash, no leaves."""
    roots = st.builds(RootTerm, st.sampled_from(SYMBOLS))
    if depth == 0:
        return st.builds(STree, roots)
    slash = st.lists(odd_trees(depth - 1), max_size=2).map(tuple)
    return st.builds(STree, roots, st.just(()), slash)


@settings(max_examples=300, deadline=None)
@given(odd_trees(3))
def test_roundtrip_property(t):
    c = to_curried(t)
    assert check_levels(c) == []
    assert from_curried(c) == t
    assert from_curried(parse_category(format_category(c))) == t


def test_conn_rejects_unknown_operator():
    with pytest.raises(ValueError):
        Conn(Atom(RootTerm("s")), "^", Atom(RootTerm("np")))
