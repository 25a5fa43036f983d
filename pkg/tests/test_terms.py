import pytest
from hypothesis import given, strategies as st

from modchat.rule_engine import (
    Atom,
    Compound,
    Num,
    SlotMap,
    Text,
    Var,
    format_term,
    is_ground,
    parse_term,
    resolve,
    unify,
)


def test_variable_binds_to_atom():
    assert unify(Var("L"), Atom("greece"), {}) == {"L": Atom("greece")}


def test_slotmap_pattern_matches_larger_message():
    pattern = parse_term("{hol -> hol_denial, user_location -> L}")
    message = parse_term(
        "{user_location -> greece, user_age -> 34, chat_context -> adults_only, "
        "hate_speech_score -> 5, hol -> hol_denial}"
    )
    assert unify(pattern, message, {}) == {"L": Atom("greece")}


def test_slotmap_value_clash_fails():
    assert unify(parse_term("{hol -> hol_denial}"), parse_term("{hol -> none}"), {}) is None


def test_occurs_check_rejects_cyclic_binding():
    assert unify(Var("X"), Compound("f", (Var("X"),)), {}) is None


def test_wildcard_matches_without_binding():
    assert unify(Var("_"), Atom("a"), {}) == {}
    assert unify(Compound("f", (Var("_"), Var("_"))), parse_term("f(a, b)"), {}) == {}


def test_numbers_compare_with_tolerance():
    assert unify(Num(1.0), Num(1.0 + 1e-12), {}) == {}
    assert unify(Num(1), Num(2), {}) is None


def test_resolution_is_idempotent():
    b = unify(parse_term("f(X, g(Y))"), parse_term("f(a, Z)"), {})
    t = parse_term("h(X, Z, Y)")
    once = resolve(t, b)
    assert resolve(once, b) == once


def test_ground_term_has_no_variables():
    assert is_ground(parse_term("f(a, g(1, \"x\"))"))
    assert not is_ground(parse_term("f(a, X)"))
    assert not is_ground(parse_term("f(_, a)"))


# -- property: unification symmetry ----------------------------------------

atoms = st.sampled_from(["a", "b", "c", "greece"]).map(Atom)
numbers = st.integers(min_value=-5, max_value=5).map(Num)
texts = st.sampled_from(["x", "y"]).map(Text)
variables = st.sampled_from(["X", "Y", "Z", "_"]).map(Var)
leaves = st.one_of(atoms, numbers, texts, variables)


def compounds(children):
    return st.builds(
        Compound,
        st.sampled_from(["f", "g"]),
        st.lists(children, min_size=1, max_size=3).map(tuple),
    )


def slotmaps(children):
    return st.dictionaries(st.sampled_from(["k1", "k2", "k3"]), children, max_size=3).map(
        lambda d: SlotMap(tuple(d.items()))
    )


terms = st.recursive(leaves, lambda c: st.one_of(compounds(c), slotmaps(c)), max_leaves=8)


@given(terms, terms)
def test_unify_symmetry(a, b):
    left = unify(a, b, {})
    right = unify(b, a, {})
    assert (left is None) == (right is None)
    if left is not None:
        # the substituted terms are alpha-equivalent across both directions
        assert unify(resolve(a, left), resolve(a, right), {}) is not None
        assert unify(resolve(b, left), resolve(b, right), {}) is not None


@given(terms)
def test_unify_reflexive(t):
    assert unify(t, t, {}) is not None


@given(terms)
def test_format_parse_roundtrip(t):
    assert parse_term(format_term(t)) == t
