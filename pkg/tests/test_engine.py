import random

import pytest

from modchat.rule_engine import (
    Atom,
    Clause,
    Diagnostics,
    EvaluationError,
    Literal,
    Rulebase,
    Var,
    dispatch,
    naf,
    parse_literal,
    parse_rulebase,
    parse_term,
    solve,
)

from oracles import bottom_up_facts, derivable, random_rulebase

LEGAL_FIXTURE = """
illCountry(greece).
illCountry(germany).

legalChecker() :-
    rcvMult(X, P, F, executionRequest, {hol -> hol_denial, user_location -> L}) [illCountry(L)],
    spawn(X, service, result, args("legal_violation", "Holocaust Denial")),
    spawn(X, service, resume).

legalChecker() :-
    rcvMult(X, P, F, executionRequest, {hol -> hol_denial, user_location -> L}) [not(illCountry(L))],
    spawn(X, service, resume).

legalChecker() :-
    rcvMult(X, P, F, executionRequest, {hol -> H}) [not_equal(H, hol_denial)],
    spawn(X, service, resume).
"""


def payload(location="greece", hol="hol_denial", score=5):
    return parse_term(
        "{user_location -> %s, user_age -> 34, chat_context -> adults_only, "
        "hate_speech_score -> %d, hol -> %s}" % (location, score, hol)
    )


# -- solve ------------------------------------------------------------------


def test_ground_goal_one_solution():
    rb = parse_rulebase("illCountry(greece). illCountry(germany).")
    assert list(solve(parse_literal("illCountry(greece)"), rb)) == [{}]


def test_fact_enumeration_order():
    rb = parse_rulebase("illCountry(greece). illCountry(germany).")
    assert list(solve(parse_literal("illCountry(C)"), rb)) == [
        {"C": Atom("greece")},
        {"C": Atom("germany")},
    ]


def test_rule_solutions_match_bottom_up_oracle():
    rb = parse_rulebase("p(X) :- q(X). q(a). q(b).")
    got = {tuple(sol.values()) for sol in solve(parse_literal("p(X)"), rb, depth_limit=8)}
    assert got == {(Atom("a"),), (Atom("b"),)}
    assert got == derivable(rb, "p", 1)


def test_conjunction_and_binding_flow():
    rb = parse_rulebase("r(X, Y) :- q(X), s(X, Y). q(a). q(b). s(a, one). s(b, two).")
    got = list(solve(parse_literal("r(A, B)"), rb))
    assert got == [
        {"A": Atom("a"), "B": Atom("one")},
        {"A": Atom("b"), "B": Atom("two")},
    ]


def test_cut_discards_remaining_clause_alternatives():
    rb = parse_rulebase("first(X) :- q(X), !. q(a). q(b).")
    assert list(solve(parse_literal("first(X)"), rb)) == [{"X": Atom("a")}]


def test_cut_is_local_to_its_clause():
    rb = parse_rulebase("top(X) :- mid(X). mid(X) :- q(X), !. mid(c). q(a). q(b).")
    # cut prunes inside mid/1 but top still sees mid's first solution only
    assert list(solve(parse_literal("top(X)"), rb)) == [{"X": Atom("a")}]


def test_guard_filters_clause_choice():
    rb = parse_rulebase("ok(X) :- pick(X) [good(X)]. pick(a). pick(b). good(b).")
    assert list(solve(parse_literal("ok(X)"), rb)) == [{"X": Atom("b")}]


def test_guard_isolation_failing_guard_equals_deleted_clause():
    with_guard = parse_rulebase("p(X) :- q(X) [r(X)]. p(z). q(a). q(b).")
    without = parse_rulebase("p(z).")
    goal = parse_literal("p(X)")
    assert list(solve(goal, with_guard)) == list(solve(goal, without))


def test_guard_bindings_flow_into_body():
    rb = parse_rulebase("pairs(X, Y) :- q(X) [match(X, Y)], use(Y). q(a). match(a, b). use(b).")
    assert list(solve(parse_literal("pairs(X, Y)"), rb)) == [{"X": Atom("a"), "Y": Atom("b")}]


def test_depth_limit_reported_via_diagnostics():
    rb = parse_rulebase("p(X) :- q(f(X)). q(Y) :- p(Y).")
    diag = Diagnostics()
    assert list(solve(parse_literal("p(X)"), rb, depth_limit=16, diagnostics=diag)) == []
    assert diag.depth_exhausted >= 1


def test_identical_ancestor_goal_pruned():
    rb = parse_rulebase("p(X) :- p(X). p(a).")
    diag = Diagnostics()
    assert list(solve(parse_literal("p(a)"), rb, diagnostics=diag)) == [{}]
    assert diag.loops_pruned >= 1


def test_unknown_predicate_warns():
    diag = Diagnostics()
    assert list(solve(parse_literal("nosuch(a)"), parse_rulebase("p(a)."), diagnostics=diag)) == []
    assert diag.unknown_predicates == ["nosuch"]


def test_depth_limit_must_be_positive():
    with pytest.raises(ValueError):
        list(solve(parse_literal("p(a)"), parse_rulebase("p(a)."), depth_limit=0))


# -- negation as failure ------------------------------------------------------


def test_naf_success_and_failure():
    rb = parse_rulebase("illCountry(greece). illCountry(germany).")
    assert naf(parse_literal("illCountry(usa)"), rb) is True
    assert naf(parse_literal("illCountry(greece)"), rb) is False


def test_naf_floundering_names_unbound_variables():
    rb = parse_rulebase("illCountry(greece).")
    with pytest.raises(EvaluationError) as e:
        naf(parse_literal("illCountry(X)"), rb)
    assert "X" in str(e.value)


def test_builtin_not_floundering_inside_rule():
    rb = parse_rulebase("bad() :- not(q(X)). q(a).")
    with pytest.raises(EvaluationError):
        list(solve(parse_literal("bad()"), rb))


def test_cut_fail_encoding_matches_builtin():
    base = "q(a). q(b). r(a)."
    encoding = base + " not(A) :- derive(A), !, fail(). not(_)."
    enc_rb = parse_rulebase(encoding)
    plain_rb = parse_rulebase(base)
    for goal in ["q(a)", "q(b)", "q(c)", "r(a)", "r(b)"]:
        via_encoding = bool(list(solve(parse_literal(f"not({goal})"), enc_rb)))
        assert via_encoding == naf(parse_literal(goal), plain_rb)


# -- dispatch -----------------------------------------------------------------


def test_dispatch_greek_denial_fires_variant_one():
    rb = parse_rulebase(LEGAL_FIXTURE)
    effects = dispatch("executionRequest", payload("greece"), rb)
    assert [(e.verb, tuple(a.value for a in e.args)) for e in effects] == [
        ("result", ("legal_violation", "Holocaust Denial")),
        ("resume", ()),
    ]


def test_dispatch_usa_denial_fires_variant_two():
    rb = parse_rulebase(LEGAL_FIXTURE)
    effects = dispatch("executionRequest", payload("usa"), rb)
    assert [e.verb for e in effects] == ["resume"]


def test_dispatch_no_denial_fires_variant_three():
    rb = parse_rulebase(LEGAL_FIXTURE)
    effects = dispatch("executionRequest", payload("usa", hol="none", score=0), rb)
    assert [e.verb for e in effects] == ["resume"]


def test_exactly_one_variant_fires():
    rb = parse_rulebase(LEGAL_FIXTURE)
    for location in ["greece", "germany", "usa", "france", "brazil"]:
        for hol in ["hol_denial", "none"]:
            effects = dispatch("executionRequest", payload(location, hol=hol), rb)
            assert [e.verb for e in effects].count("resume") == 1


def test_dispatch_requires_ground_payload():
    rb = parse_rulebase(LEGAL_FIXTURE)
    with pytest.raises(EvaluationError):
        dispatch("executionRequest", parse_term("{hol -> H}"), rb)


def test_dispatch_is_deterministic():
    rb = parse_rulebase(LEGAL_FIXTURE)
    assert dispatch("executionRequest", payload(), rb) == dispatch(
        "executionRequest", payload(), rb
    )


def test_dispatch_ignores_other_verbs():
    rb = parse_rulebase(LEGAL_FIXTURE)
    assert dispatch("somethingElse", payload(), rb) == []


def test_spawn_in_guard_is_an_error():
    rb = parse_rulebase(
        "checker() :- rcvMult(X, P, F, go, {k -> v}) [spawn(X, s, resume)], spawn(X, s, resume)."
    )
    with pytest.raises(EvaluationError):
        dispatch("go", parse_term("{k -> v}"), rb)


def test_effects_do_not_leak_from_failed_naf_proofs():
    rb = parse_rulebase(
        "emit() :- spawn(a, s, inner).\n"
        "checker() :- rcvMult(X, P, F, go, {k -> v}), not(emit()), spawn(X, s, unreached).\n"
        "checker() :- rcvMult(X, P, F, go, {k -> v}), spawn(X, s, done)."
    )
    effects = dispatch("go", parse_term("{k -> v}"), rb)
    assert [e.verb for e in effects] == ["done"]


# -- comparison builtins ------------------------------------------------------


@pytest.mark.parametrize(
    "goal,expected",
    [
        ("less(1, 2)", True),
        ("less(2, 2)", False),
        ("lesseq(2, 2)", True),
        ("greater(3, 2)", True),
        ("greatereq(2, 3)", False),
        ("equal(a, a)", True),
        ("not_equal(a, b)", True),
        ("not_equal(a, a)", False),
    ],
)
def test_builtin_tests(goal, expected):
    rb = parse_rulebase("")
    assert bool(list(solve(parse_literal(goal), rb))) is expected


# -- oracle equivalence (small version; the acceptance suite runs 100+) -------


def test_random_programs_match_fixpoint_oracle():
    rng = random.Random(20240824)
    for _ in range(25):
        rb = random_rulebase(rng)
        facts = bottom_up_facts(rb)
        for pred in rb.predicates():
            arities = {len(c.head.args) for c in rb.clauses_for(pred)}
            for arity in arities:
                goal = Literal(pred, tuple(Var(f"V{i}") for i in range(arity)))
                got = {
                    tuple(sol[f"V{i}"] for i in range(arity))
                    for sol in solve(goal, rb, depth_limit=64)
                }
                want = {args for p, args in facts if p == pred and len(args) == arity}
                assert got == want, f"mismatch for {pred}/{arity}"
