"""Independent oracles used to compute expected values.

These deliberately avoid the code paths they check: the rule engine is
checked against a naive bottom-up fixpoint over the Herbrand base, and the
pod's purpose binding against exhaustive enumeration of the small
purpose x predicate product.
"""

from __future__ import annotations

import random

from modchat.rule_engine import Atom, Clause, Literal, Rulebase, Var, free_vars, resolve, unify

GroundFact = tuple[str, tuple]


def bottom_up_facts(rb: Rulebase) -> set[GroundFact]:
    """Naive fixpoint for function-free, negation-free rulebases."""
    facts: set[GroundFact] = set()
    rules: list[Clause] = []
    for c in rb.clauses:
        if c.is_fact:
            assert not free_vars_of(c.head), "oracle needs ground facts"
            facts.add((c.head.predicate, c.head.args))
        else:
            rules.append(c)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            for bindings in _match_body(rule.body, frozenset(facts), {}):
                head_args = tuple(resolve(a, bindings) for a in rule.head.args)
                fact = (rule.head.predicate, head_args)
                assert not any(free_vars(a) for a in head_args), "rules must be range-restricted"
                if fact not in facts:
                    facts.add(fact)
                    changed = True
    return facts


def free_vars_of(lit: Literal) -> set[str]:
    out = set()
    for a in lit.args:
        out |= free_vars(a)
    return out


def _match_body(literals, facts, bindings):
    if not literals:
        yield bindings
        return
    lit, rest = literals[0], literals[1:]
    for pred, args in facts:
        if pred != lit.predicate or len(args) != len(lit.args):
            continue
        b = bindings
        for x, y in zip(lit.args, args):
            b = unify(x, y, b)
            if b is None:
                break
        if b is not None:
            yield from _match_body(rest, facts, b)


def derivable(rb: Rulebase, predicate: str, arity: int) -> set[tuple]:
    return {args for p, args in bottom_up_facts(rb) if p == predicate and len(args) == arity}


def random_rulebase(rng: random.Random) -> Rulebase:
    """Function-free, negation-free, range-restricted random program.

    Bounded at <= 12 constants and <= 20 clauses.  The optional recursive
    rule is transitive-closure shaped over an acyclic edge relation so the
    derivation depth stays small.
    """
    consts = [f"c{i}" for i in range(rng.randint(3, 12))]
    preds = [(f"p{i}", rng.randint(1, 2)) for i in range(rng.randint(2, 4))]
    clauses: list[Clause] = []

    for _ in range(rng.randint(2, 7)):
        pred, arity = rng.choice(preds)
        args = tuple(Atom(rng.choice(consts)) for _ in range(arity))
        clauses.append(Clause(Literal(pred, args)))

    varnames = ["X", "Y", "Z"]
    for _ in range(rng.randint(1, 8)):
        # stratified: a rule head only depends on lower-indexed predicates,
        # so the only recursion in the program is the transitive closure below
        head_index = rng.randrange(1, len(preds))
        head_pred, head_arity = preds[head_index]
        body = []
        body_vars: list[str] = []
        for _ in range(rng.randint(1, 2)):
            bp, bar = rng.choice(preds[:head_index])
            args = []
            for _ in range(bar):
                if rng.random() < 0.7:
                    v = rng.choice(varnames)
                    args.append(Var(v))
                    body_vars.append(v)
                else:
                    args.append(Atom(rng.choice(consts)))
            body.append(Literal(bp, tuple(args)))
        if body_vars:
            head_args = tuple(
                Var(rng.choice(body_vars)) if rng.random() < 0.8 else Atom(rng.choice(consts))
                for _ in range(head_arity)
            )
        else:
            head_args = tuple(Atom(rng.choice(consts)) for _ in range(head_arity))
        clauses.append(Clause(Literal(head_pred, head_args), tuple(body)))

    if rng.random() < 0.5 and len(clauses) <= 16:
        # acyclic edge facts: i -> j only for i < j
        n = min(len(consts), 6)
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(0, n - 1)
            j = rng.randrange(i + 1, n)
            clauses.append(Clause(Literal("edge", (Atom(consts[i]), Atom(consts[j])))))
        x, y, z = Var("X"), Var("Y"), Var("Z")
        clauses.append(Clause(Literal("reach", (x, y)), (Literal("edge", (x, y)),)))
        clauses.append(
            Clause(
                Literal("reach", (x, y)),
                (Literal("edge", (x, z)), Literal("reach", (z, y))),
            )
        )

    return Rulebase(tuple(clauses[:20]), name="random")


def random_fact_base(rng: random.Random) -> Rulebase:
    consts = [f"k{i}" for i in range(rng.randint(2, 8))]
    preds = [(f"q{i}", rng.randint(1, 2)) for i in range(rng.randint(1, 3))]
    clauses = []
    for _ in range(rng.randint(1, 10)):
        pred, arity = rng.choice(preds)
        clauses.append(Clause(Literal(pred, tuple(Atom(rng.choice(consts)) for _ in range(arity)))))
    return Rulebase(tuple(clauses), name="facts"), consts, preds
