"""Top-down resolution over a Rulebase.

Solutions come out in clause order and left-to-right body order.  Loop
prevention is a depth limit plus rejection of any goal syntactically
identical to an ancestor goal in the same branch; both are reported
through a Diagnostics counter instead of raising.

User-defined clauses shadow builtins of the same predicate name, which is
what lets the cut-fail encoding of negation (`not(A) :- derive(A), !,
fail(). not(_).`) run unchanged next to the builtin `not/1`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .terms import (
    Atom,
    Bindings,
    Compound,
    Literal,
    Num,
    Rulebase,
    SlotMap,
    Term,
    Var,
    _Renamer,
    free_vars,
    is_ground,
    literal_free_vars,
    resolve,
    unify,
)

DEFAULT_DEPTH_LIMIT = 256


class EvaluationError(Exception):
    """A rulebase bug surfaced at evaluation time (floundering negation,
    malformed builtin call, spawn inside a guard)."""


@dataclass
class Diagnostics:
    depth_exhausted: int = 0
    loops_pruned: int = 0
    unknown_predicates: list[str] = field(default_factory=list)

    def warn_unknown(self, predicate: str):
        self.unknown_predicates.append(predicate)


@dataclass(frozen=True)
class Effect:
    agent: Term
    verb: str
    args: tuple[Term, ...] = ()


_COMPARISONS = {
    "less": lambda a, b: a < b,
    "lesseq": lambda a, b: a <= b,
    "greater": lambda a, b: a > b,
    "greatereq": lambda a, b: a >= b,
}

BUILTINS = frozenset(
    {"not", "equal", "not_equal", "spawn", "derive", "fail", "true"} | set(_COMPARISONS)
)


def _term_to_literal(t: Term) -> Literal:
    if isinstance(t, Compound):
        return Literal(t.functor, t.args)
    if isinstance(t, Atom):
        return Literal(t.name)
    raise EvaluationError(f"cannot call {t!r} as a goal")


class Solver:
    def __init__(
        self,
        rb: Rulebase,
        depth_limit: int = DEFAULT_DEPTH_LIMIT,
        diagnostics: Optional[Diagnostics] = None,
        effects: Optional[list[Effect]] = None,
    ):
        if depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")
        self.rb = rb
        self.depth_limit = depth_limit
        self.diagnostics = diagnostics if diagnostics is not None else Diagnostics()
        self.effects = effects
        self._counter = itertools.count()

    # -- goal resolution ------------------------------------------------

    def solve_literal(
        self, lit: Literal, bindings: Bindings, depth: int, ancestors: tuple
    ) -> Iterator[Bindings]:
        clauses = self.rb.clauses_for(lit.predicate)
        if clauses:
            yield from self._solve_user(lit, clauses, bindings, depth, ancestors)
        elif lit.predicate in BUILTINS:
            for b in self._solve_builtin(lit, bindings, depth, ancestors):
                yield from self._solve_guard(lit.guard, b, depth, ancestors)
        else:
            self.diagnostics.warn_unknown(lit.predicate)

    def _solve_user(self, lit, clauses, bindings, depth, ancestors):
        goal_key = (lit.predicate, tuple(resolve(a, bindings) for a in lit.args))
        if goal_key in ancestors:
            self.diagnostics.loops_pruned += 1
            return
        if depth >= self.depth_limit:
            self.diagnostics.depth_exhausted += 1
            return
        ancestors = ancestors + (goal_key,)
        for clause in clauses:
            rc = _Renamer(self._counter).clause(clause)
            if len(rc.head.args) != len(lit.args):
                continue
            b = bindings
            for x, y in zip(lit.args, rc.head.args):
                b = unify(x, y, b)
                if b is None:
                    break
            if b is None:
                continue
            # the caller-side guard runs right after head unification and
            # before the clause body; a failing guard rejects this clause
            # choice without leaking bindings
            cut = [False]
            for bg in self._solve_guard(lit.guard, b, depth, ancestors):
                yield from self._solve_seq(rc.body, bg, depth + 1, ancestors, cut)
                if cut[0]:
                    break
            if cut[0]:
                return

    def _solve_seq(self, literals, bindings, depth, ancestors, cutbox):
        if not literals:
            yield bindings
            return
        lit, rest = literals[0], literals[1:]
        if lit.predicate == "!" and not lit.args:
            yield from self._solve_seq(rest, bindings, depth, ancestors, cutbox)
            cutbox[0] = True
            return
        for b in self.solve_literal(lit, bindings, depth, ancestors):
            yield from self._solve_seq(rest, b, depth, ancestors, cutbox)
            if cutbox[0]:
                return

    def _solve_guard(self, guard, bindings, depth, ancestors):
        if not guard:
            yield bindings
            return
        for g in guard:
            if g.predicate == "spawn":
                raise EvaluationError("spawn is not allowed inside a guard")
        cut = [False]
        yield from self._solve_seq(tuple(guard), bindings, depth, ancestors, cut)

    # -- builtins --------------------------------------------------------

    def _solve_builtin(self, lit, bindings, depth, ancestors):
        pred = lit.predicate
        args = tuple(resolve(a, bindings) for a in lit.args)
        if pred == "true" and not args:
            yield bindings
        elif pred == "fail" and not args:
            return
        elif pred == "not":
            if len(args) != 1:
                raise EvaluationError("not/1 takes exactly one argument")
            unbound = free_vars(args[0])
            if unbound:
                raise EvaluationError(
                    "not/1 called on a non-ground goal; unbound variables: "
                    + ", ".join(sorted(unbound))
                )
            if not self._provable(_term_to_literal(args[0]), bindings, depth, ancestors):
                yield bindings
        elif pred == "derive":
            if len(args) != 1:
                raise EvaluationError("derive/1 takes exactly one argument")
            yield from self.solve_literal(_term_to_literal(args[0]), bindings, depth, ancestors)
        elif pred == "equal":
            if len(lit.args) != 2:
                raise EvaluationError("equal/2 takes exactly two arguments")
            b = unify(lit.args[0], lit.args[1], bindings)
            if b is not None:
                yield b
        elif pred == "not_equal":
            if len(args) != 2:
                raise EvaluationError("not_equal/2 takes exactly two arguments")
            if unify(args[0], args[1], {}) is None:
                yield bindings
        elif pred in _COMPARISONS:
            if len(args) != 2:
                raise EvaluationError(f"{pred}/2 takes exactly two arguments")
            a, b = args
            if isinstance(a, Num) and isinstance(b, Num):
                if _COMPARISONS[pred](a.value, b.value):
                    yield bindings
        elif pred == "spawn":
            yield from self._spawn(args, bindings)
        else:  # pragma: no cover - BUILTINS and this dispatch stay in sync
            raise EvaluationError(f"unhandled builtin {pred}")

    def _provable(self, goal, bindings, depth, ancestors) -> bool:
        # negation must not leak effects from its failed proof attempts
        saved, self.effects = self.effects, None
        try:
            for _ in self.solve_literal(goal, bindings, depth, ancestors):
                return True
            return False
        finally:
            self.effects = saved

    def _spawn(self, args, bindings):
        if len(args) not in (3, 4):
            raise EvaluationError("spawn takes 3 or 4 arguments")
        verb = args[2]
        if not isinstance(verb, Atom):
            raise EvaluationError(f"spawn verb must be a symbol, got {verb!r}")
        payload: tuple[Term, ...] = ()
        if len(args) == 4:
            pack = args[3]
            if not isinstance(pack, Compound):
                raise EvaluationError("spawn argument pack must be a compound term")
            payload = pack.args
        if self.effects is not None:
            self.effects.append(Effect(agent=args[0], verb=verb.name, args=payload))
        yield bindings


# -- public operations ----------------------------------------------------

def solve(
    goal: Literal,
    rb: Rulebase,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    diagnostics: Optional[Diagnostics] = None,
) -> Iterator[Bindings]:
    """Lazily yield solutions for goal, projected onto the goal's variables."""
    solver = Solver(rb, depth_limit, diagnostics)
    names = sorted(literal_free_vars(goal))
    for b in solver.solve_literal(goal, {}, 0, ()):
        yield {n: resolve(Var(n), b) for n in names}


def naf(goal: Literal, rb: Rulebase, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> bool:
    """Builtin negation as failure: True iff goal has no proof.

    The goal must be ground; a free variable signals a rulebase bug."""
    unbound = literal_free_vars(goal)
    if unbound:
        raise EvaluationError(
            "not/1 called on a non-ground goal; unbound variables: "
            + ", ".join(sorted(unbound))
        )
    return next(solve(goal, rb, depth_limit), None) is None


def dispatch(
    verb: str,
    payload: SlotMap,
    rb: Rulebase,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    diagnostics: Optional[Diagnostics] = None,
) -> list[Effect]:
    """Deliver message (verb, payload) to every `rcvMult` entry point.

    A clause participates when its body starts with
    `rcvMult(X, P, F, verb, Pattern) [Guard]`; X, P and F are bound to
    fresh constants, the pattern must open-world match the payload and the
    guard must succeed.  The remainder of the body then runs and each
    successful `spawn` appends one Effect, in firing order.
    """
    if not isinstance(payload, SlotMap):
        raise EvaluationError("dispatch payload must be a slot map")
    if not is_ground(payload):
        raise EvaluationError("dispatch payload must be ground")
    effects: list[Effect] = []
    solver = Solver(rb, depth_limit, diagnostics, effects)
    fresh = itertools.count()
    for clause in rb.clauses:
        if not clause.body:
            continue
        entry = clause.body[0]
        if entry.predicate != "rcvMult" or len(entry.args) != 5:
            continue
        rc = _Renamer(solver._counter).clause(clause)
        entry = rc.body[0]
        b = unify(entry.args[3], Atom(verb), {})
        if b is None:
            continue
        n = next(fresh)
        for i, prefix in enumerate(("conversation", "protocol", "sender")):
            b = unify(entry.args[i], Atom(f"{prefix}_{n}"), b)
            if b is None:
                break
        if b is None:
            continue
        b = unify(entry.args[4], payload, b)
        if b is None:
            continue
        accepted = next(solver._solve_guard(entry.guard, b, 0, ()), None)
        if accepted is None:
            continue
        cut = [False]
        for _ in solver._solve_seq(rc.body[1:], accepted, 0, (), cut):
            pass
    return effects
