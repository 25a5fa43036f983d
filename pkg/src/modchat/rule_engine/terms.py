"""Syntax tree of the rule language: terms, literals, clauses, rulebases.

Unification is sound (occurs check is always on) and slot maps unify
open-world: only the keys both sides share are compared, extra keys on
either side are ignored.  That keeps unification symmetric while letting a
two-slot pattern accept a five-slot message.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

NUM_TOLERANCE = 1e-9

WILDCARD = "_"


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self):
        return f"Atom({self.name})"


@dataclass(frozen=True)
class Num:
    value: Union[int, float]

    def __repr__(self):
        return f"Num({self.value})"


@dataclass(frozen=True)
class Text:
    value: str

    def __repr__(self):
        return f"Text({self.value!r})"


@dataclass(frozen=True)
class Var:
    name: str

    @property
    def is_wildcard(self) -> bool:
        return self.name == WILDCARD

    def __repr__(self):
        return f"Var({self.name})"


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple["Term", ...]

    def __repr__(self):
        return f"Compound({self.functor}, {list(self.args)})"


@dataclass(frozen=True)
class SlotMap:
    # insertion order is preserved; keys are unique (parser enforces it)
    slots: tuple[tuple[str, "Term"], ...]

    def keys(self):
        return [k for k, _ in self.slots]

    def get(self, key: str) -> Optional["Term"]:
        for k, v in self.slots:
            if k == key:
                return v
        return None

    def __repr__(self):
        return "SlotMap(" + ", ".join(f"{k}->{v!r}" for k, v in self.slots) + ")"


Term = Union[Atom, Num, Text, Var, Compound, SlotMap]

Bindings = dict  # variable name -> Term


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: tuple[Term, ...] = ()
    guard: tuple["Literal", ...] = ()


@dataclass(frozen=True)
class Clause:
    head: Literal
    body: tuple[Literal, ...] = ()

    @property
    def is_fact(self) -> bool:
        return not self.body


@dataclass(frozen=True)
class Rulebase:
    clauses: tuple[Clause, ...]
    name: str = ""

    def clauses_for(self, predicate: str) -> list[Clause]:
        return [c for c in self.clauses if c.head.predicate == predicate]

    def predicates(self) -> list[str]:
        seen: list[str] = []
        for c in self.clauses:
            if c.head.predicate not in seen:
                seen.append(c.head.predicate)
        return seen


def numbers_equal(a: Union[int, float], b: Union[int, float]) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    return abs(a - b) <= NUM_TOLERANCE


def walk(t: Term, bindings: Bindings) -> Term:
    """Chase variable bindings at the top level only."""
    while isinstance(t, Var) and not t.is_wildcard and t.name in bindings:
        t = bindings[t.name]
    return t


def resolve(t: Term, bindings: Bindings) -> Term:
    """Apply bindings everywhere.  The result is a fixed point: resolving
    twice equals resolving once."""
    t = walk(t, bindings)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(resolve(a, bindings) for a in t.args))
    if isinstance(t, SlotMap):
        return SlotMap(tuple((k, resolve(v, bindings)) for k, v in t.slots))
    return t


def occurs(name: str, t: Term, bindings: Bindings) -> bool:
    t = walk(t, bindings)
    if isinstance(t, Var):
        return t.name == name
    if isinstance(t, Compound):
        return any(occurs(name, a, bindings) for a in t.args)
    if isinstance(t, SlotMap):
        return any(occurs(name, v, bindings) for _, v in t.slots)
    return False


def unify(a: Term, b: Term, bindings: Optional[Bindings] = None) -> Optional[Bindings]:
    """Extend `bindings` so that a and b become equal, or return None.

    Failure is a value, not an exception.  The wildcard `_` matches
    anything and never binds.
    """
    if bindings is None:
        bindings = {}
    a = walk(a, bindings)
    b = walk(b, bindings)
    if isinstance(a, Var) and a.is_wildcard:
        return bindings
    if isinstance(b, Var) and b.is_wildcard:
        return bindings
    if isinstance(a, Var) and isinstance(b, Var) and a.name == b.name:
        return bindings
    if isinstance(a, Var):
        if occurs(a.name, b, bindings):
            return None
        out = dict(bindings)
        out[a.name] = b
        return out
    if isinstance(b, Var):
        if occurs(b.name, a, bindings):
            return None
        out = dict(bindings)
        out[b.name] = a
        return out
    if isinstance(a, Atom) and isinstance(b, Atom):
        return bindings if a.name == b.name else None
    if isinstance(a, Num) and isinstance(b, Num):
        return bindings if numbers_equal(a.value, b.value) else None
    if isinstance(a, Text) and isinstance(b, Text):
        return bindings if a.value == b.value else None
    if isinstance(a, Compound) and isinstance(b, Compound):
        if a.functor != b.functor or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            bindings = unify(x, y, bindings)
            if bindings is None:
                return None
        return bindings
    if isinstance(a, SlotMap) and isinstance(b, SlotMap):
        other = dict(b.slots)
        for k, v in a.slots:
            if k in other:
                bindings = unify(v, other[k], bindings)
                if bindings is None:
                    return None
        return bindings
    return None


def is_ground(t: Term, bindings: Optional[Bindings] = None) -> bool:
    if bindings:
        t = resolve(t, bindings)
    if isinstance(t, Var):  # wildcards are variables too
        return False
    if isinstance(t, Compound):
        return all(is_ground(a) for a in t.args)
    if isinstance(t, SlotMap):
        return all(is_ground(v) for _, v in t.slots)
    return True


def free_vars(t: Term) -> set[str]:
    """Variable names occurring in t (the wildcard does not count)."""
    out: set[str] = set()

    def go(x: Term):
        if isinstance(x, Var):
            if not x.is_wildcard:
                out.add(x.name)
        elif isinstance(x, Compound):
            for a in x.args:
                go(a)
        elif isinstance(x, SlotMap):
            for _, v in x.slots:
                go(v)

    go(t)
    return out


def literal_free_vars(lit: Literal) -> set[str]:
    out: set[str] = set()
    for a in lit.args:
        out |= free_vars(a)
    for g in lit.guard:
        out |= literal_free_vars(g)
    return out


class _Renamer:
    """Gives each clause use fresh variables.  Wildcards stay wildcards."""

    def __init__(self, counter: Iterator[int]):
        self._suffix = next(counter)
        self._seen: dict[str, Var] = {}

    def term(self, t: Term) -> Term:
        if isinstance(t, Var):
            if t.is_wildcard:
                return t
            if t.name not in self._seen:
                self._seen[t.name] = Var(f"{t.name}~{self._suffix}")
            return self._seen[t.name]
        if isinstance(t, Compound):
            return Compound(t.functor, tuple(self.term(a) for a in t.args))
        if isinstance(t, SlotMap):
            return SlotMap(tuple((k, self.term(v)) for k, v in t.slots))
        return t

    def literal(self, lit: Literal) -> Literal:
        return Literal(
            lit.predicate,
            tuple(self.term(a) for a in lit.args),
            tuple(self.literal(g) for g in lit.guard),
        )

    def clause(self, c: Clause) -> Clause:
        return Clause(self.literal(c.head), tuple(self.literal(b) for b in c.body))


# --- pretty printing (the inverse of the parser; round-trip tested) ---

def format_term(t: Term) -> str:
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, Num):
        return repr(t.value)
    if isinstance(t, Text):
        return '"' + t.value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Compound):
        return f"{t.functor}({', '.join(format_term(a) for a in t.args)})"
    if isinstance(t, SlotMap):
        return "{" + ", ".join(f"{k} -> {format_term(v)}" for k, v in t.slots) + "}"
    raise TypeError(f"not a term: {t!r}")


def format_literal(lit: Literal) -> str:
    if lit.predicate == "!" and not lit.args:
        s = "!"
    else:
        s = f"{lit.predicate}({', '.join(format_term(a) for a in lit.args)})"
    if lit.guard:
        s += " [" + ", ".join(format_literal(g) for g in lit.guard) + "]"
    return s


def format_clause(c: Clause) -> str:
    head = format_literal(c.head)
    if c.is_fact:
        return head + "."
    body = ",\n    ".join(format_literal(b) for b in c.body)
    return f"{head} :-\n    {body}."


def format_rulebase(rb: Rulebase) -> str:
    return "\n\n".join(format_clause(c) for c in rb.clauses) + ("\n" if rb.clauses else "")
