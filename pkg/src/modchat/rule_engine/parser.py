"""Parser for the rule language.

Grammar (one clause per '.'):

    clause  := literal ( ":-" literal ("," literal)* )? "."
    literal := symbol "(" termlist? ")" guard?  |  "!"
    guard   := "[" literal ("," literal)* "]"
    term    := symbol | number | quoted-string | VARIABLE
             | symbol "(" termlist ")" | "{" slot ("," slot)* "}"
    slot    := symbol "->" term

'%' starts a comment running to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .terms import Atom, Clause, Compound, Literal, Num, Rulebase, SlotMap, Term, Text, Var


class RuleSyntaxError(Exception):
    def __init__(self, message: str, line: int, column: int, token: str = ""):
        self.line = line
        self.column = column
        self.token = token
        at = f" near {token!r}" if token else ""
        super().__init__(f"{message} at line {line}, column {column}{at}")


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    line: int
    column: int


_PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    "{": "LBRACE",
    "}": "RBRACE",
    "[": "LBRACKET",
    "]": "RBRACKET",
    ",": "COMMA",
    ".": "DOT",
    "!": "BANG",
}


def _tokenize(source: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def err(msg, tok=""):
        raise RuleSyntaxError(msg, line, col, tok)

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == ":":
            if source[i : i + 2] == ":-":
                toks.append(_Tok("NECK", ":-", start_line, start_col))
                i += 2
                col += 2
                continue
            err("unexpected character", ":")
        if ch == "-":
            if source[i : i + 2] == "->":
                toks.append(_Tok("ARROW", "->", start_line, start_col))
                i += 2
                col += 2
                continue
            if i + 1 < n and source[i + 1].isdigit():
                j = i + 1
                while j < n and source[j].isdigit():
                    j += 1
                if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                    j += 1
                    while j < n and source[j].isdigit():
                        j += 1
                toks.append(_Tok("NUMBER", source[i:j], start_line, start_col))
                col += j - i
                i = j
                continue
            err("unexpected character", "-")
        if ch in _PUNCT:
            # '.' may also begin a decimal fraction, but numbers are
            # tokenized from their leading digit, so a bare '.' is DOT.
            toks.append(_Tok(_PUNCT[ch], ch, start_line, start_col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n and source[j] != '"':
                if source[j] == "\\" and j + 1 < n:
                    nxt = source[j + 1]
                    if nxt == '"':
                        buf.append('"')
                    elif nxt == "\\":
                        buf.append("\\")
                    elif nxt == "n":
                        buf.append("\n")
                    else:
                        buf.append(nxt)
                    j += 2
                    continue
                if source[j] == "\n":
                    err("unterminated string")
                buf.append(source[j])
                j += 1
            if j >= n:
                err("unterminated string")
            toks.append(_Tok("STRING", "".join(buf), start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            toks.append(_Tok("NUMBER", source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            kind = "VAR" if (ch == "_" or ch.isupper()) else "SYMBOL"
            toks.append(_Tok(kind, word, start_line, start_col))
            col += j - i
            i = j
            continue
        err("unexpected character", ch)
    toks.append(_Tok("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {kind}", t)
        return self.next()

    def fail(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise RuleSyntaxError(msg, tok.line, tok.column, tok.value)

    def rulebase(self, name: str) -> Rulebase:
        clauses = []
        while self.peek().kind != "EOF":
            clauses.append(self.clause())
        return Rulebase(tuple(clauses), name=name)

    def clause(self) -> Clause:
        head = self.literal()
        if head.guard:
            self.fail("guard not allowed on a clause head")
        if head.predicate == "!":
            self.fail("cut cannot be a clause head")
        body: list[Literal] = []
        if self.peek().kind == "NECK":
            self.next()
            body.append(self.literal())
            while self.peek().kind == "COMMA":
                self.next()
                body.append(self.literal())
        self.expect("DOT")
        return Clause(head, tuple(body))

    def literal(self, in_guard: bool = False) -> Literal:
        t = self.peek()
        if t.kind == "BANG":
            self.next()
            return Literal("!")
        sym = self.expect("SYMBOL")
        self.expect("LPAREN")
        args: list[Term] = []
        if self.peek().kind != "RPAREN":
            args.append(self.term())
            while self.peek().kind == "COMMA":
                self.next()
                args.append(self.term())
        self.expect("RPAREN")
        guard: list[Literal] = []
        if self.peek().kind == "LBRACKET":
            if in_guard:
                self.fail("guards cannot be nested")
            self.next()
            guard.append(self.literal(in_guard=True))
            while self.peek().kind == "COMMA":
                self.next()
                guard.append(self.literal(in_guard=True))
            self.expect("RBRACKET")
        return Literal(sym.value, tuple(args), tuple(guard))

    def term(self) -> Term:
        t = self.peek()
        if t.kind == "SYMBOL":
            self.next()
            if self.peek().kind == "LPAREN":
                self.next()
                args = []
                if self.peek().kind != "RPAREN":
                    args.append(self.term())
                    while self.peek().kind == "COMMA":
                        self.next()
                        args.append(self.term())
                self.expect("RPAREN")
                return Compound(t.value, tuple(args))
            return Atom(t.value)
        if t.kind == "VAR":
            self.next()
            return Var(t.value)
        if t.kind == "NUMBER":
            self.next()
            if "." in t.value:
                return Num(float(t.value))
            return Num(int(t.value))
        if t.kind == "STRING":
            self.next()
            return Text(t.value)
        if t.kind == "LBRACE":
            self.next()
            slots: list[tuple[str, Term]] = []
            seen: set[str] = set()
            while self.peek().kind != "RBRACE":
                key = self.expect("SYMBOL")
                if key.value in seen:
                    self.fail(f"duplicate slot key {key.value!r}", key)
                seen.add(key.value)
                self.expect("ARROW")
                slots.append((key.value, self.term()))
                if self.peek().kind == "COMMA":
                    self.next()
                    continue
                break
            self.expect("RBRACE")
            return SlotMap(tuple(slots))
        self.fail("expected a term", t)
        raise AssertionError("unreachable")


def parse_rulebase(source: str, name: str = "") -> Rulebase:
    """Parse source text into a Rulebase, preserving clause order."""
    return _Parser(_tokenize(source)).rulebase(name)


def parse_literal(source: str) -> Literal:
    """Parse a single literal (handy for queries)."""
    p = _Parser(_tokenize(source))
    lit = p.literal()
    if p.peek().kind not in ("EOF", "DOT"):
        p.fail("trailing input after literal")
    return lit


def parse_term(source: str) -> Term:
    p = _Parser(_tokenize(source))
    t = p.term()
    if p.peek().kind != "EOF":
        p.fail("trailing input after term")
    return t
