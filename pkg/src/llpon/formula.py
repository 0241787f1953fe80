"""Syntax of the first-order arithmetic fragment: AST, parser and printer.

Grammar (``~`` binds tightest, ``->`` is right associative, a quantifier
body extends as far right as possible)::

    formula := impl
    impl    := disj ["->" impl]
    disj    := conj {"\\/" conj}
    conj    := neg {"/\\" neg}
    neg     := "~" neg | atom
    atom    := "false" | term ("=" | "<") term | quant | "(" formula ")"
    quant   := ("forall" | "exists") ident ["<" term] "." formula
    term    := numeral | ident | ident "(" term ")" | term ("+" | "*") term

Parenthesised terms such as ``(x+1)*2`` are accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import FormulaSyntaxError, UnknownSymbol

# -- terms --------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: str
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Num, Var, App, Add, Mul]

# -- formulas -----------------------------------------------------------------


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    bound: Optional[Term]
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    bound: Optional[Term]
    body: "Formula"


Formula = Union[Falsum, Eq, Lt, And, Or, Implies, Not, Forall, Exists]
Quantifier = (Forall, Exists)

# -- traversal helpers ------------------------------------------------------


def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Num):
        return set()
    if isinstance(t, App):
        return term_vars(t.arg)
    return term_vars(t.left) | term_vars(t.right)


def free_vars(phi: Formula) -> set:
    if isinstance(phi, Falsum):
        return set()
    if isinstance(phi, (Eq, Lt)):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return free_vars(phi.left) | free_vars(phi.right)
    inner = free_vars(phi.body) - {phi.var}
    if phi.bound is not None:
        inner |= term_vars(phi.bound)
    return inner


def term_symbols(t: Term) -> set:
    if isinstance(t, App):
        return {t.fn} | term_symbols(t.arg)
    if isinstance(t, (Add, Mul)):
        return term_symbols(t.left) | term_symbols(t.right)
    return set()


def symbols(phi: Formula) -> set:
    if isinstance(phi, Falsum):
        return set()
    if isinstance(phi, (Eq, Lt)):
        return term_symbols(phi.left) | term_symbols(phi.right)
    if isinstance(phi, Not):
        return symbols(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return symbols(phi.left) | symbols(phi.right)
    out = symbols(phi.body)
    if phi.bound is not None:
        out |= term_symbols(phi.bound)
    return out


def subst_term(t: Term, name: str, value: int) -> Term:
    if isinstance(t, Var):
        return Num(value) if t.name == name else t
    if isinstance(t, Num):
        return t
    if isinstance(t, App):
        return App(t.fn, subst_term(t.arg, name, value))
    return type(t)(subst_term(t.left, name, value), subst_term(t.right, name, value))


def subst(phi: Formula, name: str, value: int) -> Formula:
    """Replace free occurrences of ``name`` by the numeral ``value``."""
    if isinstance(phi, Falsum):
        return phi
    if isinstance(phi, (Eq, Lt)):
        return type(phi)(subst_term(phi.left, name, value), subst_term(phi.right, name, value))
    if isinstance(phi, Not):
        return Not(subst(phi.body, name, value))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(subst(phi.left, name, value), subst(phi.right, name, value))
    bound = None if phi.bound is None else subst_term(phi.bound, name, value)
    body = phi.body if phi.var == name else subst(phi.body, name, value)
    return type(phi)(phi.var, bound, body)


def disjuncts(phi: Formula) -> list:
    if isinstance(phi, Or):
        return disjuncts(phi.left) + disjuncts(phi.right)
    return [phi]


# -- printing -----------------------------------------------------------------


def format_term(t: Term, prec: int = 0) -> str:
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, App):
        return f"{t.fn}({format_term(t.arg)})"
    if isinstance(t, Add):
        text = f"{format_term(t.left, 1)}+{format_term(t.right, 2)}"
        return f"({text})" if prec > 1 else text
    text = f"{format_term(t.left, 2)}*{format_term(t.right, 3)}"
    return f"({text})" if prec > 2 else text


_LEVEL = {Implies: 1, Or: 2, And: 3, Not: 4}


def format_formula(phi: Formula, prec: int = 0) -> str:
    """Canonical text; ``parse_formula(format_formula(phi)) == phi``."""
    if isinstance(phi, Falsum):
        return "false"
    if isinstance(phi, Eq):
        return f"{format_term(phi.left)} = {format_term(phi.right)}"
    if isinstance(phi, Lt):
        return f"{format_term(phi.left)} < {format_term(phi.right)}"
    if isinstance(phi, Quantifier):
        word = "forall" if isinstance(phi, Forall) else "exists"
        bound = "" if phi.bound is None else f"<{format_term(phi.bound)}"
        text = f"{word} {phi.var}{bound}. {format_formula(phi.body)}"
        return f"({text})" if prec > 0 else text
    if isinstance(phi, Not):
        inner = phi.body
        if isinstance(inner, (Eq, Lt, And, Or, Implies)):
            return f"~({format_formula(inner)})"
        return f"~{format_formula(inner, 4)}"
    level = _LEVEL[type(phi)]
    if isinstance(phi, Implies):
        text = f"{format_formula(phi.left, 2)} -> {format_formula(phi.right, 1)}"
    else:
        op = " \\/ " if isinstance(phi, Or) else " /\\ "
        text = f"{format_formula(phi.left, level)}{op}{format_formula(phi.right, level + 1)}"
    return f"({text})" if prec > level else text


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(->|\\/|/\\|[~=<+*().]))")
_KEYWORDS = {"forall", "exists", "false"}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            word = m.group(2)
            tokens.append(("kw" if word in _KEYWORDS else "id", word, start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, value) -> bool:
        kind, v, _ = self.peek()
        return kind in ("op", "kw") and v == value

    def expect(self, value):
        kind, v, pos = self.peek()
        if kind not in ("op", "kw") or v != value:
            shown = "end of input" if kind == "eof" else repr(v)
            raise FormulaSyntaxError(f"expected {value!r}, found {shown}", pos)
        self.i += 1

    def error(self, what: str):
        kind, v, pos = self.peek()
        shown = "end of input" if kind == "eof" else repr(v)
        raise FormulaSyntaxError(f"expected {what}, found {shown}", pos)

    # formulas
    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.at("\\/"):
            self.i += 1
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.neg()
        while self.at("/\\"):
            self.i += 1
            out = And(out, self.neg())
        return out

    def neg(self) -> Formula:
        if self.at("~"):
            self.i += 1
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        if self.at("false"):
            self.i += 1
            return Falsum()
        if self.at("forall") or self.at("exists"):
            return self.quant()
        if self.at("("):
            saved = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                if not (self.at("=") or self.at("<") or self.at("+") or self.at("*")):
                    return inner
            except FormulaSyntaxError:
                pass
            self.i = saved
        left = self.term()
        if self.at("="):
            self.i += 1
            return Eq(left, self.term())
        if self.at("<"):
            self.i += 1
            return Lt(left, self.term())
        self.error("'=' or '<'")

    def quant(self) -> Formula:
        kind = Forall if self.at("forall") else Exists
        self.i += 1
        tk, name, _ = self.peek()
        if tk != "id":
            self.error("a variable name")
        self.i += 1
        bound = None
        if self.at("<"):
            self.i += 1
            bound = self.term()
        self.expect(".")
        return kind(name, bound, self.formula())

    # terms
    def term(self) -> Term:
        out = self.product()
        while self.at("+"):
            self.i += 1
            out = Add(out, self.product())
        return out

    def product(self) -> Term:
        out = self.primary()
        while self.at("*"):
            self.i += 1
            out = Mul(out, self.primary())
        return out

    def primary(self) -> Term:
        kind, v, _ = self.peek()
        if kind == "num":
            self.i += 1
            return Num(v)
        if kind == "id":
            self.i += 1
            if self.at("("):
                self.i += 1
                arg = self.term()
                self.expect(")")
                return App(v, arg)
            return Var(v)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.error("a term")


def parse_formula(text: str, known: Optional[Iterable[str]] = None) -> Formula:
    """Parse ``text``; with ``known`` given, reject unregistered function symbols."""
    p = _Parser(text)
    phi = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"unexpected {v!r}", pos)
    if known is not None:
        missing = symbols(phi) - set(known)
        if missing:
            raise UnknownSymbol(f"unregistered function symbol(s): {', '.join(sorted(missing))}")
    return phi
