"""Recursive-descent parser for propositions, gambles and the four
inequality languages.

Grammar (whitespace insensitive)::

    formula := disj ('=>' formula)?
    disj    := conj ('|' conj)*
    conj    := lit ('&' lit)*
    lit     := '!' lit | '(' formula ')' | atom
    atom    := sum REL sum                 REL in >= > <= < =
    sum     := ['-'|'+'] item (('+'|'-') item)*
    item    := rat ['*' head] | head

where ``head`` is ``E(gamble)`` in E, ``L(prop)`` in QU, a unary
proposition in G and a variable in F.  Inside ``E(...)`` and ``L(...)``
propositions use the full grammar; at the top level of a G atom they must
be unary (an identifier, ``true``/``false``, ``!x`` or parenthesized) so
that ``&``, ``|`` and ``=>`` keep their formula-level meaning.  Constants
in an atom are moved to the right-hand side, except in G where a bare
rational on either side stands for that multiple of ``true`` and stays a
gamble term.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import LanguageError, ParseError
from ..syntax import (FALSE, LANG_E, LANG_F, LANG_G, LANG_QU, LANGUAGES, TRUE, And, Implies, Ineq, Not,
                      Or, SynGamble, Var)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)"
    r"|(?P<id>[a-z][a-zA-Z0-9_]*)"
    r"|(?P<head>[EL])(?=\s*\()"
    r"|(?P<op>>=|<=|=>|[<>=!&|+\-*()]))"
)
_RELS = (">=", "<=", ">", "<", "=")
_ALIASES = {"e": LANG_E, "qu": LANG_QU, "l": LANG_QU, "g": LANG_G, "f": LANG_F}


def language(name: str) -> str:
    lang = _ALIASES.get(str(name).lower())
    if lang is None:
        raise LanguageError(f"unknown language {name!r}; expected one of {', '.join(LANGUAGES)}")
    return lang


def tokenize(text: str):
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            at = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[at]!r}", at, text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, lang: str):
        self.text = text
        self.lang = lang
        self.toks = tokenize(text)
        self.i = 0
        self.furthest = None

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str) -> bool:
        kind, text, _ = self.peek()
        return kind in ("op", "head") and text == value

    def take(self, value: str):
        if not self.at(value):
            self.fail(f"expected {value!r}")
        self.i += 1

    def number(self) -> Fraction:
        _, text, pos = self.peek()
        try:
            q = Fraction(text)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}", pos, self.text) from None
        self.i += 1
        return q

    def fail(self, message: str):
        kind, text, pos = self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"{message}, found {found}", pos, self.text)

    def attempt(self, fn):
        """Run ``fn`` and rewind on failure, remembering the deepest error."""
        start = self.i
        try:
            return fn()
        except ParseError as exc:
            if self.furthest is None or exc.position > self.furthest.position:
                self.furthest = exc
            self.i = start
            return None

    # formulas
    def formula(self):
        left = self.disj()
        if self.at("=>"):
            self.i += 1
            return Implies(left, self.formula())
        return left

    def disj(self):
        args = [self.conj()]
        while self.at("|"):
            self.i += 1
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self):
        args = [self.lit()]
        while self.at("&"):
            self.i += 1
            args.append(self.lit())
        return args[0] if len(args) == 1 else And(tuple(args))

    def lit(self):
        if self.at("!"):
            self.i += 1
            return Not(self.lit())
        if self.at("("):
            self.furthest = None
            node = self.attempt(self.atom) if self.lang == LANG_G else None
            if node is not None:
                return node

            def grouped():
                self.take("(")
                inner = self.formula()
                self.take(")")
                return inner

            node = self.attempt(grouped)
            if node is None:
                raise self.furthest
            return node
        return self.atom()

    def atom(self):
        lterms, lconst = self.sum()
        kind, text, _ = self.peek()
        if not (kind == "op" and text in _RELS):
            self.fail("expected a relation (>=, >, <=, <, =)")
        self.i += 1
        rterms, rconst = self.sum()
        terms = lterms + [(-c, t) for c, t in rterms]
        if self.lang == LANG_G:
            if lconst:
                terms.append((lconst, TRUE))
            rhs = rconst
        else:
            rhs = rconst - lconst
        if not terms:
            self.fail("an inequality needs at least one term")
        return Ineq(tuple(terms), text, rhs, self.lang)

    def sum(self):
        terms, const = [], Fraction(0)
        sign = Fraction(1)
        if self.at("-") or self.at("+"):
            sign = Fraction(-1) if self.at("-") else sign
            self.i += 1
        while True:
            kind = self.peek()[0]
            if kind == "num":
                q = sign * self.number()
                if self.at("*"):
                    self.i += 1
                    terms.append((q, self.head()))
                else:
                    const += q
            else:
                terms.append((sign, self.head()))
            if self.at("+") or self.at("-"):
                sign = Fraction(-1) if self.at("-") else Fraction(1)
                self.i += 1
                continue
            return terms, const

    def head(self):
        kind, text, pos = self.peek()
        if self.lang == LANG_E:
            if kind == "head" and text == "L":
                raise LanguageError(f"L(...) is a likelihood term, not allowed in language E (position {pos})")
            self.take("E")
            self.take("(")
            g = self.gamble()
            self.take(")")
            return g
        if self.lang == LANG_QU:
            if kind == "head" and text == "E":
                raise LanguageError(f"E(...) is an expectation term, not allowed in language QU (position {pos})")
            self.take("L")
            self.take("(")
            p = self.prop()
            self.take(")")
            return p
        if kind == "head":
            raise LanguageError(f"{text}(...) terms are not allowed in language {self.lang} (position {pos})")
        if self.lang == LANG_G:
            return self.unary()
        if kind == "id" and text not in ("true", "false"):
            self.i += 1
            return text
        self.fail("expected a function variable")

    # gambles and propositions
    def gamble(self):
        terms = []
        sign = Fraction(1)
        if self.at("-") or self.at("+"):
            sign = Fraction(-1) if self.at("-") else sign
            self.i += 1
        while True:
            kind = self.peek()[0]
            if kind == "num":
                q = sign * self.number()
                if self.at("*"):
                    self.i += 1
                    terms.append((q, self.prop()))
                else:
                    terms.append((q, TRUE))
            else:
                terms.append((sign, self.prop()))
            if self.at("+") or self.at("-"):
                sign = Fraction(-1) if self.at("-") else Fraction(1)
                self.i += 1
                continue
            return SynGamble(tuple(terms))

    def prop(self):
        left = self.prop_or()
        if self.at("=>"):
            self.i += 1
            return Implies(left, self.prop())
        return left

    def prop_or(self):
        args = [self.prop_and()]
        while self.at("|"):
            self.i += 1
            args.append(self.prop_and())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def prop_and(self):
        args = [self.unary()]
        while self.at("&"):
            self.i += 1
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self):
        kind, text, _ = self.peek()
        if self.at("!"):
            self.i += 1
            return Not(self.unary())
        if self.at("("):
            self.i += 1
            p = self.prop()
            self.take(")")
            return p
        if kind == "id":
            self.i += 1
            if text == "true":
                return TRUE
            if text == "false":
                return FALSE
            return Var(text)
        self.fail("expected a proposition")

    def finish(self, node):
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return node


def parse(text: str, lang: str = LANG_E):
    p = _Parser(text, language(lang))
    if p.peek()[0] == "end":
        raise ParseError("empty formula", 0, text)
    return p.finish(p.formula())


def parse_prop(text: str):
    p = _Parser(text, LANG_E)
    return p.finish(p.prop())


def parse_gamble(text: str) -> SynGamble:
    p = _Parser(text, LANG_E)
    return p.finish(p.gamble())


def parse_corpus(text: str, lang: str = LANG_E) -> list:
    """One formula per line; blank lines and ``#`` comments are skipped."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse(line, lang))
    return out
