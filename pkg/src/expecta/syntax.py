"""Abstract syntax shared by propositional formulas, gambles and the
inequality languages, together with the canonical printer.

Boolean connectives (``Not``, ``And``, ``Or``, ``Implies``, ``Const``) are
used both inside propositional formulas and at the level of formulas built
from inequalities; ``Var`` and ``Ineq`` are the respective leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Tuple, Union

# languages of inequality formulas
LANG_E = "E"
LANG_QU = "QU"
LANG_G = "G"
LANG_F = "F"
LANGUAGES = (LANG_E, LANG_QU, LANG_G, LANG_F)

RELATIONS = (">=", ">", "<=", "<", "=")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "Node"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Implies:
    left: "Node"
    right: "Node"


TRUE = Const(True)
FALSE = Const(False)

Prop = Union[Var, Const, Not, And, Or, Implies]


@dataclass(frozen=True)
class SynGamble:
    """A syntactic gamble ``b1*phi1 + ... + bn*phin``."""

    terms: Tuple[Tuple[Fraction, Prop], ...] = ()

    def __add__(self, other: "SynGamble") -> "SynGamble":
        return SynGamble(self.terms + other.terms)

    def scaled(self, a) -> "SynGamble":
        a = Fraction(a)
        return SynGamble(tuple((a * c, p) for c, p in self.terms))

    def __neg__(self) -> "SynGamble":
        return self.scaled(-1)

    def __sub__(self, other: "SynGamble") -> "SynGamble":
        return self + (-other)


def gamble(*terms) -> SynGamble:
    """Build a syntactic gamble from ``(coef, prop)`` pairs."""
    return SynGamble(tuple((Fraction(c), p) for c, p in terms))


@dataclass(frozen=True)
class Ineq:
    """``a1*t1 + ... + ak*tk REL rhs``.

    The item type of each term depends on ``lang``: a ``SynGamble`` for
    ``E``, a propositional formula for ``QU`` and ``G``, and a variable
    name for ``F``.
    """

    terms: tuple
    rel: str
    rhs: Fraction
    lang: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        if self.lang not in LANGUAGES:
            raise ValueError(f"unknown language {self.lang!r}")

    def negated_sides(self) -> "Ineq":
        """Same relation applied to ``-lhs`` and ``-rhs``."""
        return Ineq(tuple((-c, t) for c, t in self.terms), self.rel, -self.rhs, self.lang)

    def with_rel(self, rel: str) -> "Ineq":
        return Ineq(self.terms, rel, self.rhs, self.lang)


Node = Union[Var, Const, Not, And, Or, Implies, Ineq]


def conj(*args):
    flat = []
    for a in args:
        flat.extend(a.args if isinstance(a, And) else (a,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args):
    flat = []
    for a in args:
        flat.extend(a.args if isinstance(a, Or) else (a,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def iff(a, b):
    return And((Implies(a, b), Implies(b, a)))


def map_leaves(node, fn: Callable):
    """Rebuild ``node`` with every ``Var``/``Ineq`` leaf replaced by ``fn(leaf)``."""
    if isinstance(node, (Var, Ineq)):
        return fn(node)
    if isinstance(node, Const):
        return node
    if isinstance(node, Not):
        return Not(map_leaves(node.arg, fn))
    if isinstance(node, And):
        return And(tuple(map_leaves(a, fn) for a in node.args))
    if isinstance(node, Or):
        return Or(tuple(map_leaves(a, fn) for a in node.args))
    if isinstance(node, Implies):
        return Implies(map_leaves(node.left, fn), map_leaves(node.right, fn))
    raise TypeError(f"not a syntax node: {node!r}")


def leaves(node) -> Iterator:
    if isinstance(node, (Var, Ineq)):
        yield node
    elif isinstance(node, Not):
        yield from leaves(node.arg)
    elif isinstance(node, (And, Or)):
        for a in node.args:
            yield from leaves(a)
    elif isinstance(node, Implies):
        yield from leaves(node.left)
        yield from leaves(node.right)


def prop_names(p) -> set:
    return {leaf.name for leaf in leaves(p)}


def gamble_props(g: SynGamble) -> set:
    out = set()
    for _, p in g.terms:
        out |= prop_names(p)
    return out


def ineq_items(f):
    for leaf in leaves(f):
        if isinstance(leaf, Ineq):
            for _, item in leaf.terms:
                yield leaf.lang, item


def formula_props(f) -> set:
    """Propositions mentioned anywhere inside an inequality formula."""
    out = set()
    for lang, item in ineq_items(f):
        if lang == LANG_E:
            out |= gamble_props(item)
        elif lang in (LANG_QU, LANG_G):
            out |= prop_names(item)
    return out


def formula_vars(f) -> list:
    """Function variables of an ``F`` formula, in order of first use."""
    seen = {}
    for lang, item in ineq_items(f):
        if lang == LANG_F:
            seen.setdefault(item, None)
    return list(seen)


def formula_size(f) -> int:
    """Rough symbol count, used only for logging witness-size bounds."""
    if isinstance(f, (Var, Const)):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.arg)
    if isinstance(f, (And, Or)):
        return len(f.args) - 1 + sum(formula_size(a) for a in f.args)
    if isinstance(f, Implies):
        return 1 + formula_size(f.left) + formula_size(f.right)
    n = 2
    for _, item in f.terms:
        if isinstance(item, SynGamble):
            n += 1 + sum(1 + formula_size(p) for _, p in item.terms)
        elif isinstance(item, str):
            n += 2
        else:
            n += 1 + formula_size(item)
    return n


# ---------------------------------------------------------------- printing

def fmt_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def show_prop(p) -> str:
    if isinstance(p, Var):
        return p.name
    if isinstance(p, Const):
        return "true" if p.value else "false"
    if isinstance(p, Not):
        return "!" + show_prop(p.arg)
    if isinstance(p, And):
        return "(" + " & ".join(show_prop(a) for a in p.args) + ")"
    if isinstance(p, Or):
        return "(" + " | ".join(show_prop(a) for a in p.args) + ")"
    if isinstance(p, Implies):
        return f"({show_prop(p.left)} => {show_prop(p.right)})"
    raise TypeError(f"not a propositional formula: {p!r}")


def _show_sum(pairs) -> str:
    out = []
    for i, (c, body) in enumerate(pairs):
        c = Fraction(c)
        if i == 0:
            out.append(f"{fmt_rat(c)}*{body}")
        else:
            sign = "-" if c < 0 else "+"
            out.append(f" {sign} {fmt_rat(abs(c))}*{body}")
    return "".join(out)


def show_gamble(g: SynGamble) -> str:
    if not g.terms:
        return "0*true"
    return _show_sum((c, show_prop(p)) for c, p in g.terms)


def _show_item(lang, item) -> str:
    if lang == LANG_E:
        return f"E({show_gamble(item)})"
    if lang == LANG_QU:
        return f"L({show_prop(item)})"
    if lang == LANG_G:
        return show_prop(item)
    return item


def show_ineq(a: Ineq) -> str:
    lhs = _show_sum((c, _show_item(a.lang, t)) for c, t in a.terms)
    return f"{lhs} {a.rel} {fmt_rat(a.rhs)}"


def show(f) -> str:
    """Canonical, fully parenthesized text of a formula or prop."""
    if isinstance(f, Ineq):
        return show_ineq(f)
    if isinstance(f, (Var, Const)):
        return show_prop(f)
    if isinstance(f, Not):
        inner = show(f.arg)
        return f"!({inner})" if isinstance(f.arg, Ineq) else "!" + inner
    if isinstance(f, And):
        return "(" + " & ".join(show(a) for a in f.args) + ")"
    if isinstance(f, Or):
        return "(" + " | ".join(show(a) for a in f.args) + ")"
    if isinstance(f, Implies):
        return f"({show(f.left)} => {show(f.right)})"
    if isinstance(f, SynGamble):
        return show_gamble(f)
    raise TypeError(f"cannot print {f!r}")
