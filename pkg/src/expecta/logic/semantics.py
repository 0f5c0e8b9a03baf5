"""Truth of formulas in models.

E and QU inequalities compare reals, so every relation is read directly.
G and F inequalities compare functions pointwise; they are desugared
first, and ``t >= c`` then means "at every point".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..atoms import AtomSpace, extension, realize_gamble
from ..errors import InputError, LanguageError
from ..expectation import expectation, likelihood
from ..syntax import LANG_E, LANG_F, LANG_G, LANG_QU, And, Const, Implies, Ineq, Not, Or
from .transforms import desugar


def compare(lhs, rel: str, rhs) -> bool:
    if rel == ">=":
        return lhs >= rhs
    if rel == ">":
        return lhs > rhs
    if rel == "<=":
        return lhs <= rhs
    if rel == "<":
        return lhs < rhs
    return lhs == rhs


def _walk(f, leaf) -> bool:
    if isinstance(f, Ineq):
        return leaf(f)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not _walk(f.arg, leaf)
    if isinstance(f, And):
        return all([_walk(a, leaf) for a in f.args])
    if isinstance(f, Or):
        return any([_walk(a, leaf) for a in f.args])
    if isinstance(f, Implies):
        return (not _walk(f.left, leaf)) or _walk(f.right, leaf)
    raise TypeError(f"not a formula: {f!r}")


class ModelEvaluator:
    """Evaluates E/QU formulas in one model, caching term values."""

    def __init__(self, model):
        self.model = model
        self.space = model.space
        self._cache = {}

    def term(self, lang, item) -> Fraction:
        key = (lang, item)
        v = self._cache.get(key)
        if v is None:
            if lang == LANG_E:
                v = expectation(self.model, realize_gamble(item, self.space))
            elif lang == LANG_QU:
                v = likelihood(self.model, extension(item, self.space))
            else:
                raise LanguageError(f"language {lang} is not evaluated in uncertainty models")
            self._cache[key] = v
        return v

    def lhs(self, a: Ineq) -> Fraction:
        return sum((c * self.term(a.lang, t) for c, t in a.terms), Fraction(0))

    def leaf(self, a: Ineq) -> bool:
        return compare(self.lhs(a), a.rel, a.rhs)

    def holds(self, f) -> bool:
        return _walk(f, self.leaf)


def holds(f, model) -> bool:
    """``model |= f`` for an E or QU formula."""
    return ModelEvaluator(model).holds(f)


def holds_in_structure(f, space: AtomSpace) -> bool:
    """``space |= f`` for a G formula: inequalities hold at every world."""
    cache = {}

    def leaf(a: Ineq) -> bool:
        if a.lang != LANG_G:
            raise LanguageError("structures evaluate G formulas only")
        vals = cache.get(a.terms)
        if vals is None:
            vals = [Fraction(0)] * len(space)
            for c, phi in a.terms:
                m = extension(phi, space)
                for i in range(len(space)):
                    if (m >> i) & 1:
                        vals[i] += c
            cache[a.terms] = vals
        return all(v >= a.rhs for v in vals)

    return _walk(desugar(f), leaf)


def holds_for_functions(f, assignment: Mapping[str, Sequence]) -> bool:
    """Truth of an F formula for functions given as value lists over a
    common finite domain."""
    sizes = {len(v) for v in assignment.values()}
    if len(sizes) > 1:
        raise InputError("function values must share one domain")
    n = sizes.pop() if sizes else 1
    if n == 0:
        raise InputError("the domain must be nonempty")

    def leaf(a: Ineq) -> bool:
        if a.lang != LANG_F:
            raise LanguageError("function assignments evaluate F formulas only")
        for d in range(n):
            total = Fraction(0)
            for c, v in a.terms:
                if v not in assignment:
                    raise InputError(f"no value for function variable {v!r}")
                total += c * Fraction(assignment[v][d])
            if total < a.rhs:
                return False
        return True

    return _walk(desugar(f), leaf)


def holds_over_reals(f, point: Mapping[str, object]) -> bool:
    """Truth of an F formula when each variable is a single real."""
    def leaf(a: Ineq) -> bool:
        total = sum((c * Fraction(point[v]) for c, v in a.terms), Fraction(0))
        return compare(total, a.rel, a.rhs)

    return _walk(f, leaf)
