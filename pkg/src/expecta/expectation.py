"""Expectation operators for the four uncertainty representations.

Belief expectation has three independent routes (Choquet integral over
``Bel``, mass-weighted minima, and an LP over the dominating credal set);
they must agree exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional

from .atoms import Gamble, WorldSet, members
from .errors import CapExceededError, InputError, InvariantBreach
from .linsolve import EQ, GE, Constraint, LinearSystem, Optimum, optimize
from .measures import (CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure, same_space)

BEL_LP_MAX_WORLDS = 16


class Bounds(NamedTuple):
    lower: Fraction
    upper: Fraction


def expect_prob(mu: ProbabilityMeasure, X: Gamble) -> Fraction:
    same_space(mu, X)
    return sum((p * x for p, x in zip(mu.values, X.values) if p), Fraction(0))


def expect_bounds_credal(P: CredalSet, X: Gamble) -> Bounds:
    same_space(P, X)
    vals = [expect_prob(mu, X) for mu in P.measures]
    return Bounds(min(vals), max(vals))


def choquet(nu: Callable[[WorldSet], Fraction], X: Gamble, levels: Optional[Iterable] = None) -> Fraction:
    """Choquet integral of ``X`` against the set function ``nu``.

    ``levels`` may add extra breakpoints; the value does not depend on them.
    """
    full = X.space.full
    if nu(0) != 0 or nu(full) != 1:
        raise InputError("set function is not normalized (needs nu(empty)=0, nu(W)=1)")
    xs = set(X.values)
    if levels is not None:
        xs |= {Fraction(v) for v in levels}
    xs = sorted(xs)
    total = xs[0]
    for lo, hi in zip(xs, xs[1:]):
        total += (hi - lo) * nu(X.level_set(lo))
    return total


def mass_expect(m: MassFunction, X: Gamble, mode: str = "min") -> Fraction:
    same_space(m, X)
    if mode == "max":
        return -mass_expect(m, -X, "min")
    if mode != "min":
        raise ValueError(f"unknown mode {mode!r}")
    v = X.values
    return sum((w * min(v[i] for i in members(U)) for U, w in m.masses), Fraction(0))


def lower_expect_bel_lp(m: MassFunction, X: Gamble) -> Fraction:
    """Minimum of ``E_mu(X)`` over all ``mu`` dominating ``Bel``, by exact LP."""
    same_space(m, X)
    n = len(X.space)
    if n > BEL_LP_MAX_WORLDS:
        raise CapExceededError(f"belief LP oracle is limited to {BEL_LP_MAX_WORLDS} worlds")
    one = Fraction(1)
    zero = Fraction(0)
    rows = [Constraint((one,) * n, EQ, one)]
    for U in range(1, X.space.full):
        bel = m.belief(U)
        if bel:
            rows.append(Constraint(tuple(one if (U >> i) & 1 else zero for i in range(n)), GE, bel))
    system = LinearSystem(n, tuple(rows), (True,) * n)
    res = optimize(system, X.values, "min", certify=False)
    if not isinstance(res, Optimum):
        raise InvariantBreach("belief LP has no optimum for a valid mass function")
    return res.value


def expect_poss(Poss: PossibilityMeasure, X: Gamble) -> Fraction:
    same_space(Poss, X)
    return choquet(Poss.poss, X)


def belief_bounds(m: MassFunction, X: Gamble) -> Bounds:
    return Bounds(mass_expect(m, X, "min"), mass_expect(m, X, "max"))


def possibility_bounds(Poss: PossibilityMeasure, X: Gamble) -> Bounds:
    """Necessity-based lower and possibility-based upper expectation."""
    return Bounds(-expect_poss(Poss, -X), expect_poss(Poss, X))


def expectation(model, X: Gamble) -> Fraction:
    """The expectation each semantics assigns to ``e(X)``."""
    if isinstance(model, ProbabilityMeasure):
        return expect_prob(model, X)
    if isinstance(model, CredalSet):
        return expect_bounds_credal(model, X).lower
    if isinstance(model, MassFunction):
        return mass_expect(model, X, "min")
    if isinstance(model, PossibilityMeasure):
        return expect_poss(model, X)
    raise TypeError(f"not an uncertainty model: {type(model).__name__}")


def likelihood(model, U: WorldSet) -> Fraction:
    """The value each semantics assigns to ``l(phi)`` with extension ``U``."""
    if isinstance(model, ProbabilityMeasure):
        return model.prob(U)
    if isinstance(model, CredalSet):
        return model.lower(U)
    if isinstance(model, MassFunction):
        return model.belief(U)
    if isinstance(model, PossibilityMeasure):
        return model.poss(U)
    raise TypeError(f"not an uncertainty model: {type(model).__name__}")


def three_routes(m: MassFunction, X: Gamble) -> tuple:
    """Belief expectation via Choquet, mass minima and LP; raises on mismatch."""
    a = choquet(m.belief, X)
    b = mass_expect(m, X, "min")
    c = lower_expect_bel_lp(m, X)
    if not a == b == c:
        raise InvariantBreach(f"belief expectation routes disagree: {a}, {b}, {c}")
    return a, b, c
