"""Coherence of lower-expectation assessments and their natural extension.

An assessment lists gambles with assessed lower values.  The constant 0
and constant 1 gambles, assessed at 0 and 1, are always adjoined; this
lets the check use the normalized form where the distinguished gamble has
multiplier 1.  Using several multipliers on the distinguished gamble gives
the same notion, so only the normalized form is implemented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .atoms import AtomSpace, Gamble
from .errors import IncoherenceError, InvariantBreach, SpaceMismatchError
from .linsolve import GE, GT, Constraint, Feasible, LinearSystem, Optimum, optimize, solve


@dataclass(frozen=True)
class Assessment:
    space: AtomSpace
    items: Tuple[Tuple[Gamble, Fraction], ...]

    def __post_init__(self):
        items = []
        for X, x in self.items:
            if not X.space.same(self.space):
                raise SpaceMismatchError("assessed gamble and assessment")
            items.append((X, Fraction(x)))
        object.__setattr__(self, "items", tuple(items))

    def augmented(self) -> list:
        """Assessed items followed by the constant-0 and constant-1 anchors."""
        return list(self.items) + [(Gamble.constant(self.space, 0), Fraction(0)),
                                   (Gamble.constant(self.space, 1), Fraction(1))]


@dataclass(frozen=True)
class Coherent:
    coherent = True


@dataclass(frozen=True)
class Incoherent:
    """``index`` and ``multipliers`` refer to ``Assessment.augmented()``."""

    index: int
    multipliers: tuple
    coherent = False


def is_coherent(a: Assessment):
    items = a.augmented()
    one_anchor = len(items) - 1
    worlds = range(len(a.space))
    for star in range(len(items)):
        if star == one_anchor:
            continue
        others = [j for j in range(len(items)) if j != star]
        Xs, xs = items[star]
        rows = []
        for w in worlds:
            # sum_j b_j (X_j(w) - x_j) < X*(w) - x*
            coeffs = tuple(-(items[j][0].values[w] - items[j][1]) for j in others)
            rows.append(Constraint(coeffs, GT, -(Xs.values[w] - xs)))
        res = solve(LinearSystem(len(others), tuple(rows), (True,) * len(others)), certify=False)
        if isinstance(res, Feasible):
            b = [Fraction(0)] * len(items)
            b[star] = Fraction(1)
            for j, v in zip(others, res.witness):
                b[j] = v
            return Incoherent(star, tuple(b))
    return Coherent()


def natural_extension(a: Assessment, Y: Gamble) -> Fraction:
    """Largest ``alpha`` with ``Y - alpha >= sum_j l_j (X_j - x_j)`` for some ``l >= 0``."""
    if not Y.space.same(a.space):
        raise SpaceMismatchError("query gamble and assessment")
    verdict = is_coherent(a)
    if not verdict.coherent:
        raise IncoherenceError(verdict.index, verdict.multipliers)
    items = a.augmented()
    k = len(items)
    rows = []
    for w in range(len(a.space)):
        # -alpha - sum_j l_j (X_j(w) - x_j) >= -Y(w)
        coeffs = (Fraction(-1),) + tuple(-(X.values[w] - x) for X, x in items)
        rows.append(Constraint(coeffs, GE, -Y.values[w]))
    system = LinearSystem(k + 1, tuple(rows), (False,) + (True,) * k)
    res = optimize(system, (1,) + (0,) * k, "max", certify=False)
    if not isinstance(res, Optimum):
        raise InvariantBreach(f"natural extension LP returned {type(res).__name__}")
    if not Y.min() <= res.value <= Y.max():
        raise InvariantBreach("natural extension left the range of the query gamble")
    return res.value

