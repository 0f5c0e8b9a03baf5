"""The four uncertainty representations and their validity checks.

Belief functions are kept as mass functions; a ``SetFunction`` holds an
arbitrary table over all subsets so that candidate belief functions can be
inspected (``validate_model``) or converted (``mass_from_belief``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .atoms import AtomSpace, WorldSet, members, popcount
from .errors import ForeignWorldError, InputError, ModelValidationError, NegativeMassError, SpaceMismatchError


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: str
    sets: tuple = ()

    def __str__(self):
        return f"{self.axiom}: {self.detail}"


def _rats(values) -> tuple:
    return tuple(v if type(v) is Fraction else Fraction(v) for v in values)


def _raise_if(violations):
    if violations:
        raise ModelValidationError(violations)


class ProbabilityMeasure:
    __slots__ = ("space", "values")

    def __init__(self, space: AtomSpace, values: Sequence, check: bool = True):
        self.space = space
        self.values = _rats(values)
        if len(self.values) != len(space):
            raise InputError(f"{len(self.values)} probabilities for {len(space)} worlds")
        if check:
            _raise_if(validate_model(self))

    def prob(self, U: WorldSet) -> Fraction:
        v = self.values
        return sum((v[i] for i in members(U)), Fraction(0))

    __call__ = prob

    def support(self) -> WorldSet:
        return sum(1 << i for i, v in enumerate(self.values) if v)

    def restrict(self, mask: WorldSet) -> "ProbabilityMeasure":
        return ProbabilityMeasure(self.space.restrict(mask), [self.values[i] for i in members(mask)])

    def __eq__(self, other):
        return isinstance(other, ProbabilityMeasure) and self.space.same(other.space) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"ProbabilityMeasure({', '.join(str(v) for v in self.values)})"


class CredalSet:
    __slots__ = ("space", "measures")

    def __init__(self, space: AtomSpace, measures: Iterable, check: bool = True):
        self.space = space
        self.measures = tuple(m if isinstance(m, ProbabilityMeasure) else ProbabilityMeasure(space, m, check)
                              for m in measures)
        if check:
            _raise_if(validate_model(self))

    def lower(self, U: WorldSet) -> Fraction:
        return min(m.prob(U) for m in self.measures)

    def upper(self, U: WorldSet) -> Fraction:
        return max(m.prob(U) for m in self.measures)

    def support(self) -> WorldSet:
        s = 0
        for m in self.measures:
            s |= m.support()
        return s

    def restrict(self, mask: WorldSet) -> "CredalSet":
        sub = self.space.restrict(mask)
        return CredalSet(sub, [ProbabilityMeasure(sub, [m.values[i] for i in members(mask)]) for m in self.measures])

    def __repr__(self):
        return f"CredalSet({list(self.measures)})"


class MassFunction:
    """Masses on nonempty world sets; zero masses are dropped."""

    __slots__ = ("space", "masses")

    def __init__(self, space: AtomSpace, masses: Mapping[WorldSet, object], check: bool = True):
        self.space = space
        items = {}
        for U, v in masses.items():
            v = Fraction(v)
            if v != 0 or not check:
                items[int(U)] = items.get(int(U), Fraction(0)) + v
        self.masses = tuple(sorted(items.items()))
        if check:
            _raise_if(validate_model(self))

    def belief(self, U: WorldSet) -> Fraction:
        return sum((m for V, m in self.masses if V & ~U == 0), Fraction(0))

    def plausibility(self, U: WorldSet) -> Fraction:
        return sum((m for V, m in self.masses if V & U), Fraction(0))

    def focal_sets(self) -> list:
        return [V for V, _ in self.masses]

    def support(self) -> WorldSet:
        s = 0
        for V, _ in self.masses:
            s |= V
        return s

    def restrict(self, mask: WorldSet) -> "MassFunction":
        """Re-index onto the sub-space ``mask``; focal sets must lie inside it."""
        idx = {i: k for k, i in enumerate(members(mask))}
        out = {}
        for V, m in self.masses:
            if V & ~mask:
                raise ForeignWorldError("a focal set leaves the restricted space")
            out[sum(1 << idx[i] for i in members(V))] = m
        return MassFunction(self.space.restrict(mask), out)

    def belief_function(self) -> "SetFunction":
        return SetFunction(self.space, {U: self.belief(U) for U in range(self.space.full + 1)})

    def __repr__(self):
        body = ", ".join(f"{self.space.label(U)}: {m}" for U, m in self.masses)
        return f"MassFunction({body})"


class PossibilityMeasure:
    __slots__ = ("space", "values")

    def __init__(self, space: AtomSpace, values: Sequence, check: bool = True):
        self.space = space
        self.values = _rats(values)
        if len(self.values) != len(space):
            raise InputError(f"{len(self.values)} possibilities for {len(space)} worlds")
        if check:
            _raise_if(validate_model(self))

    def poss(self, U: WorldSet) -> Fraction:
        v = self.values
        return max((v[i] for i in members(U)), default=Fraction(0))

    __call__ = poss

    def necessity(self, U: WorldSet) -> Fraction:
        return 1 - self.poss(self.space.full ^ U)

    def consonant_mass(self) -> MassFunction:
        """Nested focal sets ``{w : poss(w) >= v}`` weighted by level gaps."""
        levels = sorted(set(self.values), reverse=True)
        masses = {}
        for k, v in enumerate(levels):
            nxt = levels[k + 1] if k + 1 < len(levels) else Fraction(0)
            if v - nxt > 0:
                U = sum(1 << i for i, x in enumerate(self.values) if x >= v)
                masses[U] = v - nxt
        return MassFunction(self.space, masses)

    def support(self) -> WorldSet:
        return sum(1 << i for i, v in enumerate(self.values) if v)

    def restrict(self, mask: WorldSet) -> "PossibilityMeasure":
        return PossibilityMeasure(self.space.restrict(mask), [self.values[i] for i in members(mask)])

    def __repr__(self):
        return f"PossibilityMeasure({', '.join(str(v) for v in self.values)})"


class SetFunction:
    """A table ``U -> v(U)`` over every subset of the space."""

    __slots__ = ("space", "table")

    def __init__(self, space: AtomSpace, values: Mapping[WorldSet, object]):
        n = space.full + 1
        missing = [U for U in range(n) if U not in values]
        if missing:
            raise InputError(f"set function is undefined on {space.label(missing[0])} "
                             f"({len(missing)} subsets missing)")
        extra = [U for U in values if not 0 <= U < n]
        if extra:
            raise ForeignWorldError(f"set function mentions subsets outside the space: {extra[:3]}")
        self.space = space
        self.table = tuple(Fraction(values[U]) for U in range(n))

    def __call__(self, U: WorldSet) -> Fraction:
        return self.table[U]

    @classmethod
    def of(cls, space: AtomSpace, fn) -> "SetFunction":
        return cls(space, {U: fn(U) for U in range(space.full + 1)})


def moebius(v: SetFunction) -> list:
    """Moebius transform ``m(U) = sum_{V <= U} (-1)^{|U-V|} v(V)``."""
    f = list(v.table)
    n = len(v.space)
    for i in range(n):
        bit = 1 << i
        for U in range(len(f)):
            if U & bit:
                f[U] -= f[U ^ bit]
    return f


def mass_from_belief(v: SetFunction) -> MassFunction:
    if v(0) != 0 or v(v.space.full) != 1:
        raise InputError("set function must be 0 on the empty set and 1 on the whole space")
    m = moebius(v)
    negatives = [(U, x) for U, x in enumerate(m) if x < 0]
    if negatives:
        U, x = negatives[0]
        raise NegativeMassError(U, x, v.space.label(U), negatives)
    return MassFunction(v.space, {U: x for U, x in enumerate(m) if U and x})


def belief_value(m: MassFunction, U: WorldSet) -> Fraction:
    m.space.check_mask(U)
    return m.belief(U)


def plausibility_value(m: MassFunction, U: WorldSet) -> Fraction:
    m.space.check_mask(U)
    return m.plausibility(U)


def event_bounds(P: CredalSet, U: WorldSet):
    P.space.check_mask(U)
    vals = [m.prob(U) for m in P.measures]
    return min(vals), max(vals)


def poss_value(Poss: PossibilityMeasure, U: WorldSet) -> Fraction:
    Poss.space.check_mask(U)
    return Poss.poss(U)


# ------------------------------------------------------------ validation

def _validate_probability(mu: ProbabilityMeasure, tag: str = "") -> list:
    out = []
    for i, v in enumerate(mu.values):
        if v < 0:
            out.append(Violation("nonnegativity", f"{tag}probability of {mu.space.worlds[i].id} is {v}",
                                 (1 << i,)))
    total = sum(mu.values, Fraction(0))
    if total != 1:
        out.append(Violation("normalization", f"{tag}sum != 1 (sum is {total})", (mu.space.full,)))
    return out


def _validate_credal(P: CredalSet) -> list:
    if not P.measures:
        return [Violation("nonempty", "credal set has no measures")]
    out = []
    for k, mu in enumerate(P.measures):
        if not mu.space.same(P.space):
            out.append(Violation("same-space", f"measure {k} lives on another space"))
        out.extend(_validate_probability(mu, f"measure {k}: "))
    return out


def _validate_mass(m: MassFunction) -> list:
    out = []
    full = m.space.full
    for U, x in m.masses:
        if U == 0:
            out.append(Violation("B1", "mass on the empty set", (0,)))
        if U & ~full:
            out.append(Violation("support", f"mass on a set outside the space ({U:#x})", (U,)))
        elif x <= 0:
            out.append(Violation("B3", f"mass of {m.space.label(U)} is {x}", (U,)))
    total = sum((x for _, x in m.masses), Fraction(0))
    if total != 1:
        out.append(Violation("B2", f"masses sum to {total}, not 1", (full,)))
    return out


def _validate_possibility(P: PossibilityMeasure) -> list:
    out = []
    for i, v in enumerate(P.values):
        if not 0 <= v <= 1:
            out.append(Violation("range", f"possibility of {P.space.worlds[i].id} is {v}", (1 << i,)))
    top = max(P.values)
    if top != 1:
        out.append(Violation("Poss2", f"maximum possibility is {top}, not 1", (P.space.full,)))
    return out


def _validate_set_function(v: SetFunction) -> list:
    out = []
    full = v.space.full
    if v(0) != 0:
        out.append(Violation("B1", f"value on the empty set is {v(0)}", (0,)))
    if v(full) != 1:
        out.append(Violation("B2", f"value on the whole space is {v(full)}", (full,)))
    for U, x in enumerate(moebius(v)):
        if U and x < 0:
            out.append(Violation("B3", f"mass of {v.space.label(U)} is {x}", (U,)))
    return out


def validate_model(model) -> list:
    """Return the list of violated invariants; empty means valid."""
    if isinstance(model, ProbabilityMeasure):
        return _validate_probability(model)
    if isinstance(model, CredalSet):
        return _validate_credal(model)
    if isinstance(model, MassFunction):
        return _validate_mass(model)
    if isinstance(model, PossibilityMeasure):
        return _validate_possibility(model)
    if isinstance(model, SetFunction):
        return _validate_set_function(model)
    raise TypeError(f"not an uncertainty model: {type(model).__name__}")


def same_space(a, b) -> None:
    if not a.space.same(b.space):
        raise SpaceMismatchError("model and gamble")


def model_kind(model) -> str:
    if isinstance(model, ProbabilityMeasure):
        return "probability"
    if isinstance(model, CredalSet):
        return "credal"
    if isinstance(model, MassFunction):
        return "mass"
    if isinstance(model, PossibilityMeasure):
        return "possibility"
    raise TypeError(f"not an uncertainty model: {type(model).__name__}")


def focal_count(model) -> int:
    """Number of positive-weight sets; used for small-model logging."""
    if isinstance(model, MassFunction):
        return len(model.masses)
    if isinstance(model, PossibilityMeasure):
        return len(model.consonant_mass().masses)
    if isinstance(model, CredalSet):
        return len(model.measures)
    return popcount(model.support())
