"""Finite sample spaces generated by propositions, and gambles over them.

Sets of worlds are plain ``int`` bitmasks: bit ``i`` stands for the
``i``-th world of the space.  Spaces are capped at 64 worlds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ForeignWorldError, InputError, SpaceMismatchError, UnknownPropositionError
from .syntax import And, Const, Implies, Not, Or, SynGamble, Var

MAX_WORLDS = 64

WorldSet = int


def members(mask: WorldSet) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: WorldSet) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class World:
    id: str
    true_props: frozenset
    props: tuple = field(compare=False, repr=False, default=())

    def value(self, name: str) -> bool:
        if name not in self.props:
            raise UnknownPropositionError(name)
        return name in self.true_props


def atom_label(props: Sequence[str], truth: Iterable[str]) -> str:
    truth = set(truth)
    if not props:
        return "true"
    return "&".join(p if p in truth else "!" + p for p in props)


@dataclass(frozen=True)
class AtomSpace:
    """Ordered propositions plus an ordered list of distinct worlds."""

    props: tuple
    worlds: tuple
    _prop_masks: dict = field(default=None, compare=False, repr=False, hash=False)
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        props = tuple(self.props)
        if len(set(props)) != len(props):
            raise InputError("duplicate proposition names")
        if not self.worlds:
            raise InputError("a space needs at least one world")
        if len(self.worlds) > MAX_WORLDS:
            raise InputError(f"at most {MAX_WORLDS} worlds are supported, got {len(self.worlds)}")
        worlds = []
        for w in self.worlds:
            extra = set(w.true_props) - set(props)
            if extra:
                raise UnknownPropositionError(sorted(extra)[0])
            worlds.append(World(w.id, frozenset(w.true_props), props))
        if len({w.id for w in worlds}) != len(worlds):
            raise InputError("duplicate world ids")
        if len({w.true_props for w in worlds}) != len(worlds):
            raise InputError("two worlds share the same truth assignment")
        object.__setattr__(self, "props", props)
        object.__setattr__(self, "worlds", tuple(worlds))
        pm = {p: 0 for p in props}
        for i, w in enumerate(worlds):
            for p in w.true_props:
                pm[p] |= 1 << i
        object.__setattr__(self, "_prop_masks", pm)
        object.__setattr__(self, "_index", {w.id: i for i, w in enumerate(worlds)})

    @classmethod
    def atoms(cls, props: Sequence[str]) -> "AtomSpace":
        """All 2^N truth assignments, starting from the all-true atom."""
        props = tuple(props)
        worlds = []
        for bits in itertools.product((True, False), repeat=len(props)):
            truth = frozenset(p for p, b in zip(props, bits) if b)
            worlds.append(World(atom_label(props, truth), truth))
        return cls(props, tuple(worlds))

    @classmethod
    def from_assignments(cls, props, assignments: Iterable[Iterable[str]], ids=None) -> "AtomSpace":
        assignments = [frozenset(a) for a in assignments]
        if ids is None:
            ids = [f"w{i + 1}" for i in range(len(assignments))]
        return cls(tuple(props), tuple(World(i, a) for i, a in zip(ids, assignments)))

    def __len__(self) -> int:
        return len(self.worlds)

    @property
    def full(self) -> WorldSet:
        return (1 << len(self.worlds)) - 1

    def index(self, world_id: str) -> int:
        try:
            return self._index[world_id]
        except KeyError:
            raise ForeignWorldError(f"no world with id {world_id!r}") from None

    def mask_of(self, ids: Iterable[str]) -> WorldSet:
        m = 0
        for i in ids:
            m |= 1 << self.index(i)
        return m

    def ids_of(self, mask: WorldSet) -> list:
        return [self.worlds[i].id for i in members(mask)]

    def label(self, mask: WorldSet) -> str:
        return "{" + ",".join(self.ids_of(mask)) + "}"

    def check_mask(self, mask: WorldSet) -> None:
        if mask < 0 or mask & ~self.full:
            raise ForeignWorldError(f"world set {mask:#x} is not inside a space of {len(self)} worlds")

    def prop_mask(self, name: str) -> WorldSet:
        try:
            return self._prop_masks[name]
        except KeyError:
            raise UnknownPropositionError(name) from None

    def restrict(self, mask: WorldSet) -> "AtomSpace":
        """The sub-space keeping only the worlds in ``mask`` (same order)."""
        self.check_mask(mask)
        return AtomSpace(self.props, tuple(self.worlds[i] for i in members(mask)))

    def same(self, other: "AtomSpace") -> bool:
        return self is other or self == other


def eval_prop(phi, w: World) -> bool:
    if isinstance(phi, Var):
        return w.value(phi.name)
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Not):
        return not eval_prop(phi.arg, w)
    if isinstance(phi, And):
        return all([eval_prop(a, w) for a in phi.args])
    if isinstance(phi, Or):
        return any([eval_prop(a, w) for a in phi.args])
    if isinstance(phi, Implies):
        left = eval_prop(phi.left, w)
        right = eval_prop(phi.right, w)
        return (not left) or right
    raise TypeError(f"not a propositional formula: {phi!r}")


def extension(phi, s: AtomSpace) -> WorldSet:
    """Bitmask of the worlds of ``s`` where ``phi`` holds."""
    if isinstance(phi, Var):
        return s.prop_mask(phi.name)
    if isinstance(phi, Const):
        return s.full if phi.value else 0
    if isinstance(phi, Not):
        return s.full ^ extension(phi.arg, s)
    if isinstance(phi, And):
        m = s.full
        for a in phi.args:
            m &= extension(a, s)
        return m
    if isinstance(phi, Or):
        m = 0
        for a in phi.args:
            m |= extension(a, s)
        return m
    if isinstance(phi, Implies):
        return (s.full ^ extension(phi.left, s)) | extension(phi.right, s)
    raise TypeError(f"not a propositional formula: {phi!r}")


@dataclass(frozen=True)
class Gamble:
    space: AtomSpace
    values: tuple

    def __post_init__(self):
        vals = tuple(v if type(v) is Fraction else Fraction(v) for v in self.values)
        if len(vals) != len(self.space.worlds):
            raise InputError(f"gamble has {len(vals)} values for {len(self.space.worlds)} worlds")
        object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, space: AtomSpace, c) -> "Gamble":
        return cls(space, (Fraction(c),) * len(space))

    def _check(self, other: "Gamble") -> None:
        if not self.space.same(other.space):
            raise SpaceMismatchError("gambles")

    def __add__(self, other):
        if not isinstance(other, Gamble):
            return scale_shift(1, self, other)
        return combine("add", self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale_shift(-1, self, 0)

    def __sub__(self, other):
        if not isinstance(other, Gamble):
            return scale_shift(1, self, -Fraction(other))
        return self + (-other)

    def __mul__(self, a):
        return scale_shift(a, self, 0)

    __rmul__ = __mul__

    def __le__(self, other: "Gamble") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other: "Gamble") -> bool:
        return other <= self

    def min(self) -> Fraction:
        return min(self.values)

    def max(self) -> Fraction:
        return max(self.values)

    def level_set(self, threshold) -> WorldSet:
        """Worlds where the gamble strictly exceeds ``threshold``."""
        m = 0
        for i, v in enumerate(self.values):
            if v > threshold:
                m |= 1 << i
        return m


def realize_gamble(g: SynGamble, s: AtomSpace) -> Gamble:
    vals = [Fraction(0)] * len(s)
    for coef, phi in g.terms:
        coef = Fraction(coef)
        for i in members(extension(phi, s)):
            vals[i] += coef
    return Gamble(s, tuple(vals))


_COMBINERS = {"add": lambda a, b: a + b, "min": min, "max": max}


def combine(mode: str, X: Gamble, Y: Gamble) -> Gamble:
    try:
        op = _COMBINERS[mode]
    except KeyError:
        raise ValueError(f"unknown combine mode {mode!r}") from None
    X._check(Y)
    return Gamble(X.space, tuple(op(a, b) for a, b in zip(X.values, Y.values)))


def scale_shift(a, X: Gamble, b) -> Gamble:
    a, b = Fraction(a), Fraction(b)
    return Gamble(X.space, tuple(a * v + b for v in X.values))


def is_comonotonic(X: Gamble, Y: Gamble) -> bool:
    X._check(Y)
    pairs = list(zip(X.values, Y.values))
    for (x1, y1), (x2, y2) in itertools.combinations(pairs, 2):
        if (x1 - x2) * (y1 - y2) < 0:
            return False
    return True


def indicator(U: WorldSet, s: AtomSpace) -> Gamble:
    s.check_mask(U)
    return Gamble(s, tuple(Fraction(1) if (U >> i) & 1 else Fraction(0) for i in range(len(s))))
