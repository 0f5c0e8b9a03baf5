"""Satisfiability and validity for the inequality languages.

Expectation formulas are decided clause by clause on their DNF, over the
atoms of the propositions they mention:

* ``prob``: one LP over atom probabilities;
* ``lowerprob``: one probability vector per gamble of the clause (plus the
  constant 0 and 1 gambles), each forced to attain its gamble's minimum;
* ``belief``: masses on sets of atoms, where a set only matters through
  the vector of its gamble minima, so columns range over the meet-closure
  of the atom value vectors;
* ``possibility``: consonant masses along chains of sets, where only the
  running maxima matter, so chains are enumerated as paths of running-max
  vectors.

Every SAT answer carries a witness that is re-evaluated exactly before it
is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

from .atoms import AtomSpace, members, popcount, realize_gamble
from .errors import CapExceededError, InvariantBreach, LanguageError
from .linsolve import EQ, GE, GT, Constraint, Feasible, LinearSystem, solve
from .logic.semantics import holds, holds_for_functions, holds_in_structure, holds_over_reals
from .logic.transforms import DEFAULT_MAX_CLAUSES, Literal, to_dnf, translate_likelihood
from .measures import CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure
from .syntax import (LANG_E, LANG_F, LANG_G, LANG_QU, Ineq, Not, SynGamble, formula_props, formula_size,
                     formula_vars, leaves)

log = logging.getLogger(__name__)

SEMANTICS = ("prob", "lowerprob", "belief", "possibility")
DEFAULT_MAX_PROPS = 4
POSSIBILITY_SAFE_PROPS = 3

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class SatResult:
    sat: bool
    witness: object = None

    @property
    def status(self) -> str:
        return "SAT" if self.sat else "UNSAT"

    def __bool__(self) -> bool:
        return self.sat


@dataclass(frozen=True)
class FunctionWitness:
    """Functions on the domain ``0..size-1`` given by their value lists."""

    assignment: Dict[str, tuple]

    @property
    def size(self) -> int:
        return len(next(iter(self.assignment.values()), (ZERO,)))


def _languages(f) -> set:
    return {leaf.lang for leaf in leaves(f) if isinstance(leaf, Ineq)}


def _expect_language(f, allowed, what):
    langs = _languages(f)
    if not langs <= set(allowed):
        raise LanguageError(f"{what} expects a {'/'.join(allowed)} formula, got {'/'.join(sorted(langs))}")


def _props_space(f, max_props: int) -> AtomSpace:
    props = sorted(formula_props(f))
    if len(props) > max_props:
        raise CapExceededError(f"formula mentions {len(props)} propositions; the cap is {max_props}")
    return AtomSpace.atoms(props)


def _contradictory(clause: Sequence[Literal]) -> bool:
    """Cheap real-valued bound check on literals sharing a left-hand side."""
    bounds = {}
    for lit in clause:
        terms, b = lit.ineq.terms, lit.ineq.rhs
        mirrored = tuple((-c, t) for c, t in terms)
        flipped = terms not in bounds and mirrored in bounds
        if flipped:
            terms, b = mirrored, -b
        strict = not lit.positive
        lo, lo_s, hi, hi_s = bounds.get(terms, (None, False, None, False))
        if lit.positive != flipped:
            if lo is None or b > lo or (b == lo and strict):
                lo, lo_s = b, strict
        elif hi is None or b < hi or (b == hi and strict):
            hi, hi_s = b, strict
        bounds[terms] = (lo, lo_s, hi, hi_s)
        if lo is not None and hi is not None and (lo > hi or (lo == hi and (lo_s or hi_s))):
            return True
    return False


class _Clause:
    """A clause with its gambles realized over the atom space."""

    def __init__(self, clause: Sequence[Literal], space: AtomSpace):
        self.literals = list(clause)
        self.space = space
        index: Dict[tuple, int] = {}
        self.vectors: List[tuple] = []
        self.rows = []  # (positive, [(coef, gamble index)], rhs)
        cache = {}
        for lit in self.literals:
            terms = []
            for c, g in lit.ineq.terms:
                vec = cache.get(g)
                if vec is None:
                    vec = realize_gamble(g, space).values
                    cache[g] = vec
                if vec not in index:
                    index[vec] = len(self.vectors)
                    self.vectors.append(vec)
                terms.append((c, index[vec]))
            self.rows.append((lit.positive, terms, lit.ineq.rhs))

    def constraints(self, column: Callable[[int], Sequence[Fraction]], nvars: int) -> list:
        """Clause rows with ``e(gamble i)`` replaced by the linear form ``column(i)``."""
        out = []
        for positive, terms, rhs in self.rows:
            coeffs = [ZERO] * nvars
            for c, gi in terms:
                for j, v in enumerate(column(gi)):
                    if v:
                        coeffs[j] += c * v
            if positive:
                out.append(Constraint(tuple(coeffs), GE, rhs))
            else:
                out.append(Constraint(tuple(-v for v in coeffs), GT, -rhs))
        return out


def _solve(system: LinearSystem, on_system):
    if on_system is not None:
        on_system(system)
    res = solve(system, certify=False)
    return res.witness if isinstance(res, Feasible) else None


# ------------------------------------------------------------ per-semantics

def _prob_clause(cl: _Clause, on_system):
    n = len(cl.space)
    rows = [Constraint((ONE,) * n, EQ, ONE)]
    rows += cl.constraints(lambda i: cl.vectors[i], n)
    x = _solve(LinearSystem(n, tuple(rows), (True,) * n), on_system)
    if x is None:
        return None
    support = sum(1 << j for j, v in enumerate(x) if v)
    return ProbabilityMeasure(cl.space, x).restrict(support)


def _lowerprob_clause(cl: _Clause, on_system):
    n = len(cl.space)
    vectors = list(cl.vectors)
    anchors = []
    for c in (ZERO, ONE):
        v = (c,) * n
        if v not in vectors:
            anchors.append(len(vectors))
            vectors.append(v)
    k = len(vectors)
    nv = k * n

    def block(i, vec):
        out = [ZERO] * nv
        out[i * n:(i + 1) * n] = vec
        return out

    rows = []
    for i in range(k):
        rows.append(Constraint(tuple(block(i, (ONE,) * n)), EQ, ONE))
    for i in range(k):
        b = vectors[i]
        for i2 in range(k):
            if i2 != i:
                coeffs = block(i2, b)
                coeffs[i * n:(i + 1) * n] = [-v for v in b]
                rows.append(Constraint(tuple(coeffs), GE, ZERO))
    rows += cl.constraints(lambda i: block(i, cl.vectors[i]), nv)
    log.debug("lowerprob system: %d gambles, %d cross rows", k, k * (k - 1))
    x = _solve(LinearSystem(nv, tuple(rows), (True,) * nv), on_system)
    if x is None:
        return None
    keep = [i for i in range(k) if i not in anchors] or [0]
    measures = []
    for i in keep:
        mu = tuple(x[i * n:(i + 1) * n])
        if mu not in measures:
            measures.append(mu)
    support = 0
    for mu in measures:
        support |= sum(1 << j for j, v in enumerate(mu) if v)
    return CredalSet(cl.space, measures).restrict(support)


def _meet(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def _join(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _atom_vectors(cl: _Clause):
    n = len(cl.space)
    return [tuple(vec[j] for vec in cl.vectors) for j in range(n)]


def _belief_clause(cl: _Clause, on_system):
    atoms = _atom_vectors(cl)
    closure = list(dict.fromkeys(atoms))
    seen = set(closure)
    frontier = list(closure)
    while frontier:
        nxt = []
        for c in frontier:
            for v in atoms:
                m = _meet(c, v)
                if m not in seen:
                    seen.add(m)
                    closure.append(m)
                    nxt.append(m)
        frontier = nxt
    cols = len(closure)
    rows = [Constraint((ONE,) * cols, EQ, ONE)]
    rows += cl.constraints(lambda i: [c[i] for c in closure], cols)
    x = _solve(LinearSystem(cols, tuple(rows), (True,) * cols), on_system)
    if x is None:
        return None
    masses = {}
    for c, w in zip(closure, x):
        if w:
            U = _smallest_set_with_meet(atoms, c)
            masses[U] = masses.get(U, ZERO) + w
    support = 0
    for U in masses:
        support |= U
    return MassFunction(cl.space, masses).restrict(support)


def _smallest_set_with_meet(atoms, target):
    """A small set of atoms whose componentwise minimum is ``target``."""
    idx = [j for j, v in enumerate(atoms) if _leq(target, v)]
    chosen = list(idx)
    for j in idx:
        trial = [i for i in chosen if i != j]
        if trial:
            m = atoms[trial[0]]
            for i in trial[1:]:
                m = _meet(m, atoms[i])
            if m == target:
                chosen = trial
    return sum(1 << j for j in chosen)


def _chains(atoms):
    """Maximal paths of running-max vectors, as ``[(vector, key atom)]``."""
    distinct = list(dict.fromkeys(atoms))
    key_of = {v: atoms.index(v) for v in distinct}
    top = distinct[0]
    for v in distinct[1:]:
        top = _join(top, v)
    starts = [v for v in distinct if not any(u != v and _leq(u, v) for u in distinct)]
    out = []
    seen_cols = set()

    def extend(path):
        c = path[-1][0]
        if c == top:
            cols = frozenset(p[0] for p in path)
            if cols not in seen_cols:
                seen_cols.add(cols)
                out.append(list(path))
            return
        succ = {}
        for v in distinct:
            if not _leq(v, c):
                nxt = _join(c, v)
                succ.setdefault(nxt, key_of[v])
        minimal = [s for s in succ if not any(t != s and _leq(t, s) for t in succ)]
        for s in minimal:
            path.append((s, succ[s]))
            extend(path)
            path.pop()

    for v in starts:
        extend([(v, key_of[v])])
    return out


def _possibility_clause(cl: _Clause, on_system):
    atoms = _atom_vectors(cl)
    chains = _chains(atoms)
    log.debug("possibility: %d chains over %d atoms", len(chains), len(atoms))
    for chain in chains:
        cols = len(chain)
        rows = [Constraint((ONE,) * cols, EQ, ONE)]
        rows += cl.constraints(lambda i: [c[i] for c, _ in chain], cols)
        x = _solve(LinearSystem(cols, tuple(rows), (True,) * cols), on_system)
        if x is not None:
            return _chain_witness(cl.space, atoms, chain, x)
    return None


def _chain_witness(space, atoms, chain, masses):
    n = len(atoms)
    poss = [ZERO] * n
    placed = set()
    order = []
    prefix_end = []
    for c, key in chain:
        if key not in placed:
            placed.add(key)
            order.append(key)
        prefix_end.append(len(order))
        for j in range(n):
            if j not in placed and _leq(atoms[j], c):
                placed.add(j)
                order.append(j)
    for end, m in zip(prefix_end, masses):
        for j in order[:end]:
            poss[j] += m
    support = sum(1 << j for j, v in enumerate(poss) if v)
    return PossibilityMeasure(space, poss).restrict(support)


_SOLVERS = {
    "prob": _prob_clause,
    "lowerprob": _lowerprob_clause,
    "belief": _belief_clause,
    "possibility": _possibility_clause,
}


def _trivial_witness(space: AtomSpace, semantics: str):
    one = space.restrict(1)
    if semantics == "prob":
        return ProbabilityMeasure(one, (ONE,))
    if semantics == "lowerprob":
        return CredalSet(one, [(ONE,)])
    if semantics == "belief":
        return MassFunction(one, {1: ONE})
    return PossibilityMeasure(one, (ONE,))


def sat(f, semantics: str, max_props: int = DEFAULT_MAX_PROPS, max_clauses: int = DEFAULT_MAX_CLAUSES,
        allow_large: bool = False, on_system=None) -> SatResult:
    """Decide whether an E (or QU) formula has a model of the given class."""
    if semantics not in SEMANTICS:
        raise LanguageError(f"unknown semantics {semantics!r}; expected one of {', '.join(SEMANTICS)}")
    original = f
    if _languages(f) == {LANG_QU}:
        f = translate_likelihood(f)
    _expect_language(f, (LANG_E,), "sat")
    space = _props_space(f, max_props)
    n_props = len(space.props)
    if semantics == "possibility" and n_props > POSSIBILITY_SAFE_PROPS and not allow_large:
        raise CapExceededError(f"possibility decisions above {POSSIBILITY_SAFE_PROPS} propositions "
                               "need allow_large")
    solver = _SOLVERS[semantics]
    for clause in to_dnf(f, max_clauses):
        if _contradictory(clause):
            continue
        if not clause:
            witness = _trivial_witness(space, semantics)
        else:
            witness = solver(_Clause(clause, space), on_system)
        if witness is None:
            continue
        if not holds(original, witness):
            raise InvariantBreach(f"{semantics} witness does not satisfy the formula")
        log.debug("%s witness: %d worlds for a formula of size %d", semantics, len(witness.space),
                  formula_size(f))
        return SatResult(True, witness)
    return SatResult(False)


def valid(f, semantics: str, **kw) -> bool:
    return not sat(Not(f), semantics, **kw).sat


def countermodel(f, semantics: str, **kw):
    """A model falsifying ``f``, or ``None`` when ``f`` is valid."""
    return sat(Not(f), semantics, **kw).witness


# ------------------------------------------------------------ gamble inequalities

def sat_gamble(f, max_props: int = DEFAULT_MAX_PROPS, max_clauses: int = DEFAULT_MAX_CLAUSES) -> SatResult:
    """Satisfiability of a G formula over nonempty sets of atoms."""
    _expect_language(f, (LANG_G,), "sat_gamble")
    space = _props_space(f, max_props)
    n = len(space)
    cache = {}

    def values(a: Ineq):
        vals = cache.get(a.terms)
        if vals is None:
            vals = [ZERO] * n
            for c, phi in a.terms:
                g = realize_gamble_single(c, phi, space)
                for j in range(n):
                    vals[j] += g[j]
            cache[a.terms] = vals
        return vals

    for clause in to_dnf(f, max_clauses):
        S = space.full
        for lit in clause:
            if lit.positive:
                vals = values(lit.ineq)
                S &= sum(1 << j for j in range(n) if vals[j] >= lit.ineq.rhs)
        if not S:
            continue
        chosen = 0
        ok = True
        for lit in clause:
            if not lit.positive:
                vals = values(lit.ineq)
                bad = [j for j in members(S) if vals[j] < lit.ineq.rhs]
                if not bad:
                    ok = False
                    break
                chosen |= 1 << bad[0]
        if not ok:
            continue
        if not chosen:
            chosen = S & -S
        witness = space.restrict(chosen)
        if not holds_in_structure(f, witness):
            raise InvariantBreach("gamble witness does not satisfy the formula")
        log.debug("gamble witness: %d worlds for a formula of size %d", popcount(chosen), formula_size(f))
        return SatResult(True, witness)
    return SatResult(False)


def realize_gamble_single(c, phi, space):
    return realize_gamble(SynGamble(((Fraction(c), phi),)), space).values


def valid_gamble(f, **kw) -> bool:
    return not sat_gamble(Not(f), **kw).sat


# ------------------------------------------------------------ function inequalities

def _linear_rows(clause, names):
    pos, neg = [], []
    idx = {v: k for k, v in enumerate(names)}
    for lit in clause:
        coeffs = [ZERO] * len(names)
        for c, v in lit.ineq.terms:
            coeffs[idx[v]] += c
        if lit.positive:
            pos.append(Constraint(tuple(coeffs), GE, lit.ineq.rhs))
        else:
            neg.append(Constraint(tuple(-c for c in coeffs), GT, -lit.ineq.rhs))
    return pos, neg


def sat_funcineq(f, max_clauses: int = DEFAULT_MAX_CLAUSES, on_system=None) -> SatResult:
    """Satisfiability of an F formula by functions on some finite domain."""
    _expect_language(f, (LANG_F,), "sat_funcineq")
    names = formula_vars(f)
    nv = len(names)
    for clause in to_dnf(f, max_clauses):
        pos, neg = _linear_rows(clause, names)
        points = []
        for g in (neg or [None]):
            rows = tuple(pos + ([g] if g is not None else []))
            x = _solve(LinearSystem(nv, rows), on_system)
            if x is None:
                break
            points.append(x)
        else:
            assignment = {v: tuple(p[k] for p in points) for k, v in enumerate(names)}
            if not holds_for_functions(f, assignment):
                raise InvariantBreach("function witness does not satisfy the formula")
            return SatResult(True, FunctionWitness(assignment))
    return SatResult(False)


def sat_reals(f, max_clauses: int = DEFAULT_MAX_CLAUSES, on_system=None) -> SatResult:
    """Satisfiability of an F formula when variables are single reals."""
    _expect_language(f, (LANG_F,), "sat_reals")
    names = formula_vars(f)
    for clause in to_dnf(f, max_clauses):
        pos, neg = _linear_rows(clause, names)
        x = _solve(LinearSystem(len(names), tuple(pos + neg)), on_system)
        if x is not None:
            point = dict(zip(names, x))
            if not holds_over_reals(f, point):
                raise InvariantBreach("real witness does not satisfy the formula")
            return SatResult(True, point)
    return SatResult(False)
