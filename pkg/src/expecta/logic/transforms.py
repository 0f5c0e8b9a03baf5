"""Desugaring, DNF and the formula rewrites between the languages."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from ..atoms import AtomSpace, extension, realize_gamble
from ..errors import CapExceededError, LanguageError
from ..syntax import (FALSE, LANG_E, LANG_F, LANG_G, LANG_QU, TRUE, And, Const, Implies, Ineq, Not, Or,
                      SynGamble, Var, conj, disj, formula_props, map_leaves, prop_names)

DEFAULT_MAX_CLAUSES = 4096


class Literal(NamedTuple):
    positive: bool
    ineq: Ineq  # always a ``>=`` inequality


def _ge(a: Ineq) -> Ineq:
    return a.with_rel(">=")


def _le(a: Ineq) -> Ineq:
    return a.negated_sides().with_rel(">=")


def desugar_ineq(a: Ineq):
    """Rewrite one inequality with ``>=`` as the only relation."""
    pointwise = a.lang in (LANG_G, LANG_F)
    if a.rel == ">=":
        return a
    if a.rel == "<=":
        return _le(a)
    if a.rel == "=":
        return And((_ge(a), _le(a)))
    if a.rel == ">":
        if pointwise:
            return And((_ge(a), Not(_le(a))))
        return Not(_le(a))
    # t < b  is  -t > -b
    flipped = a.negated_sides().with_rel(">")
    return desugar_ineq(flipped)


def desugar(f):
    return map_leaves(f, lambda leaf: desugar_ineq(leaf) if isinstance(leaf, Ineq) else leaf)


def _nnf(f, positive: bool = True):
    """Push negations down to inequality leaves."""
    if isinstance(f, Ineq):
        return f if positive else Not(f)
    if isinstance(f, Const):
        return Const(f.value == positive)
    if isinstance(f, Not):
        return _nnf(f.arg, not positive)
    if isinstance(f, Implies):
        return _nnf(Or((Not(f.left), f.right)), positive)
    if isinstance(f, (And, Or)):
        kind = type(f) if positive else (Or if isinstance(f, And) else And)
        return kind(tuple(_nnf(a, positive) for a in f.args))
    raise TypeError(f"not a formula: {f!r}")


def to_dnf(f, max_clauses: int = DEFAULT_MAX_CLAUSES, sugar: bool = True) -> list:
    """Clauses (tuples of ``Literal``) whose disjunction is equivalent to ``f``.

    Inequalities are desugared first so that every literal is a ``>=``
    inequality or its negation.  Duplicate literals inside a clause and
    duplicate clauses are removed.
    """
    g = desugar(f) if sugar else f

    def go(node):
        if isinstance(node, Ineq):
            return [(Literal(True, node),)]
        if isinstance(node, Not):
            return [(Literal(False, node.arg),)]
        if isinstance(node, Const):
            return [()] if node.value else []
        if isinstance(node, Or):
            out = []
            for a in node.args:
                out.extend(go(a))
                if len(out) > max_clauses:
                    raise CapExceededError(f"DNF exceeds {max_clauses} clauses")
            return out
        out = [()]
        for a in node.args:
            sub = go(a)
            if len(out) * len(sub) > max_clauses:
                raise CapExceededError(f"DNF exceeds {max_clauses} clauses")
            out = [x + y for x in out for y in sub]
        return out

    clauses = []
    seen = set()
    for c in go(_nnf(g)):
        c = tuple(dict.fromkeys(c))
        if c not in seen:
            seen.add(c)
            clauses.append(c)
    return clauses


# ------------------------------------------------------------ translations

def translate_likelihood(f):
    """Replace each ``L(phi)`` by ``E(phi)``."""
    def leaf(a):
        if not isinstance(a, Ineq):
            return a
        if a.lang != LANG_QU:
            raise LanguageError("translate_likelihood expects a QU formula")
        terms = tuple((c, SynGamble(((Fraction(1), phi),))) for c, phi in a.terms)
        return Ineq(terms, a.rel, a.rhs, LANG_E)
    return map_leaves(f, leaf)


def to_likelihood(f):
    """Inverse of ``translate_likelihood`` for E formulas whose expectation
    terms are nonnegative multiples of single propositions."""
    def leaf(a):
        if not isinstance(a, Ineq):
            return a
        if a.lang != LANG_E:
            raise LanguageError("to_likelihood expects an E formula")
        terms = []
        for c, g in a.terms:
            if len(g.terms) != 1 or g.terms[0][0] < 0:
                raise LanguageError("only E(c*phi) terms with c >= 0 have a likelihood counterpart")
            k, phi = g.terms[0]
            terms.append((c * k, phi))
        return Ineq(tuple(terms), a.rel, a.rhs, LANG_QU)
    return map_leaves(f, leaf)


def transform_t1(f):
    """Distribute every ``E(c1*phi1 + ...)`` into ``c1*E(phi1) + ...``."""
    def leaf(a):
        if not isinstance(a, Ineq) or a.lang != LANG_E:
            return a
        terms = []
        for coef, g in a.terms:
            for c, phi in g.terms:
                terms.append((coef * c, SynGamble(((Fraction(1), phi),))))
        if not terms:
            terms.append((Fraction(0), SynGamble(((Fraction(1), TRUE),))))
        return Ineq(tuple(terms), a.rel, a.rhs, LANG_E)
    return map_leaves(f, leaf)


def atom_formula(space: AtomSpace, i: int):
    w = space.worlds[i]
    lits = [Var(p) if p in w.true_props else Not(Var(p)) for p in space.props]
    if not lits:
        return TRUE
    return lits[0] if len(lits) == 1 else And(tuple(lits))


def region_formula(space: AtomSpace, mask: int, candidates=()):
    """A formula whose extension over ``space`` is ``mask``.

    Candidates are tried first so that simple inputs keep simple output;
    otherwise the disjunction of the atoms in ``mask`` is returned.
    """
    if mask == space.full:
        return TRUE
    if mask == 0:
        return FALSE
    for phi in candidates:
        if extension(phi, space) == mask:
            return phi
    atoms = [atom_formula(space, i) for i in range(len(space)) if (mask >> i) & 1]
    return atoms[0] if len(atoms) == 1 else Or(tuple(atoms))


def staircase(g: SynGamble, space: AtomSpace):
    """Layer decomposition ``d0 + sum_j (d_j - d_{j-1}) * 1[g >= d_j]``.

    Returns ``(d0, [(step, mask), ...])`` with masks shrinking.
    """
    vals = realize_gamble(g, space).values
    levels = sorted(set(vals))
    steps = []
    for lo, hi in zip(levels, levels[1:]):
        mask = sum(1 << i for i, v in enumerate(vals) if v >= hi)
        steps.append((hi - lo, mask))
    return levels[0], steps


def transform_t2(f, props: Optional[Sequence[str]] = None):
    """Rewrite every expectation term into nonnegative multiples of
    expectations of nested propositions (plus a constant, folded into the
    right-hand side)."""
    props = sorted(formula_props(f)) if props is None else list(props)
    space = AtomSpace.atoms(props)

    def leaf(a):
        if not isinstance(a, Ineq) or a.lang != LANG_E:
            return a
        terms = []
        shift = Fraction(0)
        for coef, g in a.terms:
            base, steps = staircase(g, space)
            shift += coef * base
            props_here = [phi for _, phi in g.terms]
            candidates = props_here + [Var(p) for p in props]
            if len(props_here) > 1:
                candidates += [disj(*props_here), conj(*props_here)]
            for step, mask in steps:
                psi = region_formula(space, mask, candidates)
                terms.append((coef * step, SynGamble(((Fraction(1), psi),))))
        if not terms:
            terms.append((Fraction(0), SynGamble(((Fraction(1), TRUE),))))
        return Ineq(tuple(terms), a.rel, a.rhs - shift, LANG_E)

    return map_leaves(f, leaf)


def _collect(g: SynGamble, order: dict):
    coefs = {}
    for c, phi in g.terms:
        order.setdefault(phi, len(order))
        coefs[phi] = coefs.get(phi, Fraction(0)) + c
    return coefs


def syntactic_meet_join(g1: SynGamble, g2: SynGamble, mode: str) -> SynGamble:
    """Pointwise max (``mode`` "or"/"join") or min ("and"/"meet") as a gamble.

    Builds the regions ``rho_A`` (conjunction of the propositions in ``A``
    and negations of the rest) and takes the larger, resp. smaller,
    coefficient sum on each region.  Only regions true at some atom are
    emitted; the others denote the zero gamble.
    """
    if mode in ("or", "join", "max", "|"):
        pick = max
    elif mode in ("and", "meet", "min", "&"):
        pick = min
    else:
        raise ValueError(f"unknown mode {mode!r}")
    order: dict = {}
    c1 = _collect(g1, order)
    c2 = _collect(g2, order)
    phis = sorted(order, key=order.get)
    atoms = AtomSpace.atoms(sorted(set().union(*(prop_names(phi) for phi in phis))))
    masks = [extension(phi, atoms) for phi in phis]
    realized = {tuple(bool((m >> i) & 1) for m in masks) for i in range(len(atoms))}
    terms = []
    for bits in sorted(realized, key=lambda b: tuple(not x for x in b)):
        b1 = sum((c1.get(phi, 0) for phi, b in zip(phis, bits) if b), Fraction(0))
        b2 = sum((c2.get(phi, 0) for phi, b in zip(phis, bits) if b), Fraction(0))
        c = pick(b1, b2)
        if c != 0:
            rho = [phi if b else Not(phi) for phi, b in zip(phis, bits)]
            terms.append((c, rho[0] if len(rho) == 1 else And(tuple(rho))))
    return SynGamble(tuple(terms))


def meet_join_all(gambles: Sequence[SynGamble], mode: str) -> SynGamble:
    out = gambles[0]
    for g in gambles[1:]:
        out = syntactic_meet_join(out, g, mode)
    return out


__all__ = [
    "DEFAULT_MAX_CLAUSES", "Literal", "desugar", "desugar_ineq", "to_dnf", "translate_likelihood",
    "to_likelihood", "transform_t1", "transform_t2", "syntactic_meet_join", "meet_join_all", "staircase",
    "atom_formula", "region_formula",
]
