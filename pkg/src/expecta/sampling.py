"""Random models, gambles and formulas, plus refutation sampling.

Generators produce exact models with small integer weights (often
sparse) so that degenerate cases such as zero-probability worlds, single
focal sets and ties show up regularly.  ``refute`` screens large batches
of random models in floating point and re-checks every candidate exactly,
so a float rounding error can only cost time, never a wrong answer.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .atoms import AtomSpace, Gamble, realize_gamble
from .logic.semantics import holds
from .logic.transforms import desugar, translate_likelihood
from .measures import CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure
from .syntax import (FALSE, LANG_E, LANG_G, LANG_QU, TRUE, And, Const, Implies, Ineq, Not, Or,
                     SynGamble, Var, formula_props, leaves)

DEFAULT_SEED = 20240611


def default_seed() -> int:
    """Seed from ``EXPECTA_SEED`` when set."""
    raw = os.environ.get("EXPECTA_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


def make_rng(offset: int = 0) -> random.Random:
    return random.Random(default_seed() + offset)


# ------------------------------------------------------------ exact models

def _weights(rng: random.Random, n: int, sparsity: Optional[float] = None, top: int = 9) -> list:
    if sparsity is None:
        sparsity = rng.choice((0.0, 0.3, 0.6))
    w = [0 if rng.random() < sparsity else rng.randint(1, top) for _ in range(n)]
    if not any(w):
        w[rng.randrange(n)] = rng.randint(1, top)
    return w


def random_space(rng: random.Random, props: Sequence[str], min_worlds: int = 1) -> AtomSpace:
    """A nonempty random subset of the atoms over ``props``."""
    full = AtomSpace.atoms(props)
    n = len(full)
    while True:
        mask = rng.getrandbits(n)
        if bin(mask).count("1") >= min(min_worlds, n):
            return full.restrict(mask)


def random_probability(space: AtomSpace, rng: random.Random, **kw) -> ProbabilityMeasure:
    w = _weights(rng, len(space), **kw)
    total = sum(w)
    return ProbabilityMeasure(space, [Fraction(x, total) for x in w])


def random_credal(space: AtomSpace, rng: random.Random, max_measures: int = 4) -> CredalSet:
    k = rng.randint(1, max_measures)
    return CredalSet(space, [random_probability(space, rng) for _ in range(k)])


def random_mass(space: AtomSpace, rng: random.Random, max_focal: int = 4) -> MassFunction:
    n = len(space)
    k = rng.randint(1, max_focal)
    masses = {}
    for _ in range(k):
        if rng.random() < 0.5:
            U = rng.randint(1, space.full)
        else:
            U = 1 << rng.randrange(n)
            for i in range(n):
                if rng.random() < 0.3:
                    U |= 1 << i
        masses[U] = masses.get(U, 0) + rng.randint(1, 9)
    total = sum(masses.values())
    return MassFunction(space, {U: Fraction(v, total) for U, v in masses.items()})


def random_possibility(space: AtomSpace, rng: random.Random) -> PossibilityMeasure:
    w = _weights(rng, len(space))
    top = max(w)
    return PossibilityMeasure(space, [Fraction(x, top) for x in w])


MODEL_MAKERS = {
    "prob": random_probability,
    "lowerprob": random_credal,
    "belief": random_mass,
    "possibility": random_possibility,
}


def random_model(semantics: str, space: AtomSpace, rng: random.Random):
    return MODEL_MAKERS[semantics](space, rng)


def random_gamble(space: AtomSpace, rng: random.Random, lo: int = -5, hi: int = 5) -> Gamble:
    return Gamble(space, tuple(Fraction(rng.randint(lo, hi)) for _ in range(len(space))))


# ------------------------------------------------------------ syntax

def random_prop(props: Sequence[str], rng: random.Random, depth: int = 2):
    r = rng.random()
    if depth <= 0 or r < 0.45:
        if rng.random() < 0.08:
            return rng.choice((TRUE, FALSE))
        v = Var(rng.choice(props))
        return Not(v) if rng.random() < 0.3 else v
    if r < 0.6:
        return Not(random_prop(props, rng, depth - 1))
    kind = rng.choice((And, Or, Or, And, Implies))
    a, b = random_prop(props, rng, depth - 1), random_prop(props, rng, depth - 1)
    return Implies(a, b) if kind is Implies else kind((a, b))


def random_coef(rng: random.Random, allow_zero: bool = False, fractions: bool = True) -> Fraction:
    while True:
        c = Fraction(rng.randint(-3, 3))
        if fractions and rng.random() < 0.2:
            c /= rng.choice((2, 3))
        if c or allow_zero:
            return c


def random_syn_gamble(props: Sequence[str], rng: random.Random, max_terms: int = 3,
                      nonneg: bool = False) -> SynGamble:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        c = random_coef(rng)
        terms.append((abs(c) if nonneg else c, random_prop(props, rng, 1)))
    return SynGamble(tuple(terms))


_RHS = tuple(Fraction(x) for x in (-2, -1, 0, 0, Fraction(1, 2), 1, 1, Fraction(3, 2), 2))


def random_ineq(props: Sequence[str], rng: random.Random, lang: str = LANG_E, fn_vars=("u", "v", "w")) -> Ineq:
    k = rng.randint(1, 2)
    rel = rng.choice((">=", ">=", ">", "<=", "<", "="))
    rhs = rng.choice(_RHS)
    terms = []
    for _ in range(k):
        c = random_coef(rng, fractions=False)
        if lang == LANG_E:
            item = random_syn_gamble(props, rng, 2)
        elif lang in (LANG_QU, LANG_G):
            item = random_prop(props, rng, 1)
        else:
            item = rng.choice(fn_vars)
        terms.append((c, item))
    if lang == LANG_G and rng.random() < 0.5:
        terms.append((random_coef(rng, fractions=False), random_prop(props, rng, 1)))
    return Ineq(tuple(terms), rel, rhs, lang)


def random_formula(props: Sequence[str], rng: random.Random, lang: str = LANG_E, depth: int = 2, **kw):
    r = rng.random()
    if depth <= 0 or r < 0.35:
        return random_ineq(props, rng, lang, **kw)
    if r < 0.5:
        return Not(random_formula(props, rng, lang, depth - 1, **kw))
    kind = rng.choice((And, And, Or, Implies))
    n = 2 if kind is Implies else rng.randint(2, 3)
    args = [random_formula(props, rng, lang, depth - 1, **kw) for _ in range(n)]
    return Implies(*args) if kind is Implies else kind(tuple(args))


# ------------------------------------------------------------ refutation

def _vec_eval(node, leaf_truth, optimistic: bool):
    if isinstance(node, Ineq):
        return leaf_truth[node][0 if optimistic else 1]
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Not):
        return ~np.asarray(_vec_eval(node.arg, leaf_truth, not optimistic))
    if isinstance(node, And):
        out = True
        for a in node.args:
            out = out & _vec_eval(a, leaf_truth, optimistic)
        return out
    if isinstance(node, Or):
        out = False
        for a in node.args:
            out = out | _vec_eval(a, leaf_truth, optimistic)
        return out
    if isinstance(node, Implies):
        return (~np.asarray(_vec_eval(node.left, leaf_truth, not optimistic))) | \
            _vec_eval(node.right, leaf_truth, optimistic)
    raise TypeError(node)


def _batch_expectations(semantics, V, T, nprng):
    """Float expectations (T, k) of the gambles in rows of ``V`` plus the
    integer parameters needed to rebuild each model exactly."""
    k, A = V.shape

    def weights(shape):
        w = nprng.integers(1, 10, size=shape)
        sparsity = nprng.choice([0.0, 0.3, 0.6], size=shape[:-1] + (1,))
        w = np.where(nprng.random(shape) < sparsity, 0, w)
        dead = w.sum(axis=-1) == 0
        if dead.any():
            idx = np.nonzero(dead)
            pick = nprng.integers(0, A, size=len(idx[0]))
            w[idx + (pick,)] = 1
        return w

    if semantics == "prob":
        w = weights((T, A))
        E = (w @ V.T) / w.sum(axis=1, keepdims=True)
        return E, w
    if semantics == "lowerprob":
        K = 4
        w = weights((T, K, A))
        active = nprng.integers(1, K + 1, size=T)
        E = (w @ V.T) / w.sum(axis=2, keepdims=True)
        E = np.where((np.arange(K)[None, :] < active[:, None])[:, :, None], E, np.inf)
        return E.min(axis=1), (w, active)
    if semantics == "belief":
        F = 4
        nf = nprng.integers(1, F + 1, size=T)
        q = nprng.uniform(0.1, 0.9, size=(T, F, 1))
        bits = nprng.random((T, F, A)) < q
        empty = ~bits.any(axis=2)
        if empty.any():
            idx = np.nonzero(empty)
            bits[idx + (nprng.integers(0, A, size=len(idx[0])),)] = True
        masks = (bits * (1 << np.arange(A))).sum(axis=2)
        w = nprng.integers(1, 10, size=(T, F))
        w = np.where(np.arange(F)[None, :] < nf[:, None], w, 0)
        big = np.full((2 ** A, k), np.inf)
        for i in range(A):
            sel = (np.arange(2 ** A) >> i) & 1 == 1
            big[sel] = np.minimum(big[sel], V[:, i][None, :])
        mins = big[masks]  # (T, F, k)
        E = (w[:, :, None] * mins).sum(axis=1) / w.sum(axis=1, keepdims=True)
        return E, (masks, w)
    w = weights((T, A))
    poss = w / w.max(axis=1, keepdims=True)
    order = np.argsort(-poss, axis=1, kind="stable")
    ps = np.take_along_axis(poss, order, axis=1)
    gaps = ps - np.concatenate([ps[:, 1:], np.zeros((T, 1))], axis=1)
    Xs = V.T[order]  # (T, A, k)
    run = np.maximum.accumulate(Xs, axis=1)
    E = (gaps[:, :, None] * run).sum(axis=1)
    return E, w


def _exact_model(semantics, space, params, t):
    if semantics == "prob":
        w = params[t]
        return ProbabilityMeasure(space, [Fraction(int(x), int(w.sum())) for x in w])
    if semantics == "lowerprob":
        w, active = params
        ms = []
        for r in range(int(active[t])):
            row = w[t, r]
            ms.append([Fraction(int(x), int(row.sum())) for x in row])
        return CredalSet(space, ms)
    if semantics == "belief":
        masks, w = params
        total = int(w[t].sum())
        table = {}
        for U, x in zip(masks[t], w[t]):
            if x:
                table[int(U)] = table.get(int(U), Fraction(0)) + Fraction(int(x), total)
        return MassFunction(space, table)
    w = params[t]
    top = int(w.max())
    return PossibilityMeasure(space, [Fraction(int(x), top) for x in w])


def refute(f, semantics: str, trials: int = 10_000, seed: Optional[int] = None, batch: int = 2_500,
           props: Optional[Sequence[str]] = None):
    """Search random models of the class for one satisfying ``f``.

    Returns the first exact model found, or ``None`` after ``trials``
    models all falsify ``f``.
    """
    if any(isinstance(x, Ineq) and x.lang == LANG_QU for x in leaves(f)):
        f = translate_likelihood(f)
    props = sorted(formula_props(f)) if props is None else list(props)
    space = AtomSpace.atoms(props)
    core = desugar(f)
    ineqs = list(dict.fromkeys(x for x in leaves(core) if isinstance(x, Ineq)))
    gambles = list(dict.fromkeys(g for a in ineqs for _, g in a.terms))
    gidx = {g: i for i, g in enumerate(gambles)}
    if gambles:
        V = np.array([[float(v) for v in realize_gamble(g, space).values] for g in gambles])
    else:
        V = np.zeros((0, len(space)))
    nprng = np.random.default_rng(default_seed() if seed is None else seed)
    done = 0
    while done < trials:
        T = min(batch, trials - done)
        E, params = _batch_expectations(semantics, V, T, nprng) if gambles else (np.zeros((T, 0)), None)
        truth = {}
        for a in ineqs:
            lhs = np.zeros(T)
            for c, g in a.terms:
                lhs = lhs + float(c) * E[:, gidx[g]]
            diff = lhs - float(a.rhs)
            tol = 1e-9 * (1.0 + np.abs(lhs) + abs(float(a.rhs)))
            truth[a] = (diff >= -tol, diff >= tol)
        maybe = np.broadcast_to(np.asarray(_vec_eval(core, truth, True)), (T,))
        for t in np.nonzero(maybe)[0]:
            model = _exact_model(semantics, space, params, int(t)) if params is not None else None
            if model is not None and holds(f, model):
                return model
        done += T
    return None


__all__ = [
    "DEFAULT_SEED", "default_seed", "make_rng", "random_space", "random_probability", "random_credal",
    "random_mass", "random_possibility", "random_model", "random_gamble", "random_prop", "random_coef",
    "random_syn_gamble", "random_ineq", "random_formula", "refute", "MODEL_MAKERS",
]
