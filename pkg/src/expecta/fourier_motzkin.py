"""Fourier-Motzkin elimination, kept as an independent feasibility oracle
for the simplex engine.  Exponential; meant for a handful of variables.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .linsolve import EQ, GT, LinearSystem, Unbounded


def _normalize(coeffs, rhs, strict):
    """Scale a row so its coefficients are coprime integers."""
    vals = [*coeffs, rhs]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1]), strict


def _rows(system: LinearSystem):
    out = set()
    for c in system.constraints:
        strict = c.rel == GT
        out.add(_normalize(c.coeffs, c.rhs, strict))
        if c.rel == EQ:
            out.add(_normalize(tuple(-a for a in c.coeffs), -c.rhs, False))
    n = system.nvars
    for j, nn in enumerate(system.nonneg):
        if nn:
            unit = tuple(Fraction(1 if k == j else 0) for k in range(n))
            out.add(_normalize(unit, Fraction(0), False))
    return out


def _constant_ok(rhs, strict) -> bool:
    return 0 > rhs if strict else 0 >= rhs


def _eliminate(rows, nvars):
    rows = set(rows)
    remaining = set(range(nvars))
    while remaining:
        for coeffs, rhs, strict in list(rows):
            if not any(coeffs) and not _constant_ok(rhs, strict):
                return False
        rows = {r for r in rows if any(r[0])}

        def cost(j):
            pos = sum(1 for r in rows if r[0][j] > 0)
            neg = sum(1 for r in rows if r[0][j] < 0)
            return pos * neg - pos - neg

        j = min(remaining, key=lambda k: (cost(k), k))
        remaining.discard(j)
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        new = {r for r in rows if r[0][j] == 0}
        for pc, pb, ps in pos:
            for nc, nb, ns in neg:
                a, b = pc[j], -nc[j]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                new.add(_normalize(coeffs, b * pb + a * nb, ps or ns))
        rows = new
    return all(_constant_ok(rhs, strict) for _, rhs, strict in rows)


def fm_feasible(system: LinearSystem) -> bool:
    return _eliminate(_rows(system), system.nvars)


def fm_optimum(system: LinearSystem, objective, direction: str = "max"):
    """Optimal value by projection onto the objective.

    Returns ``None`` when infeasible and ``Unbounded()`` when unbounded.
    The projection adds a fresh variable ``t = c.x`` and eliminates the
    original variables first; the surviving rows bound ``t``.
    """
    if not fm_feasible(system):
        return None
    sign = Fraction(1 if direction == "max" else -1)
    n = system.nvars
    rows = set()
    for coeffs, rhs, strict in _rows(system):
        rows.add(_normalize(coeffs + (Fraction(0),), rhs, strict))
    obj = tuple(sign * Fraction(c) for c in objective)
    rows.add(_normalize(obj + (Fraction(-1),), Fraction(0), False))
    rows.add(_normalize(tuple(-c for c in obj) + (Fraction(1),), Fraction(0), False))
    for j in range(n):
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        new = {r for r in rows if r[0][j] == 0}
        for pc, pb, ps in pos:
            for nc, nb, ns in neg:
                a, b = pc[j], -nc[j]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                new.add(_normalize(coeffs, b * pb + a * nb, ps or ns))
        rows = new
    # rows now read  k*t >= rhs ; upper bounds come from k < 0
    upper = None
    for coeffs, rhs, _ in rows:
        k = coeffs[n]
        if k < 0:
            bound = rhs / k
            upper = bound if upper is None else min(upper, bound)
    if upper is None:
        return Unbounded()
    return sign * upper
