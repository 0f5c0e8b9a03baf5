"""Exact rational linear feasibility and optimization.

Systems mix weak (``>=``, ``=``) and strict (``>``) rows over free or
nonnegative variables.  The engine is a dense two-phase simplex with
Bland's rule.  Strict rows share a single slack ``d`` that is maximized
(capped at 1 so the auxiliary problem stays bounded); the system is
feasible exactly when that maximum is positive.

Infeasibility comes with a certificate: multipliers ``row`` for the
constraints and ``bound`` for the nonnegativity of variables such that
``row @ A + bound == 0`` and either ``row @ b > 0`` or, when some strict
row has a positive multiplier, ``row @ b >= 0``.  Certificates are found
by solving the corresponding alternative system with the same engine.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError

try:  # gmpy2 rationals are a drop-in, much faster number type for pivoting
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

log = logging.getLogger(__name__)

GE, GT, EQ = ">=", ">", "="
_FLIP = {"<=": GE, "<": GT}


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rel: str
    rhs: Fraction

    def holds(self, x: Sequence) -> bool:
        lhs = sum((a * v for a, v in zip(self.coeffs, x)), Fraction(0))
        if self.rel == GE:
            return lhs >= self.rhs
        if self.rel == GT:
            return lhs > self.rhs
        return lhs == self.rhs


def row(coeffs, rel, rhs) -> Constraint:
    """Normalize one constraint; ``<=`` and ``<`` are flipped to ``>=``/``>``."""
    coeffs = tuple(Fraction(c) for c in coeffs)
    rhs = Fraction(rhs)
    if rel in _FLIP:
        return Constraint(tuple(-c for c in coeffs), _FLIP[rel], -rhs)
    if rel not in (GE, GT, EQ):
        raise InputError(f"unknown relation {rel!r}")
    return Constraint(coeffs, rel, rhs)


@dataclass(frozen=True)
class LinearSystem:
    nvars: int
    constraints: tuple
    nonneg: tuple = ()

    def __post_init__(self):
        cons = tuple(c if isinstance(c, Constraint) else row(*c) for c in self.constraints)
        for c in cons:
            if len(c.coeffs) != self.nvars:
                raise InputError(f"constraint has {len(c.coeffs)} coefficients, expected {self.nvars}")
        nonneg = tuple(bool(b) for b in self.nonneg) or (False,) * self.nvars
        if len(nonneg) != self.nvars:
            raise InputError("nonnegativity flags do not match the variable count")
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "nonneg", nonneg)

    @classmethod
    def build(cls, nvars: int, rows, nonneg=False) -> "LinearSystem":
        flags = (nonneg,) * nvars if isinstance(nonneg, bool) else tuple(nonneg)
        return cls(nvars, tuple(rows), flags)

    @property
    def has_strict(self) -> bool:
        return any(c.rel == GT for c in self.constraints)

    def satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.nvars:
            return False
        if any(flag and v < 0 for flag, v in zip(self.nonneg, x)):
            return False
        return all(c.holds(x) for c in self.constraints)

    def weakened(self) -> "LinearSystem":
        cons = tuple(Constraint(c.coeffs, GE if c.rel == GT else c.rel, c.rhs) for c in self.constraints)
        return LinearSystem(self.nvars, cons, self.nonneg)


@dataclass(frozen=True)
class Certificate:
    row: tuple
    bound: tuple


@dataclass(frozen=True)
class Feasible:
    witness: tuple
    feasible = True


@dataclass(frozen=True)
class Infeasible:
    certificate: Optional[Certificate]
    feasible = False


@dataclass(frozen=True)
class Optimum:
    value: Fraction
    witness: tuple


@dataclass(frozen=True)
class Unbounded:
    pass


# ------------------------------------------------------------ simplex core

class _Tableau:
    """max c.z s.t. M z = r, z >= 0, with r >= 0 after row sign fixes."""

    def __init__(self, rows, rhs, ncols):
        self.ncols = ncols
        self.T = []
        self.basis = []
        self.artificial = set()
        extra = []
        for i, (coeffs, b) in enumerate(zip(rows, rhs)):
            if b < 0:
                coeffs = [-v for v in coeffs]
                b = -b
            self.T.append(list(coeffs) + [b])
        # identity columns usable as a starting basis
        unit = {}
        for j in range(ncols):
            nz = [i for i, r in enumerate(self.T) if r[j]]
            if len(nz) == 1 and self.T[nz[0]][j] == 1 and nz[0] not in unit:
                unit[nz[0]] = j
        for i in range(len(self.T)):
            if i in unit:
                self.basis.append(unit[i])
            else:
                self.basis.append(None)
                extra.append(i)
        for k, i in enumerate(extra):
            col = ncols + k
            self.artificial.add(col)
            self.basis[i] = col
        width = ncols + len(extra)
        for i, r in enumerate(self.T):
            b = r.pop()
            r.extend([_num(0)] * len(extra))
            r.append(b)
        for i in extra:
            self.T[i][self.basis[i]] = _num(1)
        self.width = width
        self.allowed = [True] * width
        self.pivots = 0

    def _set_objective(self, cost):
        obj = list(cost) + [_num(0)]
        for i, j in enumerate(self.basis):
            cj = obj[j]
            if cj:
                r = self.T[i]
                for k in range(self.width + 1):
                    if r[k]:
                        obj[k] -= cj * r[k]
        self.obj = obj

    def _pivot(self, r, c):
        self.pivots += 1
        prow = self.T[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            prow = [v * inv if v else v for v in prow]
            self.T[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, other in enumerate(self.T):
            if i == r:
                continue
            f = other[c]
            if f:
                for k in nz:
                    other[k] -= f * prow[k]
        f = self.obj[c]
        if f:
            for k in nz:
                self.obj[k] -= f * prow[k]
        self.basis[r] = c

    def _run(self) -> bool:
        """Bland-rule iterations; returns False when unbounded."""
        T, obj, allowed = self.T, self.obj, self.allowed
        while True:
            enter = -1
            for j in range(self.width):
                if allowed[j] and obj[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return True
            best = None
            for i, r in enumerate(T):
                a = r[enter]
                if a > 0:
                    ratio = r[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self._pivot(best[1], enter)

    def phase_one(self) -> bool:
        if not self.artificial:
            return True
        cost = [_num(-1) if j in self.artificial else _num(0) for j in range(self.width)]
        self._set_objective(cost)
        self._run()
        if self.obj[-1] != 0:
            return False
        # drive zero-level artificials out of the basis, dropping redundant rows
        keep = []
        for i, j in enumerate(self.basis):
            if j in self.artificial:
                r = self.T[i]
                col = next((k for k in range(self.ncols) if r[k]), None)
                if col is None:
                    continue
                self._pivot(i, col)
            keep.append(i)
        self.T = [self.T[i] for i in keep]
        self.basis = [self.basis[i] for i in keep]
        for j in self.artificial:
            self.allowed[j] = False
        return True

    def phase_two(self, cost) -> bool:
        cost = list(cost) + [_num(0)] * (self.width - len(cost))
        self._set_objective(cost)
        return self._run()

    def value(self):
        return -self.obj[-1]

    def solution(self):
        z = [_num(0)] * self.ncols
        for i, j in enumerate(self.basis):
            if j < self.ncols:
                z[j] = self.T[i][-1]
        return z


def _standard_form(system: LinearSystem, extra_rows=()):
    """Translate to equality form over nonnegative columns.

    Returns the tableau plus a function mapping a column solution back
    to values of the original variables.
    """
    cols = []  # (var index, sign)
    for j, nn in enumerate(system.nonneg):
        cols.append((j, 1))
        if not nn:
            cols.append((j, -1))
    cons = list(system.constraints) + list(extra_rows)
    nsurplus = sum(1 for c in cons if c.rel != EQ)
    ncols = len(cols) + nsurplus
    rows, rhs = [], []
    s = len(cols)
    for c in cons:
        r = [_num(c.coeffs[j]) * sign if c.coeffs[j] else _num(0) for j, sign in cols]
        r.extend([_num(0)] * nsurplus)
        if c.rel != EQ:
            r[s] = _num(-1)
            s += 1
        rows.append(r)
        rhs.append(_num(c.rhs))

    def back(z):
        x = [Fraction(0)] * system.nvars
        for (j, sign), v in zip(cols, z):
            if v:
                x[j] += sign * Fraction(int(v.numerator), int(v.denominator))
        return tuple(x)

    def lift(cost):
        return [_num(cost[j]) * sign for j, sign in cols]

    return _Tableau(rows, rhs, ncols), back, lift


def _feasible_point(system: LinearSystem):
    tab, back, _ = _standard_form(system)
    if not tab.phase_one():
        return None
    return back(tab.solution())


def _check_objective(system, objective):
    if len(objective) != system.nvars:
        raise InputError("objective length does not match the variable count")
    if system.has_strict:
        raise InputError("optimize does not accept strict constraints")


def optimize(system: LinearSystem, objective, direction: str = "max", certify: bool = True):
    _check_objective(system, objective)
    if direction not in ("max", "min"):
        raise InputError(f"unknown direction {direction!r}")
    sign = 1 if direction == "max" else -1
    cost = [Fraction(c) * sign for c in objective]
    tab, back, lift = _standard_form(system)
    if not tab.phase_one():
        return Infeasible(_certificate(system) if certify else None)
    if not tab.phase_two(lift(cost)):
        return Unbounded()
    x = back(tab.solution())
    value = sum((Fraction(c) * v for c, v in zip(objective, x)), Fraction(0))
    return Optimum(value, x)


def solve(system: LinearSystem, certify: bool = True):
    """Decide feasibility; returns ``Feasible`` or ``Infeasible``."""
    if not system.has_strict:
        x = _feasible_point(system)
        if x is None:
            return Infeasible(_certificate(system) if certify else None)
        return Feasible(x)
    n = system.nvars
    rows = []
    for c in system.constraints:
        if c.rel == GT:
            rows.append(Constraint(c.coeffs + (Fraction(-1),), GE, c.rhs))
        else:
            rows.append(Constraint(c.coeffs + (Fraction(0),), c.rel, c.rhs))
    rows.append(Constraint((Fraction(0),) * n + (Fraction(-1),), GE, Fraction(-1)))
    aux = LinearSystem(n + 1, tuple(rows), system.nonneg + (True,))
    res = optimize(aux, (0,) * n + (1,), "max", certify=False)
    if isinstance(res, Optimum) and res.value > 0:
        return Feasible(res.witness[:n])
    if isinstance(res, Unbounded):  # cannot happen with the cap on the slack
        raise AssertionError("slack problem unbounded")
    if not certify:
        return Infeasible(None)
    return Infeasible(_certificate(system, weak_feasible=isinstance(res, Optimum)))


def strict_margin(system: LinearSystem):
    """Sup of the shared slack over the weak relaxation, uncapped.

    Returns ``None`` if even the relaxation with zero slack is infeasible
    and ``Unbounded()`` when the slack can grow without limit.
    """
    n = system.nvars
    rows = []
    for c in system.constraints:
        extra = Fraction(-1) if c.rel == GT else Fraction(0)
        rel = GE if c.rel == GT else c.rel
        rows.append(Constraint(c.coeffs + (extra,), rel, c.rhs))
    aux = LinearSystem(n + 1, tuple(rows), system.nonneg + (True,))
    res = optimize(aux, (0,) * n + (1,), "max", certify=False)
    if isinstance(res, Infeasible):
        return None
    if isinstance(res, Unbounded):
        return res
    return res.value


# ------------------------------------------------------------ certificates

def _certificate(system: LinearSystem, weak_feasible: bool = False) -> Optional[Certificate]:
    """Solve the alternative system for infeasibility multipliers.

    Unknowns are one multiplier per constraint (sign-free for equalities)
    followed by one per nonnegative variable.
    """
    cons = system.constraints
    m = len(cons)
    bound_vars = [j for j, nn in enumerate(system.nonneg) if nn]
    nunk = m + len(bound_vars)
    flags = tuple(c.rel != EQ for c in cons) + (True,) * len(bound_vars)
    rows = []
    for j in range(system.nvars):
        coeffs = [c.coeffs[j] for c in cons] + [Fraction(1 if b == j else 0) for b in bound_vars]
        rows.append(Constraint(tuple(coeffs), EQ, Fraction(0)))
    b = tuple(c.rhs for c in cons) + (Fraction(0),) * len(bound_vars)
    if weak_feasible:
        strict = tuple(Fraction(1 if c.rel == GT else 0) for c in cons) + (Fraction(0),) * len(bound_vars)
        rows.append(Constraint(strict, GE, Fraction(1)))
        rows.append(Constraint(b, GE, Fraction(0)))
    else:
        rows.append(Constraint(b, GE, Fraction(1)))
    alt = LinearSystem(nunk, tuple(rows), flags)
    x = _feasible_point(alt)
    if x is None:
        log.warning("no certificate found for an infeasible system")
        return None
    bound = [Fraction(0)] * system.nvars
    for k, j in enumerate(bound_vars):
        bound[j] = x[m + k]
    cert = Certificate(tuple(x[:m]), tuple(bound))
    if not check_certificate(system, cert):  # pragma: no cover
        log.warning("alternative-system certificate failed its own check")
        return None
    return cert


def check_certificate(system: LinearSystem, cert: Certificate) -> bool:
    cons = system.constraints
    if len(cert.row) != len(cons) or len(cert.bound) != system.nvars:
        raise InputError("certificate dimensions do not match the system")
    sigma = [Fraction(v) for v in cert.row]
    tau = [Fraction(v) for v in cert.bound]
    for s, c in zip(sigma, cons):
        if c.rel != EQ and s < 0:
            return False
    for t, nn in zip(tau, system.nonneg):
        if t < 0 or (t != 0 and not nn):
            return False
    for j in range(system.nvars):
        if sum((s * c.coeffs[j] for s, c in zip(sigma, cons)), Fraction(0)) + tau[j] != 0:
            return False
    sb = sum((s * c.rhs for s, c in zip(sigma, cons)), Fraction(0))
    strict_used = any(s > 0 for s, c in zip(sigma, cons) if c.rel == GT)
    return sb >= 0 if strict_used else sb > 0


# ------------------------------------------------------------ text dump

def dump_system(system: LinearSystem) -> str:
    """One constraint per line: ``c1 c2 ... cn REL rhs``."""
    from .syntax import fmt_rat

    lines = []
    if any(system.nonneg):
        lines.append("# nonneg " + " ".join(str(j) for j, f in enumerate(system.nonneg) if f))
    for c in system.constraints:
        lines.append(" ".join([*(fmt_rat(v) for v in c.coeffs), c.rel, fmt_rat(c.rhs)]))
    return "\n".join(lines) + "\n"


def load_system(text: str, nvars: Optional[int] = None) -> LinearSystem:
    rows, nonneg_idx = [], set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "nonneg":
                nonneg_idx.update(int(p) for p in parts[1:])
            continue
        parts = line.split()
        if len(parts) < 2:
            raise InputError(f"malformed constraint line: {raw!r}")
        try:
            rows.append(row([Fraction(p) for p in parts[:-2]], parts[-2], Fraction(parts[-1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed constraint line: {raw!r}") from exc
    if nvars is None:
        nvars = len(rows[0].coeffs) if rows else 0
    flags = tuple(j in nonneg_idx for j in range(nvars))
    return LinearSystem(nvars, tuple(rows), flags)
