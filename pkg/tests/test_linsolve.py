from fractions import Fraction as F

import pytest

from expecta.errors import InputError
from expecta.fourier_motzkin import fm_feasible, fm_optimum
from expecta.linsolve import (Certificate, Feasible, Infeasible, LinearSystem, Optimum, Unbounded,
                              check_certificate, dump_system, load_system, optimize, solve, strict_margin)


def system(nvars, rows, nonneg=False):
    return LinearSystem.build(nvars, rows, nonneg)


def test_contradictory_bounds():
    s = system(1, [((1,), ">=", 1), ((-1,), ">=", 0)])
    res = solve(s)
    assert isinstance(res, Infeasible)
    assert check_certificate(s, res.certificate)
    assert check_certificate(s, Certificate((F(1), F(1)), (F(0),)))


def test_strict_split():
    s = system(2, [((1, 1), "=", 1), ((1, 0), ">=", 0), ((0, 1), ">=", 0), ((1, -1), ">", 0)])
    res = solve(s)
    assert isinstance(res, Feasible)
    x, y = res.witness
    assert x + y == 1 and x > y >= 0
    assert s.satisfied_by(res.witness)


def test_trivial_row():
    res = solve(system(1, [((0,), ">=", 0)]))
    assert isinstance(res, Feasible)


def test_optimize():
    assert optimize(system(1, [((1,), "<=", 1), ((1,), ">=", 0)]), (1,), "max").value == 1
    assert isinstance(optimize(system(1, [((1,), ">=", 0)]), (1,), "max"), Unbounded)
    res = optimize(system(2, [((1, 0), ">=", F(1, 3)), ((0, 1), ">=", F(1, 4))], nonneg=True), (1, 1), "min")
    assert isinstance(res, Optimum) and res.value == F(7, 12)
    with pytest.raises(InputError):
        optimize(system(1, [((1,), ">", 0)]), (1,), "max")


def test_bad_certificates():
    s = system(1, [((1,), ">=", 1), ((-1,), ">=", 0)])
    assert not check_certificate(s, Certificate((F(-1), F(1)), (F(0),)))
    assert not check_certificate(s, Certificate((F(0), F(0)), (F(0),)))


def test_strict_infeasible_certificate():
    s = system(1, [((1,), ">", 0), ((-1,), ">=", 0)])
    res = solve(s)
    assert isinstance(res, Infeasible)
    assert check_certificate(s, res.certificate)
    assert not fm_feasible(s)


def test_nonneg_certificate():
    s = system(2, [((1, 1), "<=", -1)], nonneg=True)
    res = solve(s)
    assert isinstance(res, Infeasible) and check_certificate(s, res.certificate)


def test_margin():
    assert strict_margin(system(1, [((1,), ">", 0), ((1,), "<", 1)])) == F(1, 2)
    assert isinstance(strict_margin(system(1, [((1,), ">", 0)])), Unbounded)
    assert strict_margin(system(1, [((1,), ">", 0), ((1,), "<=", 0)])) == 0
    assert strict_margin(system(1, [((1,), ">", 1), ((1,), "<=", 0)])) is None


def test_dump_round_trip():
    s = system(3, [((1, F(-1, 2), 0), ">", 2), ((0, 1, 1), "=", F(1, 3))], nonneg=True)
    text = dump_system(s)
    assert "1 -1/2 0 > 2" in text
    assert load_system(text) == s


def test_fm_optimum():
    s = system(2, [((1, 0), "<=", 2), ((0, 1), "<=", 3), ((1, 1), "<=", 4)], nonneg=True)
    assert fm_optimum(s, (1, 1), "max") == 4
    assert optimize(s, (1, 1), "max").value == 4
    assert isinstance(fm_optimum(system(1, [((1,), ">=", 0)]), (1,), "max"), Unbounded)
