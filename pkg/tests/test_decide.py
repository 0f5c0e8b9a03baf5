from fractions import Fraction as F

import pytest

from expecta.atoms import realize_gamble
from expecta.decide import countermodel, sat, sat_funcineq, sat_gamble, sat_reals, valid, valid_gamble
from expecta.errors import CapExceededError, LanguageError
from expecta.expectation import expect_bounds_credal
from expecta.logic import holds, holds_in_structure, parse
from expecta.measures import CredalSet, MassFunction, validate_model

SEMANTICS = ("prob", "lowerprob", "belief", "possibility")


def test_lowerprob_example():
    f = parse("2*E(p + q) > 1")
    res = sat(f, "lowerprob")
    assert res.status == "SAT"
    assert isinstance(res.witness, CredalSet) and holds(f, res.witness)
    assert validate_model(res.witness) == []


def test_lowerprob_low_side(three_worlds):
    P2 = CredalSet(three_worlds, [[F(1, 3), F(2, 3), 0], [0, F(1, 3), F(2, 3)], [F(2, 3), 0, F(1, 3)],
                                  [F(1, 3), 0, F(2, 3)]])
    X = realize_gamble(parse("E(p + q) >= 0").terms[0][1], three_worlds)
    assert expect_bounds_credal(P2, X).lower == F(1, 3)
    assert holds(parse("2*E(p + q) < 1"), P2)
    assert sat(parse("2*E(p + q) < 1"), "lowerprob").sat


@pytest.mark.parametrize("semantics", SEMANTICS[:3])
def test_partition_contradiction(semantics):
    assert not sat(parse("E(p) >= 1 & E(!p) >= 1"), semantics).sat


def test_upper_measure_allows_both():
    assert sat(parse("E(p) >= 1 & E(!p) >= 1"), "possibility").sat


def test_belief_vs_possibility():
    f = parse("E(p|q) >= 1 & E(p) <= 0 & E(q) <= 0")
    res = sat(f, "belief")
    assert res.sat and isinstance(res.witness, MassFunction)
    assert not sat(f, "possibility").sat


@pytest.mark.parametrize("semantics", SEMANTICS)
def test_normalization_valid(semantics):
    assert valid(parse("E(true) = 1"), semantics)
    assert valid(parse("E(false) = 0"), semantics)


def test_additivity_only_for_prob():
    f = parse("E(p) + E(!p) = 1")
    assert valid(f, "prob")
    m = countermodel(f, "belief")
    assert m is not None and not holds(f, m)
    assert not valid(f, "lowerprob")


def test_superadditivity():
    f = parse("E(p + q) >= E(p) + E(q)")
    for s in ("prob", "lowerprob", "belief"):
        assert valid(f, s)
    assert not valid(f, "possibility")


def test_qu_input_is_translated():
    f = parse("L(p) + L(!p) < 1", "QU")
    assert not sat(f, "prob").sat
    assert sat(f, "belief").sat


def test_caps():
    f = parse("E(a) + E(b) + E(c) + E(d) + E(e) >= 0")
    with pytest.raises(CapExceededError):
        sat(f, "prob")
    assert sat(f, "prob", max_props=5).sat
    g = parse("E(a) + E(b) + E(c) + E(d) >= 1")
    with pytest.raises(CapExceededError):
        sat(g, "possibility")
    assert sat(g, "possibility", allow_large=True).sat


def test_wrong_language():
    with pytest.raises(LanguageError):
        sat(parse("p >= 0", "G"), "prob")
    with pytest.raises(LanguageError):
        sat(parse("E(p) >= 0"), "upper")


def test_gamble_sat():
    assert sat_gamble(parse("p + !p >= 1", "G")).sat
    assert not sat_gamble(parse("!(p >= 0)", "G")).sat
    res = sat_gamble(parse("!(2*p - q >= 0)", "G"))
    assert res.sat and [w.id for w in res.witness.worlds] == ["!p&q"]
    assert holds_in_structure(parse("!(2*p - q >= 0)", "G"), res.witness)
    assert valid_gamble(parse("(p | q) >= p", "G"))
    assert not valid_gamble(parse("p >= q", "G"))


def test_function_inequalities():
    assert not sat_funcineq(parse("v >= 1 & !(v >= 1)", "F")).sat
    res = sat_funcineq(parse("!(v <= 0) & !(v >= 0)", "F"))
    assert res.sat and res.witness.size == 2
    vals = res.witness.assignment["v"]
    assert max(vals) > 0 > min(vals)
    assert not sat_reals(parse("!(v <= 0) & !(v >= 0)", "F")).sat
    res = sat_funcineq(parse("v1 + v2 >= 1", "F"))
    assert res.sat and res.witness.size == 1


def test_on_system_hook():
    seen = []
    sat(parse("E(p) > 1/2"), "prob", on_system=seen.append)
    assert seen and seen[0].has_strict
