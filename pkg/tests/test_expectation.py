from fractions import Fraction as F

import pytest

from expecta.atoms import AtomSpace, Gamble, indicator
from expecta.errors import InputError, InvariantBreach
from expecta.expectation import (belief_bounds, choquet, expect_bounds_credal, expect_poss, expect_prob,
                                 expectation, likelihood, lower_expect_bel_lp, mass_expect, possibility_bounds,
                                 three_routes)
from expecta.measures import CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure


@pytest.fixture
def w3():
    return AtomSpace.from_assignments(["a", "b"], [{"a"}, {"b"}, {"a", "b"}], ids=["w1", "w2", "w3"])


DETERMINATION = [[0, F(3, 8), F(5, 8)], [F(5, 8), 0, F(3, 8)], [F(3, 8), F(5, 8), 0]]


def test_expect_prob(w3):
    mu = ProbabilityMeasure(w3, [F(5, 8), 0, F(3, 8)])
    assert expect_prob(mu, Gamble(w3, (1, 2, 3))) == F(7, 4)
    assert expect_prob(mu, Gamble.constant(w3, F(-2, 3))) == F(-2, 3)
    assert expect_prob(mu, indicator(0b110, w3)) == mu.prob(0b110)


def test_credal_bounds(w3, three_worlds):
    X = Gamble(w3, (1, 2, 3))
    assert expect_bounds_credal(CredalSet(w3, DETERMINATION), X).lower == F(13, 8)
    bigger = CredalSet(w3, DETERMINATION + [[F(5, 8), F(3, 8), 0]])
    assert expect_bounds_credal(bigger, X).lower == F(11, 8)
    P1 = CredalSet(three_worlds, [[F(1, 3), F(2, 3), 0], [0, F(1, 3), F(2, 3)], [F(2, 3), 0, F(1, 3)]])
    assert expect_bounds_credal(P1, Gamble(three_worlds, (1, 2, 0))).lower == F(2, 3)


def test_belief_expectation(w3):
    vacuous = MassFunction(w3, {w3.full: 1})
    X = Gamble(w3, (1, 2, 3))
    assert choquet(vacuous.belief, X) == 1
    assert lower_expect_bel_lp(vacuous, X) == 1
    Y = Gamble(w3, (0, 1, 2))
    assert mass_expect(vacuous, Y, "min") == 0
    assert mass_expect(vacuous, Y, "max") == 2
    m = MassFunction(w3, {0b011: F(1, 2), 0b100: F(1, 2)})
    assert mass_expect(m, X, "min") == 2
    assert three_routes(m, X) == (2, 2, 2)
    assert belief_bounds(m, X) == (2, F(5, 2))


def test_additive_cases(w3):
    mu = ProbabilityMeasure(w3, [F(1, 6), F(1, 3), F(1, 2)])
    X = Gamble(w3, (4, -1, F(1, 2)))
    singletons = MassFunction(w3, {1 << i: p for i, p in enumerate(mu.values)})
    assert choquet(mu.prob, X) == expect_prob(mu, X)
    assert mass_expect(singletons, X, "min") == mass_expect(singletons, X, "max") == expect_prob(mu, X)
    assert lower_expect_bel_lp(singletons, X) == expect_prob(mu, X)
    m = MassFunction(w3, {0b011: F(1, 4), 0b110: F(3, 4)})
    for U in range(8):
        assert lower_expect_bel_lp(m, indicator(U, w3)) == m.belief(U)


def test_possibility_expectation(w3):
    P = PossibilityMeasure(w3, [1, F(1, 2), F(1, 4)])
    assert expect_poss(P, Gamble(w3, (0, 1, 2))) == F(3, 4)
    assert expect_poss(P, Gamble.constant(w3, 5)) == 5
    lo, hi = possibility_bounds(P, Gamble(w3, (0, 1, 2)))
    assert hi == F(3, 4) and lo == 0


def test_choquet_padding(w3):
    m = MassFunction(w3, {0b011: F(1, 3), 0b101: F(2, 3)})
    X = Gamble(w3, (3, -1, 2))
    assert choquet(m.belief, X, levels=[F(1, 2), 10, -7]) == choquet(m.belief, X)


def test_choquet_rejects_unnormalized(w3):
    with pytest.raises(InputError):
        choquet(lambda U: F(1, 2), Gamble(w3, (1, 2, 3)))


def test_dispatchers(w3):
    X = Gamble(w3, (1, 2, 3))
    mu = ProbabilityMeasure(w3, [F(5, 8), 0, F(3, 8)])
    assert expectation(mu, X) == F(7, 4)
    assert expectation(CredalSet(w3, DETERMINATION), X) == F(13, 8)
    assert likelihood(PossibilityMeasure(w3, [1, 0, 0]), 0b110) == 0
    with pytest.raises(TypeError):
        expectation(object(), X)


def test_three_routes_detects_mismatch(w3, monkeypatch):
    import expecta.expectation as ex
    m = MassFunction(w3, {w3.full: 1})
    monkeypatch.setattr(ex, "lower_expect_bel_lp", lambda m, X: F(99))
    with pytest.raises(InvariantBreach):
        ex.three_routes(m, Gamble(w3, (1, 2, 3)))
