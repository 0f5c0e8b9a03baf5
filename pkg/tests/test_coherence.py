from fractions import Fraction as F

import pytest

from expecta.atoms import AtomSpace, Gamble, indicator
from expecta.coherence import Assessment, is_coherent, natural_extension
from expecta.errors import IncoherenceError
from expecta.expectation import expect_bounds_credal
from expecta.measures import CredalSet


@pytest.fixture
def w3():
    return AtomSpace.from_assignments(["a", "b"], [{"a"}, {"b"}, {"a", "b"}], ids=["w1", "w2", "w3"])


def test_incoherent_demands():
    s = AtomSpace.atoms(["p"])
    a = Assessment(s, ((indicator(0b01, s), F(1, 2)), (indicator(0b10, s), F(3, 4))))
    verdict = is_coherent(a)
    assert not verdict.coherent
    assert len(verdict.multipliers) == len(a.augmented())
    assert verdict.multipliers[verdict.index] == 1


def test_constant_assessed_too_high():
    s = AtomSpace.atoms(["p"])
    assert not is_coherent(Assessment(s, ((Gamble.constant(s, 0), F(1)),))).coherent


def test_credal_assessment_coherent(w3):
    P = CredalSet(w3, [[0, F(3, 8), F(5, 8)], [F(5, 8), 0, F(3, 8)], [F(3, 8), F(5, 8), 0]])
    Xs = [Gamble(w3, (1, 2, 3)), Gamble(w3, (0, -1, 4)), indicator(0b011, w3)]
    a = Assessment(w3, tuple((X, expect_bounds_credal(P, X).lower) for X in Xs))
    assert is_coherent(a).coherent
    for X, x in a.items:
        assert natural_extension(a, X) == x
    Y = Gamble(w3, (2, 0, 1))
    assert natural_extension(a, Y) <= expect_bounds_credal(P, Y).lower


def test_vacuous_extension(w3):
    a = Assessment(w3, ())
    assert natural_extension(a, Gamble(w3, (4, -2, 7))) == -2


def test_determination_value(w3):
    X = Gamble(w3, (1, 2, 3))
    assert natural_extension(Assessment(w3, ((X, F(13, 8)),)), X) == F(13, 8)


def test_extension_of_incoherent_raises():
    s = AtomSpace.atoms(["p"])
    a = Assessment(s, ((Gamble.constant(s, 0), F(1)),))
    with pytest.raises(IncoherenceError):
        natural_extension(a, Gamble(s, (1, 0)))
