"""Randomized checks with hypothesis-generated inputs."""

import random
from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

from expecta.atoms import AtomSpace, Gamble
from expecta.expectation import choquet, expect_prob, lower_expect_bel_lp, mass_expect
from expecta.fourier_motzkin import fm_feasible
from expecta.linsolve import Feasible, Infeasible, LinearSystem, check_certificate, solve
from expecta.logic import parse
from expecta.measures import MassFunction, ProbabilityMeasure, SetFunction, mass_from_belief
from expecta.sampling import random_formula
from expecta.syntax import LANG_E, LANG_F, LANG_G, LANG_QU, show

SPACES = {n: AtomSpace.from_assignments([f"x{i}" for i in range(n)], [{f"x{i}"} for i in range(n)])
          for n in range(1, 6)}

rationals = st.builds(F, st.integers(-6, 6), st.sampled_from([1, 2, 3]))


@st.composite
def gamble_pairs(draw):
    n = draw(st.integers(1, 5))
    space = SPACES[n]
    vals = draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    return space, Gamble(space, tuple(vals))


@st.composite
def masses(draw, space):
    k = draw(st.integers(1, 4))
    sets = draw(st.lists(st.integers(1, space.full), min_size=k, max_size=k))
    weights = draw(st.lists(st.integers(1, 9), min_size=k, max_size=k))
    total = sum(weights)
    table = {}
    for U, w in zip(sets, weights):
        table[U] = table.get(U, F(0)) + F(w, total)
    return MassFunction(space, table)


@given(gamble_pairs(), st.data())
def test_belief_routes_agree(pair, data):
    space, X = pair
    m = data.draw(masses(space))
    lo = mass_expect(m, X, "min")
    assert choquet(m.belief, X) == lo == lower_expect_bel_lp(m, X)
    assert choquet(m.plausibility, X) == mass_expect(m, X, "max") == -mass_expect(m, -X, "min")


@given(gamble_pairs(), st.data())
def test_belief_round_trip(pair, data):
    space, _ = pair
    m = data.draw(masses(space))
    back = mass_from_belief(SetFunction.of(space, m.belief))
    assert back.masses == m.masses


@given(gamble_pairs(), st.data(), rationals, rationals)
def test_probability_affine(pair, data, a, b):
    space, X = pair
    w = data.draw(st.lists(st.integers(0, 5), min_size=len(space), max_size=len(space)).filter(any))
    mu = ProbabilityMeasure(space, [F(x, sum(w)) for x in w])
    assert expect_prob(mu, a * X + b) == a * expect_prob(mu, X) + b


@st.composite
def systems(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 5))
    rows = []
    for _ in range(m):
        coeffs = tuple(draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)))
        rows.append((coeffs, draw(st.sampled_from([">=", ">", "<=", "<", "="])), draw(st.integers(-3, 3))))
    return LinearSystem.build(n, rows, draw(st.booleans()))


@given(systems())
def test_simplex_matches_elimination(s):
    res = solve(s)
    assert isinstance(res, (Feasible, Infeasible))
    assert isinstance(res, Feasible) == fm_feasible(s)
    if isinstance(res, Feasible):
        assert s.satisfied_by(res.witness)
    else:
        assert check_certificate(s, res.certificate)


@given(st.integers(0, 2 ** 32), st.sampled_from([LANG_E, LANG_QU, LANG_G, LANG_F]))
def test_printer_round_trip(seed, lang):
    f = random_formula(["p", "q", "r"], random.Random(seed), lang)
    assert parse(show(f), lang) == f
