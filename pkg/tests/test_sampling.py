import random

from expecta.logic import holds, parse
from expecta.measures import validate_model
from expecta.sampling import (default_seed, random_credal, random_formula, random_mass, random_possibility,
                              random_probability, random_space, refute)
from expecta.atoms import AtomSpace


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("EXPECTA_SEED", "17")
    assert default_seed() == 17
    monkeypatch.delenv("EXPECTA_SEED")
    assert isinstance(default_seed(), int)


def test_generated_models_are_valid():
    rng = random.Random(3)
    space = AtomSpace.atoms(["p", "q"])
    for _ in range(50):
        for make in (random_probability, random_credal, random_mass, random_possibility):
            assert validate_model(make(space, rng)) == []
        assert len(random_space(rng, ["p", "q", "r"])) >= 1


def test_refute_finds_models_for_satisfiable():
    f = parse("E(p) >= 1 & E(!p) >= 1")
    m = refute(f, "possibility", trials=2000, seed=1)
    assert m is not None and holds(f, m)
    assert refute(f, "prob", trials=2000, seed=1) is None


def test_formula_generator_is_deterministic():
    a = random_formula(["p", "q"], random.Random(5))
    b = random_formula(["p", "q"], random.Random(5))
    assert a == b
