import os
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from expecta.atoms import AtomSpace
from expecta.sampling import default_seed, make_rng

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return make_rng()


@pytest.fixture
def seed():
    return default_seed()


@pytest.fixture
def three_worlds():
    """w1 = {p}, w2 = {p, q}, w3 = {} over props p, q."""
    return AtomSpace.from_assignments(["p", "q"], [{"p"}, {"p", "q"}, set()])


@pytest.fixture
def pq():
    return AtomSpace.atoms(["p", "q"])


def fr(*xs):
    return tuple(F(x) for x in xs)


class _Verdict:
    def __init__(self, store, number, title):
        self.store, self.number, self.title = store, number, title
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        detail = "; ".join(self.notes)
        if exc_type is not None:
            detail = f"{exc_type.__name__}: {exc}".splitlines()[0] + (f" ({detail})" if detail else "")
        line = f"criterion {self.number:>2}: {status}  {self.title}" + (f" [{detail}]" if detail else "")
        self.store[self.number] = line
        print(line)
        return False


@pytest.fixture
def verdict(request):
    store = request.config.__dict__.setdefault("acceptance_lines", {})
    return lambda number, title: _Verdict(store, number, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
