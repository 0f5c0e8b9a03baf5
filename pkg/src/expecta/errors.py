"""Exception hierarchy.

``InputError`` covers everything a caller can fix by changing the input
(bad syntax, unknown propositions, invalid models, exceeded caps).
``InvariantBreach`` is raised when an internal cross-check fails; it
always indicates a bug rather than bad input.
"""

from __future__ import annotations


class ExpectaError(Exception):
    pass


class InputError(ExpectaError):
    pass


class UnknownPropositionError(InputError):
    def __init__(self, name: str):
        super().__init__(f"unknown proposition {name!r}")
        self.name = name


class SpaceMismatchError(InputError):
    def __init__(self, what: str = "operands"):
        super().__init__(f"{what} live on different spaces")


class ForeignWorldError(InputError):
    pass


class ModelValidationError(InputError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid model: {lines}")


class NegativeMassError(InputError):
    """Raised by Moebius inversion when the input is not a belief function."""

    def __init__(self, subset: int, mass, label: str = "", negatives=()):
        self.subset = subset
        self.mass = mass
        self.negatives = tuple(negatives) or ((subset, mass),)
        where = label or bin(subset)
        super().__init__(f"negative mass {mass} on {where}")


class ParseError(InputError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class LanguageError(InputError):
    """A construct from one formula language used inside another."""


class CapExceededError(InputError):
    pass


class IncoherenceError(InputError):
    def __init__(self, index: int, multipliers):
        self.index = index
        self.multipliers = tuple(multipliers)
        super().__init__(f"assessment is incoherent (witness index {index})")


class InvariantBreach(ExpectaError):
    pass
