"""Exact reasoning about expectation under several uncertainty models.

Gambles live on finite spaces of worlds; expectations are computed for
probability measures, finite credal sets, belief functions (via mass
functions) and possibility measures.  Formula languages over expectation
terms, likelihood terms, gambles and functions come with decision
procedures that return exact, re-verified witnesses.
"""

from .atoms import AtomSpace, Gamble, World, combine, extension, indicator, is_comonotonic, realize_gamble
from .coherence import Assessment, Coherent, Incoherent, is_coherent, natural_extension
from .decide import (SEMANTICS, FunctionWitness, SatResult, countermodel, sat, sat_funcineq, sat_gamble,
                     sat_reals, valid, valid_gamble)
from .errors import (CapExceededError, ExpectaError, IncoherenceError, InputError, InvariantBreach,
                     LanguageError, ModelValidationError, NegativeMassError, ParseError)
from .expectation import (Bounds, belief_bounds, choquet, expect_bounds_credal, expect_poss, expect_prob,
                          likelihood, lower_expect_bel_lp, mass_expect, possibility_bounds)
from .linsolve import LinearSystem, check_certificate, optimize, solve
from .logic import holds, parse, parse_gamble, parse_prop, to_dnf, transform_t1, transform_t2
from .measures import (CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure, SetFunction,
                       event_bounds, mass_from_belief, moebius, validate_model)
from .syntax import show

__version__ = "0.1.0"

__all__ = [
    "AtomSpace", "Gamble", "World", "combine", "extension", "indicator", "is_comonotonic",
    "realize_gamble", "Assessment", "Coherent", "Incoherent", "is_coherent", "natural_extension",
    "SEMANTICS", "FunctionWitness", "SatResult", "countermodel", "sat", "sat_funcineq",
    "sat_gamble", "sat_reals", "valid", "valid_gamble", "CapExceededError", "ExpectaError",
    "IncoherenceError", "InputError", "InvariantBreach", "LanguageError", "ModelValidationError",
    "NegativeMassError", "ParseError", "Bounds", "belief_bounds", "choquet", "expect_bounds_credal",
    "expect_poss", "expect_prob", "likelihood", "lower_expect_bel_lp", "mass_expect",
    "possibility_bounds", "LinearSystem", "check_certificate", "optimize", "solve", "holds",
    "parse", "parse_gamble", "parse_prop", "to_dnf", "transform_t1", "transform_t2", "CredalSet",
    "MassFunction", "PossibilityMeasure", "ProbabilityMeasure", "SetFunction", "event_bounds",
    "mass_from_belief", "moebius", "validate_model", "show",
]
