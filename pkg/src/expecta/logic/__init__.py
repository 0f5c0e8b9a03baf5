"""Formula languages: parsing, rewriting and evaluation."""

from .parser import language, parse, parse_corpus, parse_gamble, parse_prop, tokenize
from .semantics import (ModelEvaluator, compare, holds, holds_for_functions, holds_in_structure,
                        holds_over_reals)
from .transforms import (DEFAULT_MAX_CLAUSES, Literal, atom_formula, desugar, desugar_ineq, meet_join_all,
                         region_formula, staircase, syntactic_meet_join, to_dnf, to_likelihood,
                         transform_t1, transform_t2, translate_likelihood)

__all__ = [
    "language", "parse", "parse_corpus", "parse_gamble", "parse_prop", "tokenize",
    "ModelEvaluator", "compare", "holds", "holds_for_functions", "holds_in_structure", "holds_over_reals",
    "DEFAULT_MAX_CLAUSES", "Literal", "atom_formula", "desugar", "desugar_ineq", "meet_join_all",
    "region_formula", "staircase", "syntactic_meet_join", "to_dnf", "to_likelihood", "transform_t1",
    "transform_t2", "translate_likelihood",
]
