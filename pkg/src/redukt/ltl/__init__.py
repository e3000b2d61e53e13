"""LTL syntax, parsing, lasso semantics and translation to TGBA."""
from ..alphabet import ApSet
from .parser import parse_formula, read_suite
from .semantics import eval_lasso, eval_on_word
from .syntax import (FALSE, TRUE, And, Ap, Bottom, Finally, Formula, Globally,
                     Implies, Next, Not, Or, Release, Top, Until,
                     atomic_propositions, check_aps, depth, is_x_free, negate, subformulas,
                     to_nnf, to_text)
from .translate import translate

__all__ = [
    "ApSet", "parse_formula", "read_suite", "eval_lasso", "eval_on_word",
    "FALSE", "TRUE", "And", "Ap", "Bottom", "Finally", "Formula", "Globally",
    "Implies", "Next", "Not", "Or", "Release", "Top", "Until",
    "atomic_propositions", "check_aps", "depth", "is_x_free", "negate", "subformulas",
    "to_nnf", "to_text", "translate",
]
