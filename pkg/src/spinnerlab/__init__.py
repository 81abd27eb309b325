"""Exact models of a fair spinner over a computable infinitesimal field.

The package provides one exact-arithmetic kernel (rational functions in a
formal infinitesimal) and four probability models built on it: the
interval-length minimal model, the hyperfinite counting grid, cylinder
events on the Cantor set, and coin-flip/lottery events over an unlimited
number of trials.  A query language and verification suites tie them
together; see the README for the command-line surface.
"""

from .cantor import CantorEvent, CantorModel, cantor_probability, \
    coherence_check, hausdorff_measure, point_probability
from .errors import DomainError, GeneratorMismatchError, ParseError, \
    QueryTypeError
from .field import Classification, Generator, Kind, NonArchValue, Ordering, \
    Poly, Sign, arith_add, arith_div, arith_mul, classify, compare, \
    parse_value, standard_part
from .intervals import IntervalSet, boolean_combine, dyadic_tail_family, \
    lebesgue_length, normalize, parse_set, sigma_additivity_probe, \
    translate_mod1
from .lottery import CoinEvent, LotteryModel, RegularityWitness, \
    ShiftComparison, archimedean_regularity_witness, coinflip_probability, \
    lottery_ticket_probability, part_whole_check, shift_compare
from .query import EvalResult, Query, evaluate, parse_query, render_query
from .report import PropertyReport
from .spinner import CountForm, FiniteGrid, GridModel, StabilizerResult, \
    SuiteConfig, conditional_probability, finite_grid_stabilizer, \
    grid_count, grid_probability, run_property_suite

__version__ = "0.1.0"

__all__ = [
    "CantorEvent", "CantorModel", "Classification", "CoinEvent", "CountForm",
    "DomainError", "EvalResult", "FiniteGrid", "Generator",
    "GeneratorMismatchError", "GridModel", "IntervalSet", "Kind",
    "LotteryModel", "NonArchValue", "Ordering", "ParseError", "Poly",
    "PropertyReport", "Query", "QueryTypeError", "RegularityWitness",
    "ShiftComparison", "Sign", "StabilizerResult", "SuiteConfig",
    "archimedean_regularity_witness", "arith_add", "arith_div", "arith_mul",
    "boolean_combine", "cantor_probability", "classify", "coherence_check",
    "coinflip_probability", "compare", "conditional_probability",
    "dyadic_tail_family", "evaluate", "finite_grid_stabilizer", "grid_count",
    "grid_probability", "hausdorff_measure", "lebesgue_length",
    "lottery_ticket_probability", "normalize", "parse_query", "parse_set",
    "parse_value", "part_whole_check", "point_probability", "render_query",
    "run_property_suite",
    "shift_compare", "sigma_additivity_probe", "standard_part",
    "translate_mod1",
]
