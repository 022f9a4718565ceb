"""Semantic kernel for a small computational type theory.

An untyped term language with a fueled evaluator; membership and
equality checkers that read types as relations of canonical witnesses;
a rule laboratory contrasting derivability with admissibility; and a
finite Kripke-model monotonicity checker.
"""

from .binary import check_eq_member, check_eq_set, check_functionality, related_pairs
from .config import RunConfig
from .evaluation import Canonical, EvalResult, FuelExhausted, Strategy, Stuck, evaluate
from .judgments import Status, Trace, TraceStep, Verdict, replay
from .rules import (
    Derivation, NotDerivable, RuleScheme, admissible, compare_readings, derive,
    parse_rule,
)
from .syntax import ParseError, parse, pretty
from .terms import (
    CanonicalForm, OpenTermError, Term, alpha_eq, classify, free_vars,
    substitute,
)
from .unary import (
    EnumResult, Inhabitation, check_is_set, check_member, enumerate_canonical,
    ground_types, inhabited_exact,
)
from .worlds import (
    Atom, HypForced, RuleValid, WorldModel, check_monotone, forces,
    parse_model, parse_wjudgment,
)

__version__ = "0.1.0"
