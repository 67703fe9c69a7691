"""Exact moments of the duration of fair 2- and 3-player gambler's ruin."""

from .ansatz import (
    AnsatzBasis,
    DerivationResult,
    RecurrenceSpec,
    assemble_recurrence_system,
    build_basis,
    derive_binomial_moments,
    verify_residual,
)
from .errors import (
    DerivationError,
    DomainError,
    EvaluationError,
    IncompleteInputError,
    ParseError,
    RuinMomentsError,
    ShapeError,
    UnsupportedConfigurationError,
)
from .formula import RationalFormula, evaluate_formula, leading_univariate
from .linalg import SolutionReport, solve_exact_linear
from .oracle import (
    OracleResult,
    StateSpace,
    enumerate_interior_states,
    oracle_binomial_moments,
    oracle_first_ruin_probabilities,
)
from .poly import MultiPoly, poly_arith, shift_substitute
from .serialization import FormulaDocument, parse_canonical, render_canonical
from .simulator import GameConfig, TrialStats, ross_expectation, run_trials, simulate_duration
from .transforms import (
    ExactScaledLimit,
    MomentSet,
    binomial_to_raw,
    raw_to_central,
    scaled_limit,
    stirling2,
)

__version__ = "0.1.0"
