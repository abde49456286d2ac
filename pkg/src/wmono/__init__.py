"""wmono - Monogamy inequalities of N-qubit W-class states."""

from .evaluation import (
    BlockValues,
    StateValues,
    collect_block_values,
    collect_state_values,
    evaluate_block,
    evaluate_one,
)
from .exceptions import (
    ConvergenceError,
    ExponentDomainError,
    InvalidInputError,
    InvalidSelectionError,
    InvalidStateFileError,
    OracleScopeError,
    StateFileError,
    WMonoError,
    ZeroPairError,
)
from .models import Bipartition, DensityMatrix, MeasureKind, MeasureValue, PureState
from .monogamy import INEQUALITY_IDS, InequalityReport, OrderingProfile, check_ordering
from .oracle import OracleBudget, OracleResult, convex_roof_oracle
from .verify import FuzzConfig, FuzzSummary, run_fuzz
from .wclass import SubsystemSelection, WClassCoefficients, build_state, reduce

__version__ = "0.1.0"

__all__ = [
    # Main API
    "collect_state_values",
    "collect_block_values",
    "evaluate_block",
    "evaluate_one",
    "check_ordering",
    "convex_roof_oracle",
    "run_fuzz",
    "build_state",
    "reduce",
    "INEQUALITY_IDS",
    # Models
    "WClassCoefficients",
    "SubsystemSelection",
    "PureState",
    "DensityMatrix",
    "Bipartition",
    "MeasureKind",
    "MeasureValue",
    "StateValues",
    "BlockValues",
    "OrderingProfile",
    "InequalityReport",
    "OracleBudget",
    "OracleResult",
    "FuzzConfig",
    "FuzzSummary",
    # Exceptions
    "WMonoError",
    "InvalidInputError",
    "InvalidSelectionError",
    "ExponentDomainError",
    "ZeroPairError",
    "OracleScopeError",
    "ConvergenceError",
    "StateFileError",
    "InvalidStateFileError",
]
