"""Constants for the tangent prover."""

from fractions import Fraction

# Default isolation width for root reports in sign certificates
ROOT_REPORT_WIDTH = Fraction(1, 10**6)

# Default bracket for irrational critical points (certified minima)
MIN_BRACKET_WIDTH = Fraction(1, 10**12)

# Every numeric-evidence report carries this flag
EVIDENCE_FLAG = "evidence, not certificate"

# Names accepted as function calls by the expression parser
FUNCTION_NAMES = frozenset({"sqrt", "root", "ln"})

# Process exit codes of the command-line interface
EXIT_EXACT = 0
EXIT_INPUT_ERROR = 1
EXIT_NUMERIC_ONLY = 2
EXIT_FAILURE = 3

# Certificate routes that carry an exact proof
EXACT_ROUTES = frozenset(
    {
        "Theorem1",
        "Theorem2Split",
        "Theorem3Tangent",
        "Theorem4PowerCurve",
        "Theorem5Cubic",
        "Case2Heterogeneous",
        "SingleVariable",
    }
)
