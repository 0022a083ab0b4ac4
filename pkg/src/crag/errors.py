"""Exception types shared by every module.

Each error carries a stable ``code`` string so the command-line layer can
report it without depending on class names.
"""


class CragError(Exception):
    code = "error"


class DimensionMismatch(CragError):
    code = "dimension_mismatch"


class IndexOutOfRange(CragError):
    code = "index_out_of_range"


class ExponentTooSmall(CragError):
    code = "exponent_too_small"


class CenterOnVariety(CragError):
    code = "center_on_variety"


class EmptyInput(CragError):
    code = "empty_input"


class ZeroPolynomial(CragError):
    code = "zero_polynomial"


class NotSymmetric(CragError):
    code = "not_symmetric"


class NotZeroDimensional(CragError):
    code = "not_zero_dimensional"


class ShearBudgetExhausted(CragError):
    code = "shear_budget_exhausted"


class RefinementLimit(CragError):
    code = "refinement_limit"


class ScaleLimit(CragError):
    code = "scale_limit"


class BackendUnavailable(CragError):
    code = "backend_unavailable"


class BackendFailure(CragError):
    code = "backend_failure"


class BitBudgetExceeded(CragError):
    code = "bit_budget_exceeded"


class NoMajority(CragError):
    code = "no_majority"


class WitnessBudgetExhausted(CragError):
    code = "witness_budget_exhausted"


class DegenerateSlice(CragError):
    code = "degenerate_slice"


class NonReducedInput(CragError):
    code = "non_reduced_input"


class NotRegular(CragError):
    code = "not_regular"


class MorseBudgetExhausted(CragError):
    code = "morse_budget_exhausted"


class ChartInvalid(CragError):
    code = "chart_invalid"


class NonIntegralChi(CragError):
    code = "non_integral_chi"


class Undecided(CragError):
    code = "undecided"


class BlockBudget(CragError):
    code = "block_budget"


class NoStabilization(CragError):
    code = "no_stabilization"


class UnknownExample(CragError):
    code = "unknown_example"


class ParseError(CragError):
    code = "parse_error"


class InvariantViolation(CragError):
    code = "invariant_violation"
