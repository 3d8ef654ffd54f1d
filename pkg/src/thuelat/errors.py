"""Error taxonomy shared by the library, the CLI and the HTTP service.

Exit codes are part of the CLI interface:
    0  success
    2  hypothesis / side-condition / input violation
    3  budget exceeded
    4  numerical precision failure
"""


class ThueLatError(Exception):
    exit_code = 1
    code = "error"

    def __init__(self, message=""):
        super().__init__(message or self.code)


class InputError(ThueLatError):
    """Rejected input: malformed data or a violated precondition."""

    exit_code = 2
    code = "rejected-input"


class HypothesisError(ThueLatError):
    """A theorem hypothesis or side condition required by the operation fails."""

    exit_code = 2
    code = "hypothesis-violated"


class BudgetError(ThueLatError):
    """Work required exceeds the configured budget."""

    exit_code = 3
    code = "budget-exceeded"


class FactorizationError(BudgetError):
    code = "factorization-failure"


class PrecisionError(ThueLatError):
    """Certified numeric evaluation failed at the maximum allowed precision."""

    exit_code = 4
    code = "precision-failure"
