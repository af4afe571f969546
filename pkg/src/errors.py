"""
Exception hierarchy for the ABP toolkit.

Everything we raise on purpose derives from AbpError so the CLI can map
failures onto exit codes without catching unrelated bugs:

- AbpError          -> exit 1 (bad input)
- GuardExceeded     -> exit 2 (a size guard refused the work)
- VerificationFailed-> exit 3 (an oracle comparison did not match)
"""


class AbpError(Exception):
    """Base class for every error raised by this package."""


class GuardExceeded(AbpError):
    """A size guard refused an expansion or enumeration."""

    def __init__(self, what, size, limit):
        super().__init__(f"{what}: estimated size {size} exceeds guard {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class FieldMismatchError(AbpError, TypeError):
    """Operands live in different fields (or different algebras)."""


class NonHomogeneousError(AbpError, ValueError):
    """An operation that needs homogeneous input got something else."""


class DegreeMismatchError(AbpError, ValueError):
    """Two ABPs do not agree on degree or alphabet."""


class MissingAssignmentError(AbpError, KeyError):
    """An evaluation point does not assign every variable in use."""


class InvalidParameterError(AbpError, ValueError):
    """A construction or evaluator parameter is out of range."""


class VerificationFailed(AbpError):
    """An ABP disagreed with its brute-force oracle."""
