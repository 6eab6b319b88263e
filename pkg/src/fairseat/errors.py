"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its documented exit statuses without a lookup table.
"""


class FairseatError(Exception):
    exit_code = 1


class InputError(FairseatError):
    """Bad input data or an algorithm precondition that does not hold."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, locus=None):
        self.locus = locus
        if locus:
            message = f"{locus}: {message}"
        super().__init__(message)


class SemanticError(InputError):
    pass


class AlreadyExpanded(InputError):
    pass


class NotExpanded(InputError):
    pass


class NonBinaryUtilities(InputError):
    pass


class NonUnitCredits(InputError):
    pass


class UnsupportedUtilityKind(InputError):
    pass


class InvalidAllocation(InputError):
    def __init__(self, report):
        self.report = report
        details = "; ".join(f"{v.kind.value}: {v.detail}" for v in report.violations)
        super().__init__(f"invalid allocation ({details})")


class InfeasibleThreshold(InputError):
    pass


class InvalidParams(InputError):
    pass


class GuardExceeded(FairseatError):
    """The instance is too large for an exact method."""

    exit_code = 3


class InstanceTooLarge(GuardExceeded):
    pass


class TooManyStudents(GuardExceeded):
    pass


class StateBudgetExceeded(GuardExceeded):
    pass


class BudgetExceeded(GuardExceeded):
    pass


class InvariantBreach(FairseatError):
    """An internal consistency check failed; indicates a bug."""

    exit_code = 4


class AugmentationLimitExceeded(InvariantBreach):
    pass
