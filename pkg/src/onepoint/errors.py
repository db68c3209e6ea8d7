"""Exception types raised across the package."""


class OnepointError(Exception):
    """Base class for all library errors."""


class ParseError(OnepointError, ValueError):
    pass


class NonPrime(OnepointError, ValueError):
    pass


class ReducibleModulus(OnepointError, ValueError):
    pass


class FieldTooLarge(OnepointError, ValueError):
    pass


class MixedFields(OnepointError, TypeError):
    pass


class IncompatibleTower(OnepointError, ValueError):
    pass


class NotInSubfield(OnepointError, ValueError):
    pass


class MixedRings(OnepointError, TypeError):
    pass


class DegreeTooLarge(OnepointError):
    pass


class NotDivisible(OnepointError, ArithmeticError):
    pass


class DivisorZero(OnepointError, ZeroDivisionError):
    pass


class NotHomogeneous(OnepointError, ValueError):
    pass


class ZeroPolynomial(OnepointError, ValueError):
    pass


class NonConstantLeadingCoeff(OnepointError, ValueError):
    pass


class SplittingNotFound(OnepointError):
    pass


class Exhausted(OnepointError):
    """A randomized search ran out of trials; callers may extend the base field."""

    def __init__(self, trials, message=None):
        self.trials = trials
        super().__init__(message or f"no witness found in {trials} trials")


class ConditionFailed(OnepointError):
    """One of the step conditions (a)-(e) failed for a coordinate choice."""

    def __init__(self, condition, records=None):
        self.condition = condition
        self.records = records or {}
        super().__init__(f"condition ({condition}) failed")


class NotInGeneralPosition(OnepointError, ValueError):
    pass


class BasePointHit(OnepointError):
    pass


class DegenerateJacobian(OnepointError):
    pass


class EnumerationCapExceeded(OnepointError):
    pass


class PointOnDivisor(OnepointError, ValueError):
    pass


class SearchFailed(OnepointError):
    def __init__(self, tally, fields=()):
        self.tally = dict(tally)
        self.fields = list(fields)
        worst = max(self.tally, key=self.tally.get) if self.tally else None
        super().__init__(
            f"coordinate search failed over {', '.join(fields) or 'the base field'}; "
            f"condition tally {self.tally} (most frequent: {worst})"
        )


class CertificationFailed(OnepointError):
    def __init__(self, record):
        self.record = record
        super().__init__(f"certification failed at {record.get('check', '?')}")
