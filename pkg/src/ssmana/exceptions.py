"""Exceptions raised by ssmana."""


class SSManaError(Exception):
    """Base class of every ssmana error."""


class RatioOutOfRange(SSManaError, ValueError):
    pass


class ProbabilityInvalid(SSManaError, ValueError):
    pass


class SeparationFailed(SSManaError, ValueError):
    pass


class DegenerateTranslations(SSManaError, ValueError):
    pass


class LinearPhase(SSManaError, ValueError):
    pass


class ConvexityViolation(SSManaError, ValueError):
    def __init__(self, message, location=None, value=None):
        super().__init__(message)
        self.location = location
        self.value = value


class DomainError(SSManaError, ValueError):
    pass


class InsufficientWindows(SSManaError, ValueError):
    pass


class PrecisionExceeded(SSManaError, ValueError):
    pass


class ConfigError(SSManaError, ValueError):
    """Config parse failure, message prefixed with the offending ``section.key``."""


class BudgetExceeded(SSManaError, RuntimeError):
    def __init__(self, message, required=None, budget=None, achievable_tol=None):
        super().__init__(message)
        self.required = required
        self.budget = budget
        self.achievable_tol = achievable_tol


class OracleViolation(SSManaError, RuntimeError):
    def __init__(self, message, points=()):
        super().__init__(message)
        self.points = list(points)


class NoFeasiblePoint(SSManaError, RuntimeError):
    pass


class ImaginaryResidue(SSManaError, RuntimeError):
    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue
