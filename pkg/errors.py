class ExpwellError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(ExpwellError, ValueError):
    pass


class AccuracyLossError(ExpwellError):
    """Requested point lies outside the validated evaluation box."""


class PoleError(ExpwellError, ValueError):
    pass


class NoBoundStateError(ExpwellError):
    pass


class DepthExceedsLevelsError(ExpwellError):
    pass


class NearSingularError(ExpwellError, ArithmeticError):
    pass


class OracleConvergenceError(ExpwellError):
    pass


class MissedRootError(ExpwellError):
    """Bessel-root count disagrees with the grid oracle's bound-state count."""


class VerificationFailure(ExpwellError):
    pass
