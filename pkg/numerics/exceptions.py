__all__ = (
    'NumericsError', 'InvalidArgument', 'IntegrandFailure', 'EvaluationFailure',
    'BudgetExceeded',
)


class NumericsError(Exception):
    pass


class InvalidArgument(NumericsError, ValueError):
    pass


class IntegrandFailure(NumericsError):
    def __init__(self, location, value):
        self.location = location
        self.value = value
        super().__init__('Integrand is not finite at {!r} (got {!r})'.format(location, value))


class EvaluationFailure(NumericsError):
    def __init__(self, location, value):
        self.location = location
        self.value = value
        super().__init__('Objective is not finite at {!r} (got {!r})'.format(location, value))


class BudgetExceeded(NumericsError):
    """
    Raised when a tolerance cannot be met within the evaluation budget.
    `partial` holds the best result computed so far.
    """
    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)
