from numerics.exceptions import NumericsError


__all__ = ('DegenerateFunction', 'NoValidCandidate')


class DegenerateFunction(NumericsError):
    pass


class NoValidCandidate(NumericsError):
    pass
