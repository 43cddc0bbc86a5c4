import math
from collections import namedtuple

from numerics.logspace import exp_or_inf


__all__ = ('BGReport', 'FunctionalSide', 'LemmaSlacks', 'GaussianSlacks')


# one of D0, D1 with where it is attained; log_value is kept since the
# functionals grow like exp(R^2 / 2 delta)
FunctionalSide = namedtuple(
    'FunctionalSide', 'log_value argmax limit log_inverse_integral complete evaluations')


class BGReport(object):
    UPPER_FACTOR = 468
    LOWER_FACTOR = 150

    def __init__(self, upper, lower, median, tolerances):
        """
        `upper` is the D1 side (x > median), `lower` the D0 side, both in
        the measure's own coordinates.
        """
        self.sides = {'D0': lower, 'D1': upper}
        self.median = median
        self.tolerances = tolerances
        self.D0 = exp_or_inf(lower.log_value)
        self.D1 = exp_or_inf(upper.log_value)
        self.c_upper = self.UPPER_FACTOR * (self.D0 + self.D1)
        self.c_lower = (self.D0 + self.D1) / self.LOWER_FACTOR

    def __repr__(self):
        return 'BGReport(D0={!r}, D1={!r}, median={!r})'.format(self.D0, self.D1, self.median)

    @property
    def truncation_x_max(self):
        return self.sides['D1'].limit

    @property
    def truncation_x_min(self):
        return self.sides['D0'].limit

    @property
    def remark_bound(self):
        """(1/e) times the integral of 1/p over the truncated sup domain, per side."""
        return {
            name: exp_or_inf(side.log_inverse_integral - 1)
            for name, side in self.sides.items()
        }

    @property
    def complete(self):
        return all(side.complete for side in self.sides.values())

    @property
    def evaluations(self):
        return sum(side.evaluations for side in self.sides.values())

    def to_dict(self):
        return {
            'D0': self.D0,
            'D1': self.D1,
            'log_D0': self.sides['D0'].log_value,
            'log_D1': self.sides['D1'].log_value,
            'argmax_D0': self.sides['D0'].argmax,
            'argmax_D1': self.sides['D1'].argmax,
            'median': self.median,
            'c_upper': self.c_upper,
            'c_lower': self.c_lower,
            'truncation_x_min': self.truncation_x_min,
            'truncation_x_max': self.truncation_x_max,
            'remark_bound': self.remark_bound,
            'tolerances': self.tolerances,
            'complete': self.complete,
            'evaluations': self.evaluations,
        }


class LemmaSlacks(namedtuple('LemmaSlacks', (
        'x log_sf log_density log_inverse_integral log_tail_upper_bound log_tail_lower_bound '
        'log_inverse_integral_bound'))):
    """
    Logs of both sides of the three tail inequalities at one x >= R:
    sf <= tail_upper_bound, tail_lower_bound <= sf and
    inverse_integral <= inverse_integral_bound. A slack is log(rhs / lhs).
    """
    __slots__ = ()

    @property
    def pairs(self):
        return {
            'tail_upper': (self.log_sf, self.log_tail_upper_bound),
            'tail_lower': (self.log_tail_lower_bound, self.log_sf),
            'inverse_integral': (self.log_inverse_integral, self.log_inverse_integral_bound),
        }

    @property
    def slacks(self):
        out = {}
        for name, (lhs, rhs) in self.pairs.items():
            # 0 <= 0 at x = R
            out[name] = 0.0 if lhs == rhs == -math.inf else rhs - lhs
        return out

    def holds(self, tol):
        return all(slack >= -tol for slack in self.slacks.values())

    def to_dict(self):
        data = self._asdict()
        data['slacks'] = self.slacks
        return data


GaussianSlacks = namedtuple('GaussianSlacks', 'x tail integral')
