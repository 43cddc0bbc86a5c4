"""
Numerical checks of the tail inequalities used to bound D1, for a measure
centered in [-R, R] and x >= R.
"""
import math

import numpy as np

from numerics.exceptions import InvalidArgument
from numerics.logspace import LOG_SQRT_2PI, log_exp_square_integral, log_gaussian_upper_tail

from .conf import settings
from .functionals import log_inverse_density_integral
from .models import GaussianSlacks, LemmaSlacks


__all__ = ('verify_tail_lemmas', 'gaussian_bound_slacks', 'gaussian_slack_table')


def verify_tail_lemmas(m, x, tol=None):
    """
    x is measured from the center of m. Both sides of every inequality are
    kept as logs, so x far past R at small delta neither overflows nor
    divides by an underflowed density.
    """
    if tol is None:
        tol = settings.BG_TOL
    centered = m.centered()
    R, delta = m.base.R, m.delta
    sqrt_delta = math.sqrt(delta)
    x = float(x)
    if x < R:
        raise InvalidArgument('Tail inequalities need x >= R, got x = {} < {}'.format(x, R))

    log_p = float(centered.log_density(x))
    log_sf = float(centered.log_sf(x))
    if x == R:
        log_inverse_integral = log_inverse_integral_bound = -math.inf
    else:
        log_inverse_integral, _, _ = log_inverse_density_integral(centered, R, x, tol)
        log_inverse_integral_bound = (
            math.log(2 * delta * (x - R)) - math.log((x - R) ** 2 + delta) - log_p)
    return LemmaSlacks(
        x=x,
        log_sf=log_sf,
        log_density=log_p,
        log_inverse_integral=float(log_inverse_integral),
        log_tail_upper_bound=math.log(4 / 3 * delta / (x - R + sqrt_delta)) + log_p,
        log_tail_lower_bound=(
            math.log(sqrt_delta / (x + R + sqrt_delta)) - LOG_SQRT_2PI - (x + R) ** 2 / (2 * delta)
        ),
        log_inverse_integral_bound=log_inverse_integral_bound,
    )


def gaussian_bound_slacks(x):
    """
    log-domain slacks of
        sqrt(2 pi) P(Z > x) >= exp(-x^2/2) / (x + 1)
        int_0^x exp(u^2/2) du <= 2x exp(x^2/2) / (x^2 + 1)
    for x >= 0; both are nonnegative when the inequalities hold.
    """
    x = float(x)
    if x < 0:
        raise InvalidArgument('x must be nonnegative')
    tail = (log_gaussian_upper_tail(x) + LOG_SQRT_2PI) - (-x * x / 2 - math.log1p(x))
    if x == 0:
        integral = 0.0
    else:
        integral = (math.log(2 * x) + x * x / 2 - math.log1p(x * x)) - log_exp_square_integral(x)
    return GaussianSlacks(x, float(tail), float(integral))


def gaussian_slack_table(xs):
    return [gaussian_bound_slacks(x) for x in np.asarray(xs, dtype=float)]
