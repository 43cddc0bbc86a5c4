"""
Log-domain helpers. Smoothed densities carry factors like exp(2R^2/delta)
so everything downstream works with logarithms until the last moment.
"""
import math

import numpy as np
from scipy import special

from .exceptions import InvalidArgument


__all__ = (
    'log_sum_exp', 'gaussian_upper_tail', 'log_gaussian_upper_tail',
    'log_gaussian_lower_tail', 'log_exp_square_integral', 'exp_or_inf',
    'LOG_SQRT_2PI',
)


LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)
# largest x with exp(x) finite in double precision
LOG_MAX_FLOAT = math.log(np.finfo(float).max)


def log_sum_exp(log_terms, weights):
    """
    log(sum(w_i * exp(l_i))) with the usual max shift.
    """
    log_terms = np.asarray(log_terms, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if log_terms.ndim != 1 or log_terms.size == 0:
        raise InvalidArgument('log_terms must be a nonempty list')
    if weights.shape != log_terms.shape:
        raise InvalidArgument('log_terms and weights must have the same length')
    if np.any(weights < 0) or not np.any(weights > 0):
        raise InvalidArgument('weights must be nonnegative and not all zero')
    return float(special.logsumexp(log_terms, b=weights))


def gaussian_upper_tail(x):
    """
    P(Z > x) for a standard normal Z.
    """
    return special.ndtr(-np.asarray(x, dtype=float))[()]


def log_gaussian_upper_tail(x):
    return special.log_ndtr(-np.asarray(x, dtype=float))[()]


def log_gaussian_lower_tail(x):
    return special.log_ndtr(np.asarray(x, dtype=float))[()]


def log_exp_square_integral(x):
    """
    log of the integral of exp(u^2/2) over [0, x] for x > 0, via Dawson's
    function so that x up to a few hundred stays finite.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise InvalidArgument('x must be positive')
    y = x / math.sqrt(2)
    return (x * x / 2 + 0.5 * math.log(2) + np.log(special.dawsn(y)))[()]


def exp_or_inf(log_value):
    if log_value > LOG_MAX_FLOAT:
        return math.inf
    return math.exp(log_value)
