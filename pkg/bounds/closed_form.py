import math

import numpy as np

from numerics.exceptions import InvalidArgument

from .models import Bound


__all__ = (
    'thm_1d_bound', 'thm_nd_bound', 'uniform_density_bound', 'two_point_bounds',
    'segal_product', 'guionnet_tail', 'd_functional_bound', 'ensemble_lsi_bound',
    'universality_tail_bound', 'example_uniform_limit_bound',
)


def _positive(**kwargs):
    for name, value in kwargs.items():
        if not (isinstance(value, (int, float, np.integer, np.floating)) and math.isfinite(value) and value > 0):
            raise InvalidArgument('{} must be positive, got {!r}'.format(name, value))


def _small_delta(R, delta):
    if delta > R * R:
        raise InvalidArgument('Need delta <= R^2, got delta = {} with R = {}'.format(delta, R))


def _d_terms(R, delta, first, second):
    # first * delta^{3/2} R / (4R^2 + delta) e^{2R^2/delta} + second * (sqrt(delta) + 2R)^2
    return np.logaddexp(
        math.log(first) + 1.5 * math.log(delta) + math.log(R) - math.log(4 * R * R + delta) + 2 * R * R / delta,
        math.log(second) + 2 * math.log(math.sqrt(delta) + 2 * R),
    )


def thm_1d_bound(R, delta):
    """
    (general, small_delta) upper bounds on the LSI constant of mu * N(0, delta)
    for mu supported in an interval of length 2R; small_delta is None
    unless delta <= R^2.
    """
    _positive(R=R, delta=delta)
    general = Bound.from_log('thm_1d_general', _d_terms(R, delta, 6905, 4989))
    small = None
    if delta <= R * R:
        small = Bound.from_log(
            'thm_1d_small_delta',
            math.log(7803) + 1.5 * math.log(delta) - math.log(R) + 2 * R * R / delta,
        )
    return general, small


def thm_nd_bound(R, delta, n):
    """
    289 R^2 exp(20n + 5R^2/delta), for mu supported in a ball of radius R in R^n.
    """
    _positive(R=R, delta=delta, n=n)
    _small_delta(R, delta)
    return Bound.from_log('thm_nd', math.log(289) + 2 * math.log(R) + 20 * n + 5 * R * R / delta)


def d_functional_bound(R, delta):
    """
    Bound on each of D0 and D1 for mu supported in [-R, R].
    """
    _positive(R=R, delta=delta)
    first = 8 * math.sqrt(2 * math.pi) / math.e
    second = 2 / (3 * math.e) * (2 * math.pi + math.e) * (1 + math.sqrt(2))
    return Bound.from_log('d_functional', _d_terms(R, delta, first, second))


def uniform_density_bound(R, a, delta):
    """
    For mu with a density bounded below by a on an interval of length 2R.
    """
    _positive(R=R, a=a, delta=delta)
    _small_delta(R, delta)
    if 2 * R * a > 1 + 1e-12:
        raise InvalidArgument('A density bounded below by {} cannot live on an interval of length {}'.format(a, 2 * R))
    value = 2067 * R / a + 9016 * delta + 1248 * delta * math.log(1 / (a * a * delta))
    return Bound('uniform_density', math.log(value), value)


def example_uniform_limit_bound(R, a):
    """
    The delta -> 0 limit of uniform_density_bound, an LSI constant for mu itself.
    """
    _positive(R=R, a=a)
    value = 2067 * R / a
    return Bound('uniform_density_limit', math.log(value), value)


def two_point_bounds(R, delta):
    """
    (lower, upper) on the LSI constant of the smoothed symmetric two-point measure.
    """
    _positive(R=R, delta=delta)
    _small_delta(R, delta)
    log_core = 1.5 * math.log(delta) - math.log(R) + R * R / (2 * delta)
    return (
        Bound.from_log('two_point_lower', log_core - math.log(11)),
        Bound.from_log('two_point_upper', log_core + math.log(117942)),
    )


def segal_product(constants):
    constants = list(constants)
    if not constants:
        raise InvalidArgument('Need at least one constant')
    if any(c < 0 for c in constants):
        raise InvalidArgument('LSI constants are nonnegative')
    return max(constants)


def guionnet_tail(n, epsilon, c, lip):
    """
    2 exp(-n^2 eps^2 / (4 c Lip^2)), the concentration bound for a linear
    statistic of the spectrum when the entries satisfy an LSI with constant c.
    """
    _positive(n=n, epsilon=epsilon, c=c, lip=lip)
    return 2 * math.exp(-(n * epsilon) ** 2 / (4 * c * lip * lip))


def ensemble_lsi_bound(R, delta, d, K=289):
    """
    LSI constant of a smoothed ensemble whose dependence blocks hold at most d entries.
    """
    _positive(R=R, delta=delta, d=d, K=K)
    return Bound.from_log(
        'ensemble_lsi', math.log(K) + 2 * math.log(R) + 21 * d + 5 * R * R * d / delta)


def universality_tail_bound(n, epsilon, lip, delta, c):
    """
    9 Lip^2 delta / eps^2 + 2 exp(-n^2 eps^2 / (36 c Lip^2)): deviation bound
    for the unsmoothed statistic, split in thirds around the smoothed one.
    """
    _positive(n=n, epsilon=epsilon, lip=lip, delta=delta, c=c)
    return 9 * lip * lip * delta / epsilon ** 2 + 2 * math.exp(-(n * epsilon) ** 2 / (36 * c * lip * lip))
