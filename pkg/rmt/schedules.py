import logging
import math

from numerics.exceptions import InvalidArgument

from .conf import settings


__all__ = ('delta_schedule', 'practical_schedule', 'resolve_delta')


logger = logging.getLogger(__name__)


def delta_schedule(n, d_n, R, K=None):
    """
    5 R^2 d_n / (log(n / (K R^2)) - 21 d_n), or None when the denominator
    is not positive.
    """
    K = settings.RMT_K if K is None else K
    if not (n >= 1 and d_n >= 1 and R > 0 and K > 0):
        raise InvalidArgument('delta_schedule needs n, d_n >= 1 and R, K > 0')
    denominator = math.log(n / (K * R * R)) - 21 * d_n
    if denominator <= 0:
        return None
    return 5 * R * R * d_n / denominator


def practical_schedule(n, d_n, scale=None):
    """scale * d_n / log n."""
    scale = settings.RMT_PRACTICAL_SCALE if scale is None else scale
    if n < 3:
        raise InvalidArgument('practical_schedule needs n >= 3, got {}'.format(n))
    if not scale > 0:
        raise InvalidArgument('scale must be positive, got {}'.format(scale))
    return scale * d_n / math.log(n)


def resolve_delta(policy, n, d_n, R):
    """
    (delta, schedule_defined) for an ensemble of size n. An undefined asymptotic
    schedule falls back to no smoothing.
    """
    if policy.kind == 'none':
        return 0.0, True
    if policy.kind == 'fixed':
        return policy.value, True
    if policy.kind == 'practical':
        return practical_schedule(n, d_n, policy.scale), True
    if not math.isfinite(R):
        raise InvalidArgument('the asymptotic schedule needs bounded entries; set a cutoff')
    delta = delta_schedule(n, d_n, R, policy.K)
    if delta is None:
        logger.warning('delta(n) is undefined for n=%d, d_n=%d, R=%g; running unsmoothed', n, d_n, R)
        return None, False
    return delta, True
