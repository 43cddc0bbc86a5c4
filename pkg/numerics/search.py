import logging
import math

import numpy as np

from .conf import settings
from .exceptions import EvaluationFailure, InvalidArgument
from .models import SupResult


__all__ = ('sup_search', 'search_grid')


logger = logging.getLogger(__name__)

_INVPHI = (math.sqrt(5) - 1) / 2


def search_grid(a, b, points):
    """
    Cell midpoints of `points` equal cells; the endpoints are never sampled.
    """
    h = (b - a) / points
    return a + (np.arange(points) + 0.5) * h, h


def _call(g, x, vectorized):
    if vectorized:
        value = float(np.asarray(g(np.array([x])), dtype=float).reshape(-1)[0])
    else:
        value = float(g(x))
    if not math.isfinite(value):
        raise EvaluationFailure(x, value)
    return value


def _golden(g, lo, hi, tol, vectorized, best):
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc = _call(g, c, vectorized)
    fd = _call(g, d, vectorized)
    for x, v in ((c, fc), (d, fd)):
        if v > best[1]:
            best = (x, v)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = _call(g, c, vectorized)
            if fc > best[1]:
                best = (c, fc)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = _call(g, d, vectorized)
            if fd > best[1]:
                best = (d, fd)
    return best, hi - lo


def sup_search(g, a, b, tol=None, points=None, brackets=None, vectorized=False):
    """
    Supremum of g over (a, b): a coarse grid of cell midpoints, then
    golden-section refinement around the best local maxima of the grid.
    With `vectorized` set, g is called once with the whole grid.
    """
    if tol is None:
        tol = settings.NUMERICS_SUP_TOL
    if points is None:
        points = settings.NUMERICS_SUP_POINTS
    if brackets is None:
        brackets = settings.NUMERICS_SUP_BRACKETS
    a, b = float(a), float(b)
    if not a < b:
        raise InvalidArgument('Need a < b, got [{}, {}]'.format(a, b))
    if tol <= 0:
        raise InvalidArgument('tol must be positive')

    grid, h = search_grid(a, b, max(int(points), 3))
    if vectorized:
        values = np.asarray(g(grid), dtype=float).reshape(grid.shape)
    else:
        values = np.array([g(x) for x in grid], dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationFailure(float(grid[i]), float(values[i]))

    padded = np.concatenate([[-np.inf], values, [-np.inf]])
    peaks = np.flatnonzero((values >= padded[:-2]) & (values >= padded[2:]))
    # stable sort keeps the leftmost of equal peaks first
    peaks = peaks[np.argsort(-values[peaks], kind='stable')][:brackets]

    result = None
    for i in peaks:
        lo, hi = max(a, grid[i] - h), min(b, grid[i] + h)
        best, width = _golden(g, lo, hi, tol, vectorized, (float(grid[i]), float(values[i])))
        if result is None or best[1] > result.value:
            result = SupResult(best[0], best[1], width)
    logger.debug('sup on [%g, %g]: %r', a, b, result)
    return result
