"""
Adaptive Gauss-Kronrod (7, 15) quadrature.

Panels are bisected worst-error first until the summed error estimate
drops below max(tol, tol * |value|). Integrands are called with a numpy
array of nodes and must return values of the same shape (a scalar is
broadcast, so `lambda u: 1` works).
"""
import heapq
import logging
import math

import numpy as np

from .conf import settings
from .exceptions import BudgetExceeded, IntegrandFailure, InvalidArgument
from .models import QuadResult


__all__ = ('adaptive_quadrature', 'kronrod_panel')


logger = logging.getLogger(__name__)


# positive Kronrod abscissae, the Gauss ones are every other starting at index 1
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


def _evaluate(f, x):
    y = np.asarray(f(x), dtype=float)
    y = np.broadcast_to(y, x.shape)
    bad = ~np.isfinite(y)
    if bad.any():
        i = int(np.argmax(bad))
        raise IntegrandFailure(float(x[i]), float(y[i]))
    return y


def kronrod_panel(f, a, b):
    """
    One G7/K15 panel; returns (integral, error estimate).
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y = _evaluate(f, center + half * NODES)
    kronrod = half * float(np.dot(KRONROD_WEIGHTS, y))
    gauss = half * float(np.dot(GAUSS_WEIGHTS, y))
    mean = kronrod / (2 * half)
    resabs = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(y)))
    resasc = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(y - mean)))
    err = abs(kronrod - gauss)
    if resasc != 0 and err != 0:
        err = resasc * min(1.0, (200 * err / resasc) ** 1.5)
    if resabs > _TINY / (50 * _EPS):
        err = max(50 * _EPS * resabs, err)
    return kronrod, err


def _initial_points(a, b, breakpoints, minintervals):
    points = sorted({a, b} | {float(p) for p in breakpoints if a < p < b})
    out = []
    for left, right in zip(points[:-1], points[1:]):
        for i in range(minintervals):
            out.append((left + (right - left) * i / minintervals,
                        left + (right - left) * (i + 1) / minintervals))
    return out


def adaptive_quadrature(f, a, b, tol=None, breakpoints=(), minintervals=1, limit=None):
    """
    Integrate f over [a, b]. `breakpoints` are kinks or jumps inside the
    interval where panels must start and end.
    """
    if tol is None:
        tol = settings.NUMERICS_QUAD_TOL
    if limit is None:
        limit = settings.NUMERICS_QUAD_LIMIT
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise InvalidArgument('Need finite a < b, got [{}, {}]'.format(a, b))
    if tol <= 0:
        raise InvalidArgument('tol must be positive')

    heap = []
    for left, right in _initial_points(a, b, breakpoints, max(1, int(minintervals))):
        value, err = kronrod_panel(f, left, right)
        heap.append((-err, left, right, value))
    heapq.heapify(heap)
    evaluations = 15 * len(heap)

    while True:
        total = math.fsum(item[3] for item in heap)
        errsum = math.fsum(-item[0] for item in heap)
        if errsum <= max(tol, tol * abs(total)):
            logger.debug('quadrature [%g, %g]: %d panels, err %.3g', a, b, len(heap), errsum)
            return QuadResult(total, errsum, evaluations)
        if len(heap) >= limit:
            raise BudgetExceeded(
                'Quadrature on [{}, {}] did not reach tol {} within {} panels'.format(a, b, tol, limit),
                partial=QuadResult(total, errsum, evaluations),
            )
        neg_err, left, right, value = heapq.heappop(heap)
        mid = 0.5 * (left + right)
        if not left < mid < right:
            heapq.heappush(heap, (neg_err, left, right, value))
            raise BudgetExceeded(
                'Quadrature panel [{}, {}] cannot be split further'.format(left, right),
                partial=QuadResult(total, errsum, evaluations),
            )
        for lo, hi in ((left, mid), (mid, right)):
            v, e = kronrod_panel(f, lo, hi)
            heapq.heappush(heap, (-e, lo, hi, v))
        evaluations += 30
