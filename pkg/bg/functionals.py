"""
The functionals D0, D1 of a smoothed measure,

    D1 = sup_{x > m} (1 - F(x)) log(1 / (1 - F(x))) int_m^x 1/p,

and D0 the same quantity for the mirror image. Everything is carried in
log space: log(1 - F) comes from the Gaussian upper tails and the inner
integral is accumulated panel by panel with a per-panel shift.
"""
import logging
import math

import numpy as np

from numerics.conf import settings as numerics_settings
from numerics.exceptions import BudgetExceeded, InvalidArgument
from numerics.quadrature import adaptive_quadrature
from numerics.search import sup_search

from .conf import settings
from .models import BGReport, FunctionalSide


__all__ = ('bg_functionals', 'log_inverse_density_integral', 'truncation_reach')


logger = logging.getLogger(__name__)


def log_inverse_density_integral(m, a, b, tol):
    """
    log of the integral of 1/p over [a, b]; returns (log value, evaluations,
    converged).
    """
    shift = float(np.max(-m.log_density(np.array([a, 0.5 * (a + b), b]))))
    f = lambda t: np.exp(-m.log_density(t) - shift)
    try:
        q = adaptive_quadrature(f, a, b, tol=tol * (b - a))
    except BudgetExceeded as e:
        logger.warning('1/p quadrature on [%g, %g] stopped early: %s', a, b, e)
        return shift + math.log(e.partial.value), e.partial.evaluations + 3, False
    return shift + math.log(q.value), q.evaluations + 3, True


def truncation_reach(delta, tol, tail_factor):
    """
    Distance past the support edge where the sup domain is cut.
    """
    return math.sqrt(2 * delta * math.log(1 / (tol * tail_factor))) + math.sqrt(delta)


class _Side(object):
    """
    D1 of `m` over (median, limit). Cumulative 1/p integrals sit on a fixed
    node grid; the sup search only integrates from the nearest node.
    """
    def __init__(self, m, median, limit, tol, grid_points, budget):
        self.m = m
        self.tol = tol
        self.complete = True
        self.evaluations = 0
        nodes = np.linspace(median, limit, grid_points + 1)
        panels = []
        for a, b in zip(nodes[:-1], nodes[1:]):
            if panels and self.evaluations >= budget:
                self.complete = False
                break
            log_value, evaluations, ok = log_inverse_density_integral(m, a, b, tol)
            panels.append(log_value)
            self.evaluations += evaluations
            self.complete &= ok
        if not self.complete:
            logger.warning('evaluation budget spent at x = %g of [%g, %g]', nodes[len(panels)], median, limit)
        self.nodes = nodes[:len(panels) + 1]
        self.cumulative = np.concatenate([[-np.inf], np.logaddexp.accumulate(panels)])

    def log_integral(self, x):
        j = int(np.searchsorted(self.nodes, x, side='right')) - 1
        j = min(max(j, 0), len(self.nodes) - 2)
        if x == self.nodes[j]:
            return self.cumulative[j]
        log_part, evaluations, ok = log_inverse_density_integral(self.m, self.nodes[j], x, self.tol)
        self.evaluations += evaluations
        self.complete &= ok
        return np.logaddexp(self.cumulative[j], log_part)

    def objective(self, x):
        log_sf = float(self.m.log_sf(x))
        self.evaluations += 1
        return log_sf + math.log(-log_sf) + float(self.log_integral(x))

    def run(self, sup_tol):
        result = sup_search(self.objective, self.nodes[0], self.nodes[-1], tol=sup_tol)
        return FunctionalSide(
            log_value=result.value,
            argmax=result.argmax,
            limit=float(self.nodes[-1]),
            log_inverse_integral=float(self.cumulative[-1]),
            complete=self.complete,
            evaluations=self.evaluations,
        )


def bg_functionals(m, tol=None, grid_points=None, tail_factor=None, max_evaluations=None, sup_tol=None):
    """
    BGReport for the smoothed measure m. D0 is computed as D1 of the mirror
    image of m about its center. Raises BudgetExceeded with the partial
    report when the evaluation budget runs out.
    """
    if tol is None:
        tol = settings.BG_TOL
    if grid_points is None:
        grid_points = settings.BG_GRID_POINTS
    if tail_factor is None:
        tail_factor = settings.BG_TAIL_FACTOR
    if max_evaluations is None:
        max_evaluations = settings.BG_MAX_EVALUATIONS
    if sup_tol is None:
        sup_tol = numerics_settings.NUMERICS_SUP_TOL
    if tol <= 0 or not 0 < tol * tail_factor < 1:
        raise InvalidArgument('tol must be positive and tol * tail_factor below 1')
    if grid_points < 1:
        raise InvalidArgument('grid_points must be positive')

    base = m.base
    c = base.center
    median = m.median
    limit = c + base.R + truncation_reach(m.delta, tol, tail_factor)
    logger.debug('D functionals: median %g, domain cut at %g', median, limit)

    upper = _Side(m, median, limit, tol, grid_points, max_evaluations).run(sup_tol)
    mirrored = _Side(
        m.reflected(), 2 * c - median, limit, tol, grid_points,
        max(max_evaluations - upper.evaluations, 0),
    ).run(sup_tol)
    lower = mirrored._replace(argmax=2 * c - mirrored.argmax, limit=2 * c - mirrored.limit)

    report = BGReport(upper, lower, median, {
        'tol': tol,
        'sup_tol': sup_tol,
        'grid_points': grid_points,
        'tail_factor': tail_factor,
        'max_evaluations': max_evaluations,
    })
    if not report.complete:
        raise BudgetExceeded(
            'D functionals need more than {} evaluations'.format(max_evaluations), partial=report)
    return report
