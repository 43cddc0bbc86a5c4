"""
Entropy and energy of a test function under a smoothed measure, and the
ratio Ent(f^2) / E(f, f), which bounds the optimal LSI constant from below.

Integrands are evaluated in log space and rescaled by their largest value
on a scan grid before quadrature, so tiny energies keep their relative
accuracy.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from numerics.exceptions import BudgetExceeded, InvalidArgument, NumericsError
from numerics.quadrature import adaptive_quadrature

from .conf import settings
from .exceptions import DegenerateFunction, NoValidCandidate
from .models import RatioEstimate, TestFunction


__all__ = (
    'integration_window', 'entropy', 'energy', 'ratio_lower_bound', 'parametric_family',
    'optimize_ratio',
)


logger = logging.getLogger(__name__)

SCAN_POINTS = 257


def integration_window(f, m):
    lo, hi = m.base.hull
    pad = settings.VARIATIONAL_WINDOW_SIGMAS * m.sigma
    lo, hi = lo - pad, hi + pad
    if f.kind == 'exponential':
        # f^2 tilts the Gaussian components by 2 alpha delta
        tilt = 2 * f.params['alpha'] * m.delta
        lo, hi = lo + min(0.0, tilt), hi + max(0.0, tilt)
    return lo, hi


def _scan(f, lo, hi):
    kinks = [k for k in f.kinks if lo < k < hi]
    mids = [0.5 * (a + b) for a, b in zip(kinks, kinks[1:])]
    return np.concatenate([np.linspace(lo, hi, SCAN_POINTS), kinks, mids]), kinks


def _shift(log_g, scan):
    shift = float(np.max(log_g(scan)))
    return shift if math.isfinite(shift) else None


def _check_tol(tol):
    if tol is None:
        return settings.VARIATIONAL_TOL
    if not tol > 0:
        raise InvalidArgument('tol must be positive, got {}'.format(tol))
    return tol


def _log_weight(f, m):
    return lambda x: 2 * f.log_abs(x) + m.log_density(x)


def _mass(f, m, tol):
    """(log Z, Z error) for Z = int f^2 dmu, restricted to the window."""
    lo, hi = integration_window(f, m)
    scan, kinks = _scan(f, lo, hi)
    log_w = _log_weight(f, m)
    shift = _shift(log_w, scan)
    if shift is None:
        raise DegenerateFunction('f vanishes on the integration window')
    q = adaptive_quadrature(lambda x: np.exp(log_w(x) - shift), lo, hi, tol=tol, breakpoints=kinks)
    if not q.value > 0:
        raise DegenerateFunction('int f^2 dmu is zero')
    return shift + math.log(q.value), q.abs_error_estimate * math.exp(shift)


def _entropy(f, m, tol):
    log_z, z_error = _mass(f, m, tol)
    lo, hi = integration_window(f, m)
    scan, kinks = _scan(f, lo, hi)
    log_w = _log_weight(f, m)
    shift = _shift(log_w, scan)
    log_tiny = math.log(settings.VARIATIONAL_TINY)

    def integrand(x):
        log_f2 = 2 * f.log_abs(x)
        lw = np.atleast_1d(log_f2 + m.log_density(x))
        log_u = np.atleast_1d(log_f2 - log_z)
        out = np.zeros(lw.shape)
        # u log u -> 0 as u -> 0
        live = log_u > log_tiny
        out[live] = np.exp(lw[live] - shift) * log_u[live]
        return out.reshape(np.shape(x))

    q = adaptive_quadrature(integrand, lo, hi, tol=tol, breakpoints=kinks)
    scale = math.exp(shift)
    value = q.value * scale
    error = q.abs_error_estimate * scale + z_error
    logger.debug('entropy %r: %g (+- %g), %d evaluations', f, value, error, q.evaluations)
    return max(value, 0.0), error


def _energy(f, m, tol):
    lo, hi = integration_window(f, m)
    scan, kinks = _scan(f, lo, hi)

    def log_g(x):
        with np.errstate(divide='ignore'):
            return 2 * np.log(np.abs(f.derivative(x))) + m.log_density(x)

    shift = _shift(log_g, scan)
    if shift is None:
        return 0.0, 0.0
    q = adaptive_quadrature(lambda x: np.exp(log_g(x) - shift), lo, hi, tol=tol, breakpoints=kinks)
    scale = math.exp(shift)
    logger.debug('energy %r: %g, %d evaluations', f, q.value * scale, q.evaluations)
    return q.value * scale, q.abs_error_estimate * scale


def entropy(f, m, tol=None):
    return _entropy(f, m, _check_tol(tol))[0]


def energy(f, m, tol=None):
    return _energy(f, m, _check_tol(tol))[0]


def ratio_lower_bound(f, m, tol=None, parameter=None):
    tol = _check_tol(tol)
    energy_value, energy_error = _energy(f, m, tol)
    if not energy_value > 0:
        raise DegenerateFunction('energy of {!r} is zero'.format(f))
    entropy_value, entropy_error = _entropy(f, m, tol)
    return RatioEstimate(
        entropy=entropy_value,
        energy=energy_value,
        ratio=entropy_value / energy_value,
        entropy_error=entropy_error,
        energy_error=energy_error,
        ratio_lower=max(0.0, entropy_value - entropy_error) / (energy_value + energy_error),
        parameter=parameter,
    )


def parametric_family(kind, m):
    """
    One-parameter families: `exponential` by alpha, `step` by the threshold
    offset from the measure's center (0 is the plain step).
    """
    if kind == 'exponential':
        return TestFunction.exponential
    if kind == 'step':
        R, delta, center = m.base.R, m.delta, m.base.center
        return lambda shift: TestFunction.step(R, delta, shift=center + shift)
    raise InvalidArgument('Unknown test family {!r}'.format(kind))


def optimize_ratio(family, m, grid, tol=None, threads=None):
    """
    Best ratio over `grid`; ties go to the smallest parameter. A grid
    point whose test function is degenerate or whose integrals fail is
    skipped. When nothing is left, BudgetExceeded is raised if some point
    ran out of budget, NoValidCandidate otherwise.
    """
    grid = [float(p) for p in grid]
    if not grid:
        raise InvalidArgument('optimize_ratio needs a nonempty grid')
    if isinstance(family, str):
        family = parametric_family(family, m)
    tol = _check_tol(tol)
    threads = threads or settings.SOBOLEV_THREADS
    m.mixture  # built once, before the workers share it

    def evaluate(parameter):
        try:
            return ratio_lower_bound(family(parameter), m, tol=tol, parameter=parameter)
        except InvalidArgument:
            raise
        except NumericsError as e:
            logger.info('skipping parameter %g: %s', parameter, e)
            return e

    with ThreadPoolExecutor(max_workers=threads) as pool:
        outcomes = list(pool.map(evaluate, grid))

    estimates = [o for o in outcomes if isinstance(o, RatioEstimate)]
    failures = [o for o in outcomes if isinstance(o, NumericsError)]
    best = None
    for estimate in sorted(estimates, key=lambda e: e.parameter):
        if best is None or estimate.ratio > best.ratio:
            best = estimate
    if best is not None:
        return best
    budget = [e for e in failures if isinstance(e, BudgetExceeded)]
    if budget:
        raise BudgetExceeded(
            'no grid point finished within budget: {}'.format(budget[0]), partial=budget[0].partial)
    raise NoValidCandidate('no grid point gave a usable test function')
