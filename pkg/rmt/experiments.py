import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from bounds.closed_form import ensemble_lsi_bound
from numerics.exceptions import InvalidArgument

from .conf import settings
from .models import ExperimentSummary, PiecewiseLinear, SizeTrend, SpectralSample, TrialResult
from .sampling import sample_matrix, smooth_matrix, truncate_entries
from .schedules import resolve_delta
from .spectra import lipschitz_statistic, semicircle_distance


__all__ = ('run_trial', 'concentration_experiment', 'size_trend')


logger = logging.getLogger(__name__)


def _check_seed(seed):
    if seed is None:
        raise InvalidArgument('a seed is required')
    return int(seed)


def _delta(spec, policy):
    return resolve_delta(policy or spec.delta, spec.n, spec.d_n, spec.radius)


def run_trial(spec, f, delta, seed, trial):
    """sample -> cutoff -> optional smoothing -> spectrum -> statistic."""
    Y = sample_matrix(spec, seed, trial)
    if spec.cutoff is not None:
        Y = truncate_entries(Y, spec.entry_law.mean, spec.cutoff)
    raw = SpectralSample.from_matrix(Y)
    raw_statistic = lipschitz_statistic(raw, f)
    sample = raw
    if delta:
        sample = SpectralSample.from_matrix(smooth_matrix(Y, delta, seed, trial))
    sigma = math.sqrt(spec.entry_law.truncated_variance(spec.cutoff) + (delta or 0.0))
    return TrialResult(
        trial, seed, lipschitz_statistic(sample, f), raw_statistic, semicircle_distance(sample, sigma))


def concentration_experiment(spec, f, trials, seed, delta_policy=None, epsilons=(), threads=None):
    """
    `trials` independent runs of the pipeline; the summary lists them by
    trial index whatever order the workers finish in.
    """
    seed = _check_seed(seed)
    if trials < 2:
        raise InvalidArgument('need at least two trials, got {}'.format(trials))
    delta, defined = _delta(spec, delta_policy)
    lsi_constant = None
    if delta and math.isfinite(spec.radius):
        lsi_constant = ensemble_lsi_bound(spec.radius, delta, spec.d_n, settings.RMT_K)
    logger.info('n=%d d_n=%d delta=%s: %d trials', spec.n, spec.d_n, delta, trials)
    with ThreadPoolExecutor(max_workers=threads or settings.SOBOLEV_THREADS) as pool:
        results = list(pool.map(lambda t: run_trial(spec, f, delta, seed, t), range(trials)))
    return ExperimentSummary(spec, f, seed, results, delta, defined, epsilons, lsi_constant)


def size_trend(spec, sizes, seeds, f=None, delta_policy=None, threads=None):
    """Semicircle distance of one draw per (seed, size)."""
    sizes = [int(n) for n in sizes]
    seeds = [_check_seed(s) for s in seeds]
    if not sizes or not seeds:
        raise InvalidArgument('size_trend needs sizes and seeds')
    f = f or PiecewiseLinear.identity()
    specs = [spec.with_size(n) for n in sizes]
    deltas = [_delta(s, delta_policy)[0] for s in specs]
    cells = [(i, j) for i in range(len(seeds)) for j in range(len(sizes))]

    def distance(cell):
        i, j = cell
        return run_trial(specs[j], f, deltas[j], seeds[i], 0).ks_distance

    with ThreadPoolExecutor(max_workers=threads or settings.SOBOLEV_THREADS) as pool:
        values = list(pool.map(distance, cells))
    return SizeTrend(sizes, seeds, np.array(values).reshape(len(seeds), len(sizes)))
