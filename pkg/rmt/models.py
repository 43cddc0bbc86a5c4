import math
from collections import namedtuple

import numpy as np
from django.utils.functional import cached_property
from scipy import special

from bounds.closed_form import guionnet_tail, universality_tail_bound
from numerics.exceptions import InvalidArgument
from numerics.linalg import symmetric_eigenvalues


__all__ = (
    'EntryLaw', 'Blocks', 'Partition', 'DeltaPolicy', 'EnsembleSpec', 'SpectralSample',
    'PiecewiseLinear', 'TrialResult', 'HWCheck', 'PerturbationCheck', 'ExperimentSummary',
    'SizeTrend',
)


def _positive(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidArgument('{} must be a number, got {!r}'.format(name, value))
    if not (math.isfinite(value) and value > 0):
        raise InvalidArgument('{} must be positive, got {!r}'.format(name, value))
    return value


class EntryLaw(object):
    """
    Law of a single matrix entry.

    two_point: mean +- R with equal weights
    uniform:   uniform on [mean - R, mean + R]
    gaussian:  N(mean, sigma^2), unbounded until a cutoff is applied
    """
    KINDS = ('two_point', 'uniform', 'gaussian')

    def __init__(self, kind, R=None, sigma=None, mean=0.0):
        if kind not in self.KINDS:
            raise InvalidArgument('Unknown entry law {!r}'.format(kind))
        self.kind = kind
        self.mean = float(mean)
        if kind == 'gaussian':
            self.sigma = _positive('sigma', 1.0 if sigma is None else sigma)
            self.R = None
        else:
            self.R = _positive('R', R)
            self.sigma = None

    def __repr__(self):
        return 'EntryLaw({!r}, R={}, sigma={}, mean={})'.format(self.kind, self.R, self.sigma, self.mean)

    @property
    def variance(self):
        if self.kind == 'two_point':
            return self.R ** 2
        if self.kind == 'uniform':
            return self.R ** 2 / 3
        return self.sigma ** 2

    def truncated_variance(self, C):
        """
        Variance after entries further than C from the mean are replaced by
        the mean.
        """
        if C is None or C >= self.radius:
            return self.variance
        if self.kind == 'two_point':
            return 0.0
        if self.kind == 'uniform':
            return C ** 3 / (3 * self.R)
        c = C / self.sigma
        return self.sigma ** 2 * (2 * special.ndtr(c) - 1 - 2 * c * math.exp(-c * c / 2) / math.sqrt(2 * math.pi))

    @property
    def radius(self):
        return math.inf if self.R is None else self.R

    def draw(self, rng, size):
        if self.kind == 'two_point':
            return self.mean + self.R * (2.0 * rng.integers(0, 2, size=size) - 1)
        if self.kind == 'uniform':
            return self.mean + rng.uniform(-self.R, self.R, size=size)
        return self.mean + self.sigma * rng.standard_normal(size=size)

    @classmethod
    def from_description(cls, data):
        if not isinstance(data, dict) or 'kind' not in data:
            raise InvalidArgument("entry_law is missing 'kind'")
        extra = set(data) - {'kind', 'R', 'sigma', 'mean'}
        if extra:
            raise InvalidArgument('entry_law has unknown keys {}'.format(sorted(extra)))
        return cls(**data)

    def to_dict(self):
        data = {'kind': self.kind, 'mean': self.mean}
        if self.R is not None:
            data['R'] = self.R
        if self.sigma is not None:
            data['sigma'] = self.sigma
        return data


class Blocks(namedtuple('Blocks', 'rows cols num_blocks width sizes replicated')):
    """
    Upper-triangular position p = (i, j), i <= j, in np.triu_indices order,
    reads its value from draws[rows[p], cols[p]] of a (num_blocks, width)
    array of independent draws.
    """
    __slots__ = ()

    @property
    def d_n(self):
        return int(max(self.sizes))


def _triangular_positions(n):
    return n * (n + 1) // 2


def _pair_position(n, i, j):
    return i * n - i * (i - 1) // 2 + (j - i)


class Partition(object):
    KINDS = ('singletons', 'independent_blocks', 'replicated_blocks', 'explicit')
    MODES = ('independent', 'replicated')

    def __init__(self, kind, d=1, blocks=None, mode='independent'):
        if kind not in self.KINDS:
            raise InvalidArgument('Unknown partition kind {!r}'.format(kind))
        if mode not in self.MODES:
            raise InvalidArgument('Unknown block mode {!r}'.format(mode))
        valid_d = d == 'sqrt_log' or (isinstance(d, int) and not isinstance(d, bool) and d >= 1)
        if not (valid_d or (d is None and kind == 'explicit')):
            raise InvalidArgument('d_n must be a positive integer or "sqrt_log", got {!r}'.format(d))
        if kind == 'explicit' and not blocks:
            raise InvalidArgument('explicit partition needs blocks')
        self.kind = kind
        self.d = d
        self.blocks = blocks
        if kind == 'replicated_blocks':
            mode = 'replicated'
        elif kind != 'explicit':
            mode = 'independent'
        self.mode = mode

    def __repr__(self):
        return 'Partition({!r}, d={!r}, mode={!r})'.format(self.kind, self.d, self.mode)

    @property
    def replicated(self):
        return self.mode == 'replicated'

    def block_bound(self, n):
        if self.d == 'sqrt_log':
            return max(1, math.ceil(math.sqrt(math.log(n))))
        return self.d

    def resolve(self, n):
        """
        Size-d blocks take positions p, p + M, p + 2M, ... with M the block
        count, so the entries of a block are spread across the triangle.
        """
        N = _triangular_positions(n)
        positions = np.arange(N)
        if self.kind == 'singletons':
            return Blocks(positions, np.zeros(N, dtype=int), N, 1, np.ones(N, dtype=int), False)
        if self.kind != 'explicit':
            d = self.block_bound(n)
            M = -(-N // d)
            rows = positions % M
            sizes = np.bincount(rows, minlength=M)
            cols = np.zeros(N, dtype=int) if self.replicated else positions // M
            return Blocks(rows, cols, M, 1 if self.replicated else d, sizes, self.replicated)
        return self._resolve_explicit(n, N)

    def _resolve_explicit(self, n, N):
        rows = np.full(N, -1)
        cols = np.zeros(N, dtype=int)
        sizes = []
        for k, block in enumerate(self.blocks):
            if not block:
                raise InvalidArgument('block {} is empty'.format(k))
            for member, pair in enumerate(block):
                try:
                    i, j = sorted(int(v) for v in pair)
                except (TypeError, ValueError):
                    raise InvalidArgument('block {} has a bad index pair {!r}'.format(k, pair))
                if not 0 <= i <= j < n:
                    raise InvalidArgument('index pair {!r} is outside a {}x{} matrix'.format(pair, n, n))
                p = _pair_position(n, i, j)
                if rows[p] >= 0:
                    raise InvalidArgument('entry ({}, {}) appears in two blocks'.format(i, j))
                rows[p] = k
                cols[p] = 0 if self.replicated else member
            sizes.append(len(block))
        if np.any(rows < 0):
            i, j = np.triu_indices(n)
            p = int(np.argmax(rows < 0))
            raise InvalidArgument('entry ({}, {}) is in no block'.format(i[p], j[p]))
        bound = self.block_bound(n)
        if bound is not None and max(sizes) > bound:
            raise InvalidArgument('block of size {} exceeds d_n = {}'.format(max(sizes), bound))
        width = 1 if self.replicated else max(sizes)
        return Blocks(rows, cols, len(sizes), width, np.array(sizes), self.replicated)

    @classmethod
    def from_description(cls, data):
        if not isinstance(data, dict) or 'kind' not in data:
            raise InvalidArgument("partition is missing 'kind'")
        return cls(
            data['kind'],
            d=data.get('d_n', None if data['kind'] == 'explicit' else 1),
            blocks=data.get('blocks'),
            mode=data.get('mode', 'independent'),
        )

    def to_dict(self):
        data = {'kind': self.kind, 'd_n': self.d, 'mode': self.mode}
        if self.blocks is not None:
            data['blocks'] = [[list(pair) for pair in block] for block in self.blocks]
        return data


class DeltaPolicy(namedtuple('DeltaPolicy', 'kind value scale K')):
    """
    How the smoothing variance is picked for a given matrix size:
    none, fixed (value), practical (scale d_n / log n) or asymptotic (K).
    """
    __slots__ = ()
    KINDS = ('none', 'fixed', 'practical', 'asymptotic')

    def __new__(cls, kind='none', value=None, scale=None, K=None):
        if kind not in cls.KINDS:
            raise InvalidArgument('Unknown delta policy {!r}'.format(kind))
        if kind == 'fixed':
            value = float(value) if value is not None else None
            if value is None or not (math.isfinite(value) and value >= 0):
                raise InvalidArgument('fixed delta policy needs a value >= 0')
        if scale is not None:
            scale = _positive('scale', scale)
        if K is not None:
            K = _positive('K', K)
        return super().__new__(cls, kind, value, scale, K)

    @classmethod
    def from_description(cls, data):
        if data is None:
            return cls()
        if not isinstance(data, dict) or 'kind' not in data:
            raise InvalidArgument("delta is missing 'kind'")
        extra = set(data) - set(cls._fields)
        if extra:
            raise InvalidArgument('delta has unknown keys {}'.format(sorted(extra)))
        return cls(**data)

    def to_dict(self):
        return {k: v for k, v in self._asdict().items() if v is not None}


class EnsembleSpec(object):
    def __init__(self, n, entry_law, partition, delta=None, cutoff=None):
        if not (isinstance(n, int) and not isinstance(n, bool) and n >= 1):
            raise InvalidArgument('n must be a positive integer, got {!r}'.format(n))
        if cutoff is not None:
            cutoff = float(cutoff)
            if not cutoff >= 0:
                raise InvalidArgument('cutoff must be >= 0, got {!r}'.format(cutoff))
        self.n = n
        self.entry_law = entry_law
        self.partition = partition
        self.delta = delta or DeltaPolicy()
        self.cutoff = cutoff
        self.blocks  # resolves and validates the partition

    def __repr__(self):
        return 'EnsembleSpec(n={}, {!r}, {!r}, {!r})'.format(self.n, self.entry_law, self.partition, self.delta)

    @cached_property
    def blocks(self):
        return self.partition.resolve(self.n)

    @property
    def d_n(self):
        return self.blocks.d_n

    @property
    def radius(self):
        """Half-length of the interval holding every (truncated) entry."""
        if self.cutoff is None:
            return self.entry_law.radius
        return min(self.entry_law.radius, self.cutoff)

    def with_size(self, n):
        return EnsembleSpec(n, self.entry_law, self.partition, self.delta, self.cutoff)

    @classmethod
    def from_description(cls, data):
        if not isinstance(data, dict):
            raise InvalidArgument('Ensemble description must be a mapping')
        for key in ('n', 'entry_law', 'partition'):
            if key not in data:
                raise InvalidArgument('ensemble description is missing {!r}'.format(key))
        return cls(
            data['n'],
            EntryLaw.from_description(data['entry_law']),
            Partition.from_description(data['partition']),
            delta=DeltaPolicy.from_description(data.get('delta')),
            cutoff=data.get('cutoff'),
        )

    def to_dict(self):
        return {
            'n': self.n,
            'entry_law': self.entry_law.to_dict(),
            'partition': self.partition.to_dict(),
            'delta': self.delta.to_dict(),
            'cutoff': self.cutoff,
        }


class SpectralSample(namedtuple('SpectralSample', 'eigenvalues n scale')):
    """Ascending spectrum of scale * Y."""
    __slots__ = ()

    @classmethod
    def from_matrix(cls, Y, scale=None):
        n = Y.shape[0]
        scale = 1 / math.sqrt(n) if scale is None else scale
        eigenvalues = np.sort(symmetric_eigenvalues(scale * Y))
        return cls(eigenvalues, n, scale)


class PiecewiseLinear(object):
    """
    Piecewise linear function through knots, extended linearly with the
    given end slopes.
    """
    def __init__(self, knots, left_slope=0.0, right_slope=0.0):
        try:
            xs, ys = zip(*((float(x), float(y)) for x, y in knots))
        except (TypeError, ValueError):
            raise InvalidArgument('knots must be [x, y] pairs')
        if np.any(np.diff(xs) <= 0):
            raise InvalidArgument('knots must be strictly increasing in x')
        self.xs = np.array(xs)
        self.ys = np.array(ys)
        self.left_slope = float(left_slope)
        self.right_slope = float(right_slope)

    def __repr__(self):
        return 'PiecewiseLinear({!r}, {}, {})'.format(list(zip(self.xs, self.ys)), self.left_slope, self.right_slope)

    @classmethod
    def identity(cls):
        return cls([(0, 0), (1, 1)], 1, 1)

    @classmethod
    def absolute(cls):
        return cls([(-1, 1), (0, 0), (1, 1)], -1, 1)

    @classmethod
    def constant(cls, c):
        return cls([(0, c), (1, c)])

    @classmethod
    def from_description(cls, data):
        if isinstance(data, str):
            data = {'kind': data}
        kind = data.get('kind', 'table')
        if kind == 'identity':
            return cls.identity()
        if kind == 'abs':
            return cls.absolute()
        if kind == 'constant':
            return cls.constant(data.get('value', 0))
        if kind == 'table':
            if 'knots' not in data:
                raise InvalidArgument("table statistic is missing 'knots'")
            return cls(data['knots'], data.get('left_slope', 0), data.get('right_slope', 0))
        raise InvalidArgument('Unknown statistic {!r}'.format(kind))

    @cached_property
    def lipschitz(self):
        slopes = np.diff(self.ys) / np.diff(self.xs)
        return float(max(np.abs(slopes).max(), abs(self.left_slope), abs(self.right_slope)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, self.xs, self.ys)
        out = np.where(x < self.xs[0], self.ys[0] + self.left_slope * (x - self.xs[0]), out)
        return np.where(x > self.xs[-1], self.ys[-1] + self.right_slope * (x - self.xs[-1]), out)

    def to_dict(self):
        return {
            'kind': 'table',
            'knots': [[float(x), float(y)] for x, y in zip(self.xs, self.ys)],
            'left_slope': self.left_slope,
            'right_slope': self.right_slope,
        }


TrialResult = namedtuple('TrialResult', 'trial seed statistic raw_statistic ks_distance')


class HWCheck(namedtuple('HWCheck', 'lhs rhs scale')):
    """sum (a_i - b_i)^2 over sorted spectra against Tr[(A - B)^2]."""
    __slots__ = ()

    def holds(self, tol):
        return self.lhs <= self.rhs + tol * self.scale


class PerturbationCheck(namedtuple('PerturbationCheck', 'observed bound')):
    __slots__ = ()

    def holds(self, tol=1e-8):
        return self.observed <= self.bound + tol


class ExperimentSummary(object):
    """
    Trials of one ensemble run, ordered by trial index, with the statistics
    and reference bounds derived from them.
    """
    def __init__(self, spec, statistic, seed, trials, delta, schedule_defined, epsilons=(), lsi_constant=None):
        self.spec = spec
        self.statistic = statistic
        self.seed = seed
        self.trials = list(trials)
        self.delta = delta
        self.schedule_defined = schedule_defined
        self.epsilons = tuple(float(e) for e in epsilons)
        self.lsi_constant = lsi_constant

    def __repr__(self):
        return 'ExperimentSummary(n={}, trials={}, mean={}, std={})'.format(
            self.spec.n, len(self.trials), self.mean, self.std)

    @cached_property
    def values(self):
        return np.array([t.statistic for t in self.trials])

    @property
    def mean(self):
        return float(np.mean(self.values))

    @property
    def std(self):
        return float(np.std(self.values, ddof=1))

    @property
    def mean_ks_distance(self):
        return float(np.mean([t.ks_distance for t in self.trials]))

    def tail(self, epsilon):
        return float(np.mean(np.abs(self.values - self.mean) >= epsilon))

    @property
    def smoothing_shift(self):
        """
        Mean of (smoothed - raw) statistic and its standard error, or None
        without smoothing.
        """
        if not self.delta:
            return None
        shifts = np.array([t.statistic - t.raw_statistic for t in self.trials])
        return float(np.mean(shifts)), float(np.std(shifts, ddof=1) / math.sqrt(shifts.size))

    @property
    def smoothing_shift_bound(self):
        if not self.delta:
            return None
        return self.statistic.lipschitz * math.sqrt(self.delta)

    def to_dict(self):
        data = {
            'ensemble': self.spec.to_dict(),
            'statistic': self.statistic.to_dict(),
            'seed': self.seed,
            'trials': len(self.trials),
            'd_n': self.spec.d_n,
            'delta': self.delta,
            'schedule_defined': self.schedule_defined,
            'extremal_dependence': self.spec.partition.replicated,
            'mean': self.mean,
            'std': self.std,
            'mean_ks_distance': self.mean_ks_distance,
            'tails': {repr(e): self.tail(e) for e in self.epsilons},
            'lsi_constant': self.lsi_constant._asdict() if self.lsi_constant else None,
        }
        shift = self.smoothing_shift
        if shift is not None:
            data['smoothing_shift'] = {
                'mean': shift[0],
                'standard_error': shift[1],
                'bound': self.smoothing_shift_bound,
                'holds': abs(shift[0]) <= self.smoothing_shift_bound + 3 * shift[1],
            }
        if self.lsi_constant is not None:
            data['references'] = {repr(e): self.references(e) for e in self.epsilons}
        return data

    def references(self, epsilon):
        c = self.lsi_constant.value
        lip = self.statistic.lipschitz
        n = self.spec.n
        if not (math.isfinite(c) and lip > 0):
            return {'guionnet': None, 'universality': None}
        return {
            'guionnet': guionnet_tail(n, epsilon, c, lip),
            'universality': universality_tail_bound(n, epsilon, lip, self.delta, c),
        }


class SizeTrend(namedtuple('SizeTrend', 'sizes seeds distances')):
    """Semicircle distances, one row per seed and one column per size."""
    __slots__ = ()

    @property
    def improving(self):
        """Share of seeds whose distance at the largest size beats the smallest."""
        return float(np.mean(self.distances[:, -1] < self.distances[:, 0]))

    @property
    def monotone(self):
        """Share of seeds whose distance never increases with size."""
        return float(np.mean(np.all(np.diff(self.distances, axis=1) <= 0, axis=1)))

    def to_dict(self):
        return {
            'sizes': list(self.sizes),
            'seeds': list(self.seeds),
            'distances': self.distances.tolist(),
            'improving': self.improving,
            'monotone': self.monotone,
        }
