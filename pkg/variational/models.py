import math
from collections import namedtuple

import numpy as np

from numerics.exceptions import InvalidArgument


__all__ = ('TestFunction', 'RatioEstimate')


class TestFunction(object):
    """
    A Lipschitz test function on the line with its a.e. derivative.

    step:        scale * clip((x - shift) R / delta, 0, 1)
    exponential: scale * exp(alpha x)
    table:       piecewise linear through knots, constant outside
    """
    KINDS = ('step', 'exponential', 'table')
    __test__ = False

    def __init__(self, kind, scale=1.0, **params):
        if kind not in self.KINDS:
            raise InvalidArgument('Unknown test function kind {!r}'.format(kind))
        scale = float(scale)
        if not (math.isfinite(scale) and scale != 0):
            raise InvalidArgument('scale must be finite and nonzero')
        self.kind = kind
        self.scale = scale
        self.params = params

    def __repr__(self):
        return 'TestFunction({!r}, scale={}, {!r})'.format(self.kind, self.scale, self.params)

    @classmethod
    def step(cls, R, delta, shift=0.0, scale=1.0):
        R, delta = float(R), float(delta)
        if not (R > 0 and delta > 0):
            raise InvalidArgument('step needs R > 0 and delta > 0')
        return cls('step', scale, R=R, delta=delta, shift=float(shift))

    @classmethod
    def exponential(cls, alpha, scale=1.0):
        return cls('exponential', scale, alpha=float(alpha))

    @classmethod
    def table(cls, knots, scale=1.0):
        try:
            xs, ys = zip(*((float(x), float(y)) for x, y in knots))
        except (TypeError, ValueError):
            raise InvalidArgument('table knots must be [x, y] pairs')
        if np.any(np.diff(xs) <= 0):
            raise InvalidArgument('table knots must be strictly increasing in x')
        if not all(math.isfinite(v) for v in xs + ys):
            raise InvalidArgument('table knots must be finite')
        return cls('table', scale, xs=xs, ys=ys)

    @classmethod
    def constant(cls, value=1.0):
        return cls.table([(0.0, 1.0), (1.0, 1.0)], scale=value)

    @classmethod
    def from_description(cls, data):
        data = dict(data)
        kind = data.pop('kind', None)
        if kind == 'step':
            return cls.step(**data)
        if kind == 'exponential':
            return cls.exponential(**data)
        if kind == 'table':
            return cls.table(**data)
        raise InvalidArgument('Unknown test function kind {!r}'.format(kind))

    def scaled(self, factor):
        return TestFunction(self.kind, self.scale * factor, **self.params)

    @property
    def kinks(self):
        if self.kind == 'step':
            shift = self.params['shift']
            return (shift, shift + self.params['delta'] / self.params['R'])
        if self.kind == 'table':
            return tuple(self.params['xs'])
        return ()

    @property
    def slope(self):
        if self.kind == 'step':
            return self.params['R'] / self.params['delta']

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == 'step':
            lo, hi = self.kinks
            out = np.clip((x - lo) / (hi - lo), 0.0, 1.0)
        elif self.kind == 'exponential':
            out = np.exp(self.params['alpha'] * x)
        else:
            out = np.interp(x, self.params['xs'], self.params['ys'])
        return self.scale * out

    def log_abs(self, x):
        """log|f|, -inf where f vanishes."""
        x = np.asarray(x, dtype=float)
        if self.kind == 'exponential':
            return math.log(abs(self.scale)) + self.params['alpha'] * x
        with np.errstate(divide='ignore'):
            return np.log(np.abs(self(x)))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == 'step':
            lo, hi = self.kinks
            out = np.where((x > lo) & (x < hi), self.slope, 0.0)
        elif self.kind == 'exponential':
            out = self.params['alpha'] * np.exp(self.params['alpha'] * x)
        else:
            xs, ys = self.params['xs'], self.params['ys']
            slopes = np.diff(ys) / np.diff(xs)
            i = np.searchsorted(xs, x, side='right') - 1
            inside = (i >= 0) & (i < len(slopes))
            out = np.where(inside, slopes[np.clip(i, 0, len(slopes) - 1)], 0.0)
        return self.scale * out

    def to_dict(self):
        data = {'kind': self.kind, 'scale': self.scale}
        if self.kind == 'table':
            data['knots'] = [list(p) for p in zip(self.params['xs'], self.params['ys'])]
        else:
            data.update(self.params)
        return data


class RatioEstimate(namedtuple('RatioEstimate', (
        'entropy energy ratio entropy_error energy_error ratio_lower parameter'))):
    __slots__ = ()

    def to_dict(self):
        return self._asdict()
