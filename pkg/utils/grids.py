"""
Parameter grids from the command line: `1,2,3` lists and `start:stop:count`
ranges (geometric by default, since the quantities swept vary
exponentially in 1/delta).
"""
import numpy as np

from numerics.exceptions import InvalidArgument


__all__ = ('parse_grid', 'parse_range', 'parse_list')


def _number(text, cast):
    try:
        return cast(text)
    except ValueError:
        raise InvalidArgument('Not a number: {!r}'.format(text))


def parse_list(text, cast=float):
    values = [_number(part.strip(), cast) for part in str(text).split(',') if part.strip()]
    if not values:
        raise InvalidArgument('Empty grid: {!r}'.format(text))
    return values


def parse_range(text, geometric=True):
    parts = str(text).split(':')
    if len(parts) != 3:
        raise InvalidArgument('Range must look like start:stop:count, got {!r}'.format(text))
    start, stop = _number(parts[0], float), _number(parts[1], float)
    count = _number(parts[2], int)
    if count < 1:
        raise InvalidArgument('Range count must be at least 1')
    if count == 1:
        return [start]
    if geometric:
        if start <= 0 or stop <= 0:
            raise InvalidArgument('Geometric range needs positive endpoints')
        values = np.geomspace(start, stop, count)
    else:
        values = np.linspace(start, stop, count)
    return [float(v) for v in values]


def parse_grid(text, cast=float, geometric=True, positive=False):
    if ':' in str(text):
        values = parse_range(text, geometric)
    else:
        values = parse_list(text, cast)
    if positive and any(v <= 0 for v in values):
        raise InvalidArgument('Grid values must be positive: {!r}'.format(text))
    return values
