import numpy as np

from .exceptions import InvalidArgument


__all__ = ('growth_rate',)


def growth_rate(deltas, values, prefactor_power=1.5):
    """
    Least-squares slope of log(value) against 1/delta. `slope` first
    removes a delta^prefactor_power factor, `naive_slope` does not.
    Returns (slope, naive_slope, intercept).
    """
    deltas = np.asarray(deltas, dtype=float)
    values = np.asarray(values, dtype=float)
    if deltas.shape != values.shape or deltas.size < 2:
        raise InvalidArgument('Need at least two (delta, value) pairs')
    if np.any(deltas <= 0) or np.any(values <= 0):
        raise InvalidArgument('deltas and values must be positive')
    x = 1 / deltas
    y = np.log(values)
    naive_slope, _ = np.polyfit(x, y, 1)
    slope, intercept = np.polyfit(x, y - prefactor_power * np.log(deltas), 1)
    return float(slope), float(naive_slope), float(intercept)
