"""
Matrix draws. Every (seed, trial, purpose) triple owns its own Philox
stream, so changing the trial count never reshuffles earlier trials. Block
k of a partition reads row k of a (num_blocks, width) draw, and rows of a
counter-based stream are independent.
"""
import math

import numpy as np

from .conf import settings


__all__ = ('stream', 'sample_matrix', 'smooth_matrix', 'truncate_entries', 'symmetrize')


def stream(seed, trial, purpose):
    key = (int(trial), settings.RMT_STREAMS[purpose])
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=key)))


def symmetrize(n, values):
    """Symmetric matrix whose upper triangle, in np.triu_indices order, is `values`."""
    Y = np.zeros((n, n))
    Y[np.triu_indices(n)] = values
    return Y + np.triu(Y, 1).T


def sample_matrix(spec, seed, trial=0):
    blocks = spec.blocks
    draws = spec.entry_law.draw(stream(seed, trial, 'entries'), (blocks.num_blocks, blocks.width))
    return symmetrize(spec.n, draws[blocks.rows, blocks.cols])


def smooth_matrix(Y, delta, seed, trial=0):
    """Y + sqrt(delta) G with G a symmetric standard Gaussian matrix."""
    if delta == 0:
        return Y
    n = Y.shape[0]
    G = symmetrize(n, stream(seed, trial, 'smoothing').standard_normal(n * (n + 1) // 2))
    return Y + math.sqrt(delta) * G


def truncate_entries(Y, means, C):
    """Entries further than C from their mean are replaced by the mean."""
    if math.isinf(C):
        return Y
    means = np.broadcast_to(means, Y.shape)
    return np.where(np.abs(Y - means) <= C, Y, means)
