import math

import numpy as np
from scipy import optimize

from numerics.exceptions import InvalidArgument
from numerics.linalg import check_symmetric, symmetric_eigenvalues

from .models import HWCheck, PerturbationCheck, SpectralSample


__all__ = (
    'hw_check', 'lipschitz_statistic', 'perturbation_bound_check', 'semicircle_cdf',
    'semicircle_quantile', 'semicircle_distance',
)


def hw_check(A, B):
    A, B = check_symmetric(A), check_symmetric(B)
    if A.shape != B.shape:
        raise InvalidArgument('Shape mismatch: {} vs {}'.format(A.shape, B.shape))
    a, b = symmetric_eigenvalues(A), symmetric_eigenvalues(B)
    lhs = math.fsum((a - b) ** 2)
    rhs = math.fsum(((A - B) ** 2).ravel())
    return HWCheck(lhs, rhs, max(1.0, math.fsum(a ** 2) + math.fsum(b ** 2)))


def lipschitz_statistic(sample, f):
    """Integral of f against the empirical spectral law."""
    return float(np.mean(f(sample.eigenvalues)))


def perturbation_bound_check(X, X_tilde, f):
    """
    |int f dmu_X - int f dmu_X~| against Lip(f) / sqrt(n) * Tr[(X - X~)^2]^(1/2),
    with X and X~ already scaled.
    """
    X, X_tilde = check_symmetric(X), check_symmetric(X_tilde)
    if X.shape != X_tilde.shape:
        raise InvalidArgument('Shape mismatch: {} vs {}'.format(X.shape, X_tilde.shape))
    n = X.shape[0]
    first = SpectralSample.from_matrix(X, scale=1)
    second = SpectralSample.from_matrix(X_tilde, scale=1)
    observed = abs(lipschitz_statistic(first, f) - lipschitz_statistic(second, f))
    bound = f.lipschitz / math.sqrt(n) * math.sqrt(math.fsum(((X - X_tilde) ** 2).ravel()))
    return PerturbationCheck(observed, bound)


def semicircle_cdf(x, sigma=1.0):
    u = np.clip(np.asarray(x, dtype=float) / (2 * sigma), -1, 1)
    return 0.5 + (u * np.sqrt(1 - u * u) + np.arcsin(u)) / math.pi


def semicircle_quantile(p, sigma=1.0):
    if not 0 <= p <= 1:
        raise InvalidArgument('p must lie in [0, 1], got {}'.format(p))
    if p in (0, 1):
        return (2 * p - 1) * 2 * sigma
    return optimize.brentq(lambda x: semicircle_cdf(x, sigma) - p, -2 * sigma, 2 * sigma, xtol=1e-14)


def semicircle_distance(sample, sigma=1.0):
    """Kolmogorov-Smirnov distance to the semicircle law on [-2 sigma, 2 sigma]."""
    eigenvalues = np.sort(np.asarray(sample.eigenvalues, dtype=float))
    n = eigenvalues.size
    if n == 0:
        raise InvalidArgument('Empty spectrum')
    F = semicircle_cdf(eigenvalues, sigma)
    above = np.arange(1, n + 1) / n - F
    below = F - np.arange(n) / n
    return float(max(above.max(), below.max()))
