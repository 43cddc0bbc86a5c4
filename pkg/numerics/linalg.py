import numpy as np
from scipy import linalg

from .conf import settings
from .exceptions import InvalidArgument


__all__ = ('symmetric_eigenvalues', 'check_symmetric')


def check_symmetric(M, tol=None):
    if tol is None:
        tol = settings.NUMERICS_SYMMETRY_TOL
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidArgument('Expected a square matrix, got shape {}'.format(M.shape))
    if not np.all(np.isfinite(M)):
        raise InvalidArgument('Matrix has non-finite entries')
    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    if float(np.abs(M - M.T).max(initial=0.0)) > tol * scale:
        raise InvalidArgument('Matrix is not symmetric')
    return M


def symmetric_eigenvalues(M, tol=None):
    """
    Ascending eigenvalues of a dense real symmetric matrix (LAPACK
    tridiagonal reduction through scipy).
    """
    M = check_symmetric(M, tol)
    if M.shape[0] == 0:
        return np.empty(0)
    return linalg.eigh(0.5 * (M + M.T), eigvals_only=True)
