"""
Lyapunov-function route to an LSI for mu * N(0, delta I_n), mu supported in
a ball of radius R: a drift condition with W(x) = exp(|x|^2 / 16 delta)
gives a Poincare constant, and A + (B + 2) C_P is then an LSI constant.
Every relaxation on the way to 289 R^2 exp(20n + 5R^2/delta) is recorded
in log form so it can be checked.
"""
import logging
import math

import numpy as np

from numerics.exceptions import InvalidArgument
from numerics.logspace import exp_or_inf

from .closed_form import thm_nd_bound
from .models import CGWConstants, ChainStep


__all__ = ('cgw_chain', 'lyapunov_slack', 'D_CONST')


logger = logging.getLogger(__name__)


# local Poincare constant of a ball of radius r is at most D r^2
D_CONST = 4 / math.pi ** 2


def _add(*log_terms):
    return float(np.logaddexp.reduce(log_terms))


def cgw_chain(R, delta, n):
    if not (R > 0 and delta > 0 and n >= 1):
        raise InvalidArgument('Need R > 0, delta > 0 and n >= 1')
    if delta > R * R:
        raise InvalidArgument('Need delta <= R^2 for a nonpositive Hessian bound, got delta = {} with R = {}'.format(delta, R))
    D = D_CONST
    R2 = R * R
    log_R2 = 2 * math.log(R)

    K_hess = 1 / delta - 2 * R2 / delta ** 2
    b = n / (8 * delta) + R2 / (32 * delta ** 2)
    c_lyap = 1 / (64 * delta ** 2)
    r0 = math.sqrt(16 * n * delta + 2 * R2)
    log_b_prime = n + R2 / (8 * delta) - 1 - math.log(4 * delta)
    lam = n / (8 * delta)
    log_kappa = math.log(D) + 2 * math.log(r0) + (r0 + R) ** 2 / (2 * delta)
    epsilon = 16 * delta
    second_moment_bound = n * delta + R2

    steps = []

    # Poincare constant
    cp = [
        ('(1 + b kappa) / lambda', _add(0.0, log_b_prime + log_kappa) - math.log(lam)),
        ('expanded', _add(
            math.log(8 * delta / n),
            math.log(D / math.e) + math.log(32 * delta + 4 * R2 / n)
            + n + R2 / (8 * delta) + (r0 + R) ** 2 / (2 * delta),
        )),
        ('delta <= R^2, n >= 1', _add(
            math.log(8) + log_R2,
            math.log(36 * D / math.e) + log_R2 + 17 * n + 25 * R2 / (8 * delta),
        )),
        ('merged', math.log(8 + 36 * D / math.e) + log_R2 + 17 * n + 25 * R2 / (8 * delta)),
    ]
    steps += [ChainStep('C_P', label, value) for label, value in cp]
    log_cp_exact, log_cp_relaxed = cp[0][1], cp[-1][1]

    A = 2 / c_lyap * (1 / epsilon - K_hess / 2) + epsilon
    A_relaxed = 128 * R2
    steps += [ChainStep('A', 'exact', math.log(A)), ChainStep('A', 'relaxed', math.log(A_relaxed))]

    B = 2 / c_lyap * (1 / epsilon - K_hess / 2) * (b + c_lyap * second_moment_bound)
    B_relaxed = 18 * n * R2 / delta + 6 * R2 ** 2 / delta ** 2 - 2
    # B and B_relaxed can be compared directly; B + 2 enters the product
    steps += [ChainStep('B', 'exact', math.log(B + 2)), ChainStep('B', 'relaxed', math.log(B_relaxed + 2))]

    lsi = [
        ('A + (B + 2) C_P', _add(math.log(A), math.log(B + 2) + log_cp_exact)),
        ('relaxed A, B, C_P', _add(math.log(A_relaxed), math.log(B_relaxed + 2) + log_cp_relaxed)),
        ('factored', _add(
            math.log(A_relaxed),
            math.log(12 * R2 / (2 * delta) * (3 * n + R2 / delta)) + log_cp_relaxed,
        )),
        ('u <= e^u', _add(
            math.log(A_relaxed),
            math.log(96 + 432 * D / math.e) + log_R2 + 20 * n + 37 * R2 / (8 * delta),
        )),
        ('common exponent', math.log(224 + 432 * D / math.e) + log_R2 + 20 * n + 5 * R2 / delta),
        ('K = 289', thm_nd_bound(R, delta, n).log_value),
    ]
    steps += [ChainStep('lsi', label, value) for label, value in lsi]

    constants = CGWConstants(
        R, delta, n,
        K_hess=K_hess,
        b=b,
        c_lyap=c_lyap,
        r0=r0,
        log_b_prime=log_b_prime,
        b_prime=exp_or_inf(log_b_prime),
        lam=lam,
        log_kappa_bound=log_kappa,
        kappa_bound=exp_or_inf(log_kappa),
        log_C_P_bound=log_cp_exact,
        log_C_P_relaxed=log_cp_relaxed,
        A=A,
        A_relaxed=A_relaxed,
        B_bound=B,
        B_relaxed=B_relaxed,
        second_moment_bound=second_moment_bound,
        D_const=D,
        epsilon=epsilon,
        log_lsi_bound_exact=lsi[0][1],
        log_lsi_bound_chain=lsi[1][1],
        log_lsi_bound_final=lsi[-1][1],
        steps=steps,
    )
    for prev, step in constants.violations():
        logger.warning('relaxation %s: %s -> %s decreases (%r < %r)',
                       step.chain, prev.label, step.label, step.log_value, prev.log_value)
    return constants


def lyapunov_slack(constants, r):
    """
    1_{r <= r0} - (b + lambda - c r^2) / b' * exp(r^2 / 16 delta), which is
    nonnegative when the drift bound holds at |x| = r.
    """
    k = constants
    r = np.asarray(r, dtype=float)
    value = (k.b + k.lam - k.c_lyap * r * r) * np.exp(r * r / (16 * k.delta) - k.log_b_prime)
    return (np.where(r <= k.r0, 1.0, 0.0) - value)[()]
