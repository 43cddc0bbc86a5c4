import itertools

from bounds.cgw import cgw_chain
from bounds.closed_form import (
    d_functional_bound, thm_1d_bound, thm_nd_bound, two_point_bounds, uniform_density_bound,
)
from bounds.models import Bound
from cli.base import SobolevCommand
from cli.config import BoundConfig
from cli.models import CommandResult


def cell_bounds(R, delta, n, a=None):
    """
    (name, Bound) pairs that apply at (R, delta, n), and the Lyapunov chain
    or None; the small-delta bounds need delta <= R^2.
    """
    small_regime = delta <= R * R
    general, small = thm_1d_bound(R, delta)
    bounds = [('thm_1d', general), ('thm_1d_small', small), ('d_functional', d_functional_bound(R, delta))]
    chain = None
    if small_regime:
        lower, upper = two_point_bounds(R, delta)
        bounds += [
            ('thm_nd', thm_nd_bound(R, delta, n)),
            ('two_point_lower', lower),
            ('two_point_upper', upper),
        ]
        if a and 2 * R * a <= 1:
            bounds.append(('uniform_density', uniform_density_bound(R, a, delta)))
        chain = cgw_chain(R, delta, n)
        bounds += [
            ('cgw_chain', Bound.from_log('cgw_chain', chain.log_lsi_bound_chain)),
            ('cgw_final', Bound.from_log('cgw_final', chain.log_lsi_bound_final)),
        ]
    return [(name, bound) for name, bound in bounds if bound is not None], chain


class Command(SobolevCommand):
    help = 'Closed-form LSI bounds and the Lyapunov constant chain over an (R, delta, n) grid.'
    config_class = BoundConfig

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--R', dest='R', help='support half-widths, list or start:stop:count')
        parser.add_argument('--delta', help='smoothing variances')
        parser.add_argument('--n', help='dimensions')
        parser.add_argument('--a', help='density lower bound for the uniform-density bound')

    def compute(self, config):
        data = config.cleaned_data
        rows, chains = [], []
        for R, delta, n in itertools.product(data['R'], data['delta'], data['n']):
            bounds, chain = cell_bounds(R, delta, n, data['a'])
            rows += [
                {'R': R, 'delta': delta, 'n': n, 'bound_name': name,
                 'log_value': bound.log_value, 'value': bound.value}
                for name, bound in bounds
            ]
            if chain is not None:
                chains.append(dict(chain.to_dict(), R=R, delta=delta, n=n))
        summary = {'cgw_monotone': all(c['monotone'] for c in chains) if chains else None}
        return CommandResult(rows, {'bounds': rows, 'cgw': chains}, summary=summary)
