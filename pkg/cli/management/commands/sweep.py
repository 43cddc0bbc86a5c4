import math

from cli.base import SobolevCommand
from cli.config import SweepConfig
from cli.models import CommandResult
from numerics.fitting import growth_rate
from variational.functionals import ratio_lower_bound
from variational.models import TestFunction

from .bg import bg_reports


class Command(SobolevCommand):
    help = 'Growth rate of an LSI constant estimate in 1/delta over a delta grid.'
    config_class = SweepConfig

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--measure', help='measure description, a path or a name under data/measures')
        parser.add_argument('--deltas', help='smoothing variances, start:stop:count is geometric')
        parser.add_argument('--estimator', help='bg (468 (D0 + D1)) or lower (step test function ratio)')
        parser.add_argument('--prefactor-power', dest='prefactor_power')
        parser.add_argument('--tol')
        parser.add_argument('--threads')

    def estimates(self, config):
        data = config.cleaned_data
        measure = config.measure
        if data['estimator'] == 'bg':
            reports = bg_reports(measure, data['deltas'], data['threads'], tol=data['tol'])
            return [(r.c_upper, r.complete) for r in reports]
        return [
            (ratio_lower_bound(
                TestFunction.step(measure.R, delta, shift=measure.center),
                measure.smoothed(delta), tol=data['tol'],
            ).ratio, True)
            for delta in data['deltas']
        ]

    def compute(self, config):
        data = config.cleaned_data
        estimates = self.estimates(config)
        rows = [
            {
                'delta': delta,
                'inverse_delta': 1 / delta,
                'estimate': value,
                'log_estimate': math.log(value) if value > 0 else -math.inf,
                'complete': complete,
            }
            for delta, (value, complete) in zip(data['deltas'], estimates)
        ]
        slope, naive_slope, intercept = growth_rate(
            data['deltas'], [value for value, _ in estimates], data['prefactor_power'])
        summary = {
            'slope': slope,
            'naive_slope': naive_slope,
            'intercept': intercept,
            'prefactor_power': data['prefactor_power'],
        }
        return CommandResult(rows, complete=all(c for _, c in estimates), summary=summary)
