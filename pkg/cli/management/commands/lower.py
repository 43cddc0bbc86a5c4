import logging
import math

from cli.base import SobolevCommand
from cli.config import LowerConfig
from cli.models import CommandResult
from numerics.exceptions import BudgetExceeded
from variational.functionals import optimize_ratio
from variational.models import RatioEstimate


logger = logging.getLogger(__name__)


class Command(SobolevCommand):
    help = 'Entropy/energy lower bounds on the LSI constant from a test function family.'
    config_class = LowerConfig

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--measure', help='measure description, a path or a name under data/measures')
        parser.add_argument('--delta', help='smoothing variances')
        parser.add_argument('--family', help='step (threshold offsets) or exponential (rates)')
        parser.add_argument('--grid', help='family parameters')
        parser.add_argument('--tol')
        parser.add_argument('--threads')

    def compute(self, config):
        data = config.cleaned_data
        rows = []
        for delta in data['delta']:
            try:
                estimate = optimize_ratio(
                    data['family'], config.measure.smoothed(delta), data['grid'],
                    tol=data['tol'], threads=data['threads'],
                )
                row = dict(estimate._asdict(), complete=True)
            except BudgetExceeded as e:
                logger.warning('delta=%g: %s', delta, e)
                row = dict(dict.fromkeys(RatioEstimate._fields, math.nan), complete=False)
            rows.append(dict(row, delta=delta, family=data['family']))
        return CommandResult(rows, complete=all(row['complete'] for row in rows))
