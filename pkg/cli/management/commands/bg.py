import logging
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings

from bg.functionals import bg_functionals
from cli.base import SobolevCommand
from cli.config import BGConfig
from cli.models import CommandResult
from numerics.exceptions import BudgetExceeded


logger = logging.getLogger(__name__)


COLUMNS = (
    'log_D0', 'log_D1', 'D0', 'D1', 'c_lower', 'c_upper', 'median', 'argmax_D0', 'argmax_D1',
    'truncation_x_min', 'truncation_x_max', 'complete', 'evaluations',
)


def bg_reports(measure, deltas, threads=None, **kwargs):
    """
    BGReport per delta in grid order; a report that ran out of budget is
    returned partial with `complete` false.
    """
    def cell(delta):
        logger.info('bg cell delta=%g', delta)
        try:
            return bg_functionals(measure.smoothed(delta), **kwargs)
        except BudgetExceeded as e:
            logger.warning('delta=%g: %s', delta, e)
            return e.partial

    with ThreadPoolExecutor(max_workers=threads or settings.SOBOLEV_THREADS) as pool:
        return list(pool.map(cell, deltas))


class Command(SobolevCommand):
    help = 'D0, D1 and the two-sided LSI bracket of a smoothed measure over a delta grid.'
    config_class = BGConfig

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--measure', help='measure description, a path or a name under data/measures')
        parser.add_argument('--delta', help='smoothing variances')
        parser.add_argument('--tol')
        parser.add_argument('--grid-points', dest='grid_points')
        parser.add_argument('--max-evaluations', dest='max_evaluations')

    def compute(self, config):
        data = config.cleaned_data
        reports = bg_reports(
            config.measure, data['delta'], tol=data['tol'], grid_points=data['grid_points'],
            max_evaluations=data['max_evaluations'],
        )
        payload = [dict(report.to_dict(), delta=delta) for delta, report in zip(data['delta'], reports)]
        rows = [dict({'delta': item['delta']}, **{k: item[k] for k in COLUMNS}) for item in payload]
        return CommandResult(rows, payload, complete=all(r.complete for r in reports))
