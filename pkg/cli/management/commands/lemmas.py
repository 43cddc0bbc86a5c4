import math

import numpy as np

from bg.conf import settings
from bg.lemmas import gaussian_slack_table, verify_tail_lemmas
from cli.base import SobolevCommand
from cli.config import LemmasConfig
from cli.models import CommandResult


class Command(SobolevCommand):
    help = 'Slack tables of the Gaussian-tail inequalities used by the D functional bounds.'
    config_class = LemmasConfig

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--measure', help='measure description, a path or a name under data/measures')
        parser.add_argument('--delta', help='smoothing variances')
        parser.add_argument('--x', help='distances from the center, default R to R + 6 sqrt(delta)')
        parser.add_argument('--gaussian', action='store_true', help='tabulate the standard Gaussian inequalities')
        parser.add_argument('--tol')

    def compute(self, config):
        data = config.cleaned_data
        tol = data['tol'] or settings.BG_LEMMA_TOL
        if data['gaussian']:
            xs = data['x'] or np.linspace(0, 40, 41)
            rows = [
                dict(row._asdict(), holds=min(row.tail, row.integral) >= -tol)
                for row in gaussian_slack_table(xs)
            ]
            return CommandResult(rows)

        R = config.measure.R
        rows, payload = [], []
        for delta in data['delta']:
            m = config.measure.smoothed(delta)
            xs = data['x'] or np.linspace(R, R + 6 * math.sqrt(delta), 7)
            for x in xs:
                slacks = verify_tail_lemmas(m, x)
                row = {'delta': delta, 'x': float(x), 'holds': slacks.holds(tol)}
                row.update(('slack_' + k, v) for k, v in slacks.slacks.items())
                rows.append(row)
                payload.append(dict(slacks.to_dict(), delta=delta, holds=row['holds']))
        return CommandResult(rows, payload, complete=True, summary={'all_hold': all(r['holds'] for r in rows)})
