from cli.base import SobolevCommand
from cli.config import RmtConfig
from cli.models import CommandResult
from rmt.experiments import concentration_experiment, size_trend
from rmt.models import DeltaPolicy, PiecewiseLinear


class Command(SobolevCommand):
    help = 'Spectral concentration and semicircle experiments on a dependence-partitioned ensemble.'
    config_class = RmtConfig

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--ensemble', help='ensemble description, a path or a name under data/ensembles')
        parser.add_argument('--n', help='override the matrix size')
        parser.add_argument('--trials', help='trials, or paired seeds with --sizes')
        parser.add_argument('--statistic', help='identity or abs')
        parser.add_argument('--epsilons', help='deviation thresholds for the tail table')
        parser.add_argument('--policy', help='none, fixed, practical or asymptotic')
        parser.add_argument('--delta-value', dest='delta_value')
        parser.add_argument('--scale')
        parser.add_argument('--sizes', help='matrix sizes for the semicircle trend')
        parser.add_argument('--threads')

    def compute(self, config):
        data = config.cleaned_data
        spec = config.ensemble
        if data['n']:
            spec = spec.with_size(data['n'])
        policy = None
        if data['policy']:
            policy = DeltaPolicy(data['policy'], value=data['delta_value'], scale=data['scale'])
        f = PiecewiseLinear.from_description(data['statistic'])

        if data['sizes']:
            seeds = [data['seed'] + k for k in range(data['trials'])]
            trend = size_trend(spec, data['sizes'], seeds, f, policy, data['threads'])
            rows = [
                {'seed': seed, 'n': n, 'ks_distance': float(trend.distances[i, j])}
                for i, seed in enumerate(seeds) for j, n in enumerate(trend.sizes)
            ]
            summary = {'improving': trend.improving, 'monotone': trend.monotone}
            return CommandResult(rows, trend.to_dict(), summary=summary)

        summary = concentration_experiment(
            spec, f, data['trials'], data['seed'], policy, data['epsilons'], data['threads'])
        rows = [
            {'trial': t.trial, 'seed': t.seed, 'statistic': t.statistic, 'ks_distance': t.ks_distance}
            for t in summary.trials
        ]
        payload = dict(summary.to_dict(), records=[t._asdict() for t in summary.trials])
        return CommandResult(rows, payload, summary={
            'mean': summary.mean,
            'std': summary.std,
            'delta': summary.delta,
            'schedule_defined': summary.schedule_defined,
            'extremal_dependence': spec.partition.replicated,
        })
