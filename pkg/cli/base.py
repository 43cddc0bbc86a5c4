import io
import logging

import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from numerics.exceptions import BudgetExceeded, InvalidArgument, NumericsError
from utils.io import dump_json, write_csv
from variational.exceptions import DegenerateFunction, NoValidCandidate

from .config import RunConfig
from .models import CommandResult


__all__ = ('SobolevCommand',)


logger = logging.getLogger(__name__)


def _errors(form):
    return '; '.join(
        '{}: {}'.format(field, ' '.join(messages))
        for field, messages in sorted(form.errors.items())
    )


class SobolevCommand(BaseCommand):
    """
    Validate options through `config_class`, run `compute` and write the
    result. Usage errors exit with 2, an exhausted numerical budget with 3
    after the partial output is written, any other numerical failure with 1.
    """
    config_class = RunConfig

    def add_arguments(self, parser):
        parser.add_argument('--output', help='output path, - for stdout')
        parser.add_argument('--format', help='json or csv')
        parser.add_argument('--seed')

    def compute(self, config):
        raise NotImplementedError

    def handle(self, *args, **options):
        fields = self.config_class.base_fields
        config = self.config_class(data={k: v for k, v in options.items() if k in fields and v is not None})
        if not config.is_valid():
            raise CommandError(_errors(config), returncode=2)
        try:
            result = self.compute(config)
        except (InvalidArgument, DegenerateFunction, NoValidCandidate) as e:
            raise CommandError(str(e), returncode=2)
        except BudgetExceeded as e:
            logger.warning('%s: %s', self.name, e)
            result = CommandResult([], {'partial': e.partial}, complete=False, summary={'error': str(e)})
        except NumericsError as e:
            raise CommandError('{}: {}'.format(type(e).__name__, e), returncode=1)
        self.write(config, result)
        if not result.complete:
            raise CommandError('numerical budget exceeded, partial results written', returncode=3)

    def render(self, config, result):
        header = {
            'command': self.name,
            'config': config.resolved(),
            'seed': config.cleaned_data.get('seed'),
            'complete': result.complete,
            'summary': result.summary,
        }
        stream = io.StringIO()
        if config.cleaned_data['format'] == 'csv':
            write_csv(pd.DataFrame(result.rows), stream, header)
        else:
            header['results'] = result.payload
            dump_json(header, stream)
        return stream.getvalue()

    def write(self, config, result):
        text = self.render(config, result)
        path = config.cleaned_data['output']
        if path == '-':
            self.stdout.write(text, ending='')
            return
        with open(path, 'w', encoding='utf-8', newline='') as fp:
            fp.write(text)
        logger.info('wrote %s', path)

    @property
    def name(self):
        return self.__module__.rsplit('.', 1)[-1]
