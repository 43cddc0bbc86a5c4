"""
Options of every subcommand, validated as forms. `resolved()` is what
goes into output headers, and feeding it back in gives the same run.
"""
from django import forms

from measures.loading import load_measure
from numerics.exceptions import InvalidArgument
from rmt.loading import load_ensemble

from .fields import GridField


__all__ = (
    'RunConfig', 'BoundConfig', 'BGConfig', 'LowerConfig', 'LemmasConfig', 'RmtConfig',
    'SweepConfig',
)


FORMATS = (('json', 'json'), ('csv', 'csv'))


def _positive(value, name):
    if value is not None and not value > 0:
        raise forms.ValidationError('{} must be positive'.format(name))
    return value


class RunConfig(forms.Form):
    output = forms.CharField(required=False)
    format = forms.ChoiceField(choices=FORMATS, required=False)
    seed = forms.IntegerField(required=False)

    needs_seed = False

    def clean_output(self):
        return self.cleaned_data.get('output') or '-'

    def clean_format(self):
        return self.cleaned_data.get('format') or 'json'

    def clean_seed(self):
        seed = self.cleaned_data.get('seed')
        if self.needs_seed and seed is None:
            raise forms.ValidationError('a seed is required')
        return seed

    def resolved(self):
        return {k: v for k, v in self.cleaned_data.items() if k not in ('output', 'format')}


class BoundConfig(RunConfig):
    R = GridField(positive=True)
    delta = GridField(positive=True)
    n = GridField(cast=int, geometric=False, positive=True, required=False)
    a = forms.FloatField(required=False)

    def clean_n(self):
        return self.cleaned_data.get('n') or [1]

    def clean_a(self):
        return _positive(self.cleaned_data.get('a'), 'a')


class MeasureConfig(RunConfig):
    measure = forms.CharField()
    delta = GridField(positive=True)
    tol = forms.FloatField(required=False)

    def clean_measure(self):
        name = self.cleaned_data['measure']
        try:
            self.measure = load_measure(name)
        except InvalidArgument as e:
            raise forms.ValidationError(str(e))
        return name

    def clean_tol(self):
        return _positive(self.cleaned_data.get('tol'), 'tol')


class BGConfig(MeasureConfig):
    grid_points = forms.IntegerField(required=False, min_value=256)
    max_evaluations = forms.IntegerField(required=False, min_value=1)


class LowerConfig(MeasureConfig):
    family = forms.ChoiceField(choices=(('step', 'step'), ('exponential', 'exponential')), required=False)
    grid = GridField(geometric=False, required=False)
    threads = forms.IntegerField(required=False, min_value=1)

    def clean_family(self):
        return self.cleaned_data.get('family') or 'step'

    def clean(self):
        data = super().clean()
        if not data.get('grid') and 'family' in data:
            data['grid'] = [0.0] if data['family'] == 'step' else [1.0]
        return data


class LemmasConfig(MeasureConfig):
    measure = forms.CharField(required=False)
    delta = GridField(positive=True, required=False)
    x = GridField(geometric=False, required=False)
    gaussian = forms.BooleanField(required=False)

    def clean_measure(self):
        if not self.cleaned_data.get('measure'):
            return None
        return super().clean_measure()

    def clean(self):
        data = super().clean()
        if not data.get('gaussian'):
            for name in ('measure', 'delta'):
                if name in data and not data[name]:
                    self.add_error(name, 'required unless --gaussian is given')
        return data


class RmtConfig(RunConfig):
    ensemble = forms.CharField()
    n = forms.IntegerField(required=False, min_value=1)
    trials = forms.IntegerField(required=False, min_value=2)
    statistic = forms.ChoiceField(choices=(('identity', 'identity'), ('abs', 'abs')), required=False)
    epsilons = GridField(geometric=False, positive=True, required=False)
    policy = forms.ChoiceField(
        choices=[(k, k) for k in ('none', 'fixed', 'practical', 'asymptotic')], required=False)
    delta_value = forms.FloatField(required=False, min_value=0)
    scale = forms.FloatField(required=False)
    sizes = GridField(cast=int, geometric=False, positive=True, required=False)
    threads = forms.IntegerField(required=False, min_value=1)

    needs_seed = True

    def clean_ensemble(self):
        name = self.cleaned_data['ensemble']
        try:
            self.ensemble = load_ensemble(name)
        except InvalidArgument as e:
            raise forms.ValidationError(str(e))
        return name

    def clean_trials(self):
        return self.cleaned_data.get('trials') or 100

    def clean_statistic(self):
        return self.cleaned_data.get('statistic') or 'identity'

    def clean_epsilons(self):
        return self.cleaned_data.get('epsilons') or []

    def clean_scale(self):
        return _positive(self.cleaned_data.get('scale'), 'scale')

    def clean(self):
        data = super().clean()
        if data.get('policy') == 'fixed' and data.get('delta_value') is None:
            self.add_error('delta_value', 'the fixed policy needs --delta-value')
        return data


class SweepConfig(MeasureConfig):
    delta = None
    deltas = GridField(positive=True)
    estimator = forms.ChoiceField(choices=(('bg', 'bg'), ('lower', 'lower')), required=False)
    prefactor_power = forms.FloatField(required=False)
    threads = forms.IntegerField(required=False, min_value=1)

    def clean_estimator(self):
        return self.cleaned_data.get('estimator') or 'bg'

    def clean_prefactor_power(self):
        value = self.cleaned_data.get('prefactor_power')
        return 1.5 if value is None else value

    def clean_deltas(self):
        deltas = self.cleaned_data.get('deltas')
        if deltas and len(deltas) < 2:
            raise forms.ValidationError('a sweep needs at least two deltas')
        return deltas
