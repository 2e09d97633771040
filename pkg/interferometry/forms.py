import logging
import math

import numpy as np
from django import forms
from django.conf import settings

from .interferometer import Experiment, MzConfig
from .oracle import MAX_SEED

logger = logging.getLogger(__name__)

ANGLES = ('delta', 'gamma', 'theta')


class RunForm(forms.Form):
    experiment = forms.ChoiceField(choices=Experiment.choices)
    delta = forms.FloatField(required=False)
    gamma = forms.FloatField(required=False)
    theta = forms.FloatField(required=False)
    input = forms.CharField(required=False, help_text='re,im,re,im of (alpha, beta)')
    degrees = forms.BooleanField(required=False)

    def clean_input(self):
        raw = self.cleaned_data.get('input')
        if raw in (None, ''):
            return np.array(settings.INTERFEROMETRY['DEFAULT_INPUT'], dtype=float)
        if isinstance(raw, str):
            raw = raw.split(',')
        try:
            values = np.array([float(v) for v in raw], dtype=float)
        except (TypeError, ValueError):
            raise forms.ValidationError('Input must be four numbers re,im,re,im.', code='invalid_input')
        if values.shape != (4,):
            raise forms.ValidationError('Input must be four numbers re,im,re,im.', code='invalid_input')
        if not np.all(np.isfinite(values)):
            raise forms.ValidationError('Input contains NaN or infinity.', code='invalid_input')
        return values

    def _angle(self, name, cleaned_data, default=0.0):
        value = cleaned_data.get(name)
        if value is None:
            return default
        if not math.isfinite(value):
            self.add_error(name, forms.ValidationError('Angle must be finite.', code='non_finite'))
            return default
        return math.radians(value) if cleaned_data.get('degrees') else value

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data

        for name in ANGLES:
            cleaned_data[name] = self._angle(name, cleaned_data, default=None if name == 'delta' else 0.0)

        values = cleaned_data['input']
        psi = np.array([values[0] + 1j * values[1], values[2] + 1j * values[3]])
        norm = float(np.linalg.norm(psi))
        if norm == 0.0:
            raise forms.ValidationError('Input state is the zero vector.', code='zero_input')
        if abs(norm - 1.0) > settings.INTERFEROMETRY['INPUT_TOLERANCE']:
            logger.warning('Input norm %.12g is not 1; re-normalizing', norm)
        cleaned_data['psi'] = psi / norm

        if not self.errors:
            cleaned_data['config'] = MzConfig.for_experiment(
                cleaned_data['experiment'],
                delta=cleaned_data['delta'],
                gamma=cleaned_data['gamma'],
                theta=cleaned_data['theta'],
            )
        return cleaned_data


class SweepForm(RunForm):
    param = forms.ChoiceField(choices=[(name, name) for name in ANGLES])
    start = forms.FloatField()
    stop = forms.FloatField()
    steps = forms.IntegerField(min_value=2)

    def clean_steps(self):
        steps = self.cleaned_data['steps']
        limit = settings.INTERFEROMETRY['SWEEP_MAX_STEPS']
        if steps > limit:
            raise forms.ValidationError(f'At most {limit} steps.', code='too_many_steps')
        return steps

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        start, stop = cleaned_data['start'], cleaned_data['stop']
        if not (math.isfinite(start) and math.isfinite(stop)):
            raise forms.ValidationError('Sweep bounds must be finite.', code='non_finite')
        if cleaned_data.get('degrees'):
            start, stop = math.radians(start), math.radians(stop)
        if not start < stop:
            raise forms.ValidationError('--from must be smaller than --to.', code='empty_range')
        cleaned_data['start'], cleaned_data['stop'] = start, stop
        return cleaned_data


class VerifyForm(forms.Form):
    seed = forms.IntegerField(min_value=0, max_value=MAX_SEED - 1)
    samples = forms.IntegerField(min_value=1)
    tol = forms.FloatField()
    perturb = forms.FloatField(required=False)

    def clean_tol(self):
        tol = self.cleaned_data['tol']
        if not (math.isfinite(tol) and tol > 0):
            raise forms.ValidationError('Tolerance must be a positive number.', code='invalid_tolerance')
        return tol

    def clean_perturb(self):
        return self.cleaned_data.get('perturb') or 0.0


def first_error(form: forms.Form) -> str:
    """One-line diagnostic from a bound, invalid form."""
    for field, errors in form.errors.items():
        prefix = '' if field == '__all__' else f'{field}: '
        return f'{prefix}{errors[0]}'
    return 'invalid arguments'
