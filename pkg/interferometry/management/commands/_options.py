"""Argument plumbing shared by the run and sweep commands."""
import json
from pathlib import Path

from django.core.management.base import CommandError

from ...forms import first_error
from ...interferometer import Experiment

# argparse dest -> form field
FLAG_FIELDS = {
    'experiment': 'experiment',
    'delta': 'delta',
    'gamma': 'gamma',
    'theta': 'theta',
    'input': 'input',
    'degrees': 'degrees',
    'param': 'param',
    'from': 'start',
    'to': 'stop',
    'steps': 'steps',
}


def add_experiment_arguments(parser):
    parser.add_argument('--experiment', choices=Experiment.values)
    parser.add_argument('--delta', type=str, help='phase shift in radians')
    parser.add_argument('--gamma', type=str, help='erasure pointer phase in radians')
    parser.add_argument('--theta', type=str, help='marker tilt in radians')
    parser.add_argument('--input', type=str, help='re,im,re,im of (alpha, beta); use --input=-1,0,0,0 for a leading minus')
    parser.add_argument('--degrees', action='store_true', default=None, help='angles are given in degrees')
    parser.add_argument('--config', type=str, help='JSON file with the same fields; flags override it')


def form_data(options) -> dict:
    """Merge the --config file and the explicit flags into form data."""
    data = {}
    if options.get('config'):
        path = Path(options['config'])
        try:
            loaded = json.loads(path.read_text())
        except (OSError, ValueError) as e:
            raise CommandError(f'Cannot read config {path}: {e}', returncode=2)
        if not isinstance(loaded, dict):
            raise CommandError(f'Config {path} must hold a JSON object.', returncode=2)
        for key, value in loaded.items():
            data[FLAG_FIELDS.get(key, key)] = value
    for flag, field in FLAG_FIELDS.items():
        value = options.get(flag)
        if value is not None:
            data[field] = value
    if isinstance(data.get('input'), (list, tuple)):
        data['input'] = ','.join(str(v) for v in data['input'])
    return data


def clean_or_fail(form):
    if not form.is_valid():
        raise CommandError(first_error(form), returncode=2)
    return form.cleaned_data
