from django.core.management.base import BaseCommand, CommandError

from ...exceptions import InterferometryError
from ...forms import SweepForm
from ...reports import sweep_csv, sweep_frame
from ._options import add_experiment_arguments, clean_or_fail, form_data


class Command(BaseCommand):
    help = 'Sweep delta, gamma or theta and print one CSV row per step.'
    requires_system_checks = []

    def add_arguments(self, parser):
        add_experiment_arguments(parser)
        parser.add_argument('--param', choices=['delta', 'gamma', 'theta'])
        parser.add_argument('--from', dest='from', type=str)
        parser.add_argument('--to', dest='to', type=str)
        parser.add_argument('--steps', type=str)

    def handle(self, *args, **options):
        cleaned = clean_or_fail(SweepForm(form_data(options)))
        try:
            frame = sweep_frame(
                cleaned['config'], cleaned['param'], cleaned['start'], cleaned['stop'], cleaned['steps'], cleaned['psi'],
            )
        except InterferometryError as e:
            raise CommandError(str(e), returncode=2)
        self.stdout.write(sweep_csv(frame), ending='')
