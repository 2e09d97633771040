from django.core.management.base import BaseCommand, CommandError

from ...exceptions import InterferometryError
from ...forms import RunForm
from ...reports import canonical_json, run_report
from ._options import add_experiment_arguments, clean_or_fail, form_data


class Command(BaseCommand):
    help = 'Run one interferometer experiment and print a JSON report.'
    requires_system_checks = []

    def add_arguments(self, parser):
        add_experiment_arguments(parser)

    def handle(self, *args, **options):
        cleaned = clean_or_fail(RunForm(form_data(options)))
        try:
            report = run_report(cleaned['config'], cleaned['psi'])
        except InterferometryError as e:
            raise CommandError(str(e), returncode=2)
        self.stdout.write(canonical_json(report))
