import argparse

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ...exceptions import InterferometryError
from ...forms import VerifyForm, first_error
from ...oracle import OracleConfig
from ...verification import run_suite, suite_table


class Command(BaseCommand):
    help = 'Run the invariant suite and the oracle cross-checks; exit 1 if any check fails.'
    requires_system_checks = []

    def add_arguments(self, parser):
        defaults = settings.INTERFEROMETRY
        parser.add_argument('--seed', type=str, default=str(defaults['ORACLE_SEED']))
        parser.add_argument('--samples', type=str, default=str(defaults['ORACLE_SAMPLES']))
        parser.add_argument('--tol', type=str, default=str(defaults['TOLERANCE']))
        parser.add_argument('--perturb', type=str, default='0', help=argparse.SUPPRESS)

    def handle(self, *args, **options):
        form = VerifyForm({key: options[key] for key in ('seed', 'samples', 'tol', 'perturb')})
        if not form.is_valid():
            raise CommandError(first_error(form), returncode=2)
        cleaned = form.cleaned_data
        try:
            oracle = OracleConfig(
                seed=cleaned['seed'],
                samples=cleaned['samples'],
                grid_resolution=settings.INTERFEROMETRY['GRID_RESOLUTION'],
                tolerance=cleaned['tol'],
            )
        except InterferometryError as e:
            raise CommandError(str(e), returncode=2)

        checks = run_suite(oracle, perturbation=cleaned['perturb'])
        self.stdout.write(suite_table(checks).to_string(index=False))
        failed = sum(not c.passed for c in checks)
        summary = f'{len(checks) - failed}/{len(checks)} checks passed (seed {oracle.seed})'
        if failed:
            self.stdout.write(summary)
            raise CommandError(f'{failed} check(s) failed', returncode=1)
        self.stdout.write(self.style.SUCCESS(summary))
