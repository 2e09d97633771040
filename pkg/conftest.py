"""Pytest wiring: configure Django with the project settings before tests run."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'mz_lab.settings')
django.setup()
