from django.apps import AppConfig


class InterferometryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'interferometry'
    verbose_name = 'Mach-Zehnder complementarity laboratory'
