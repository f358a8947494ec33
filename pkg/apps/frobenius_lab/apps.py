from django.apps import AppConfig


class FrobeniusLabConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.frobenius_lab'
    verbose_name = 'Laboratorio de Frobenius'
