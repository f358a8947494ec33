from django.apps import AppConfig


class ParityFunctionalsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.parity_functionals'
    verbose_name = 'Funcionales de paridad Q_r / P_r'
