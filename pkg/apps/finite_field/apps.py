from django.apps import AppConfig


class FiniteFieldConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.finite_field'
    verbose_name = 'Campos finitos F_{p^k}'
