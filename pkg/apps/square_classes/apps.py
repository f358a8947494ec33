from django.apps import AppConfig


class SquareClassesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.square_classes'
    verbose_name = 'Clases de cuadrados sobre ℚ'
