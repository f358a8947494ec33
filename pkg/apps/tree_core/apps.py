"""
Configuración de la app Tree Core
"""
from django.apps import AppConfig


class TreeCoreConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.tree_core'
    verbose_name = 'Automorfismos de T_n'
