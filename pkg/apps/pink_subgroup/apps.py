from django.apps import AppConfig


class PinkSubgroupConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.pink_subgroup'
    verbose_name = 'Subgrupo de Pink y fórmulas de orden'
