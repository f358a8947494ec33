"""
Ledger de corridas de verificación
"""
from django.db import models


class VerificationRun(models.Model):
    SUBCOMMAND_ORDERS = 'orders'
    SUBCOMMAND_MEMBERSHIP = 'membership'
    SUBCOMMAND_PINK_CLOSURE = 'pink_closure'
    SUBCOMMAND_ENUMERATE_BPRIME = 'enumerate_bprime'
    SUBCOMMAND_FROBENIUS = 'frobenius_verify'
    SUBCOMMAND_LABEL_TREE = 'label_tree'
    SUBCOMMAND_CONDITION = 'condition_check'
    SUBCOMMAND_VERIFY_ALL = 'verify_all'

    SUBCOMMAND_CHOICES = [
        (SUBCOMMAND_ORDERS, 'Tabla de órdenes'),
        (SUBCOMMAND_MEMBERSHIP, 'Pertenencia a B\'/M\''),
        (SUBCOMMAND_PINK_CLOSURE, 'Clausura de generadores'),
        (SUBCOMMAND_ENUMERATE_BPRIME, 'Enumeración de B\''),
        (SUBCOMMAND_FROBENIUS, 'Verificación de Frobenius'),
        (SUBCOMMAND_LABEL_TREE, 'Árbol etiquetado'),
        (SUBCOMMAND_CONDITION, 'Condiciones de clases de cuadrados'),
        (SUBCOMMAND_VERIFY_ALL, 'Suites de aceptación'),
    ]

    subcommand = models.CharField(max_length=50, choices=SUBCOMMAND_CHOICES)
    parameters = models.JSONField(default=dict, blank=True)
    passed = models.BooleanField(default=True)
    exit_code = models.PositiveSmallIntegerField(default=0)
    report = models.JSONField(default=dict, blank=True)
    execution_time = models.FloatField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        verbose_name = 'corrida de verificación'
        verbose_name_plural = 'corridas de verificación'
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['subcommand'], name='verification_subcmd_idx'),
            models.Index(fields=['-created_at'], name='verification_created_idx'),
        ]

    def __str__(self):
        status = '✅' if self.passed else '❌'
        return f"{status} {self.get_subcommand_display()} #{self.pk}"
