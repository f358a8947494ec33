"""
Jerarquía de errores de arbor

Los comandos de gestión traducen estas excepciones a códigos de salida:
errores de dominio/uso → 2, fallas de integridad → 1.
"""


class ArborError(Exception):
    """Error base de todo el proyecto"""


class DomainError(ArborError, ValueError):
    """Parámetros fuera de dominio (profundidad, nivel, rangos, p no primo...)"""


class ForwardOrbitError(DomainError):
    """x0 pertenece a la órbita hacia adelante de 0"""


class ContractError(ArborError):
    """Se violó la precondición de una función pura"""


class CappedError(ArborError):
    """El cómputo excedió un límite configurado"""

    def __init__(self, message, partial_count=None, cap=None):
        super().__init__(message)
        self.partial_count = partial_count
        self.cap = cap


class ArithmeticIntegrityError(ArborError):
    """Inconsistencia aritmética interna (indica un bug, no un mal input)"""


class UnavailableError(ArborError):
    """El objeto pedido no existe en el campo actual (p.ej. raíz 2^E de la unidad)"""


class UnfactoredError(ArborError):
    """La factorización no se completó dentro del límite de división por tentativa"""


class UnsupportedError(ArborError):
    """Caso fuera del alcance racional implementado"""


# Errores que el CLI reporta como uso/dominio (exit 2)
USAGE_ERRORS = (
    DomainError,
    ContractError,
    CappedError,
    UnavailableError,
    UnfactoredError,
    UnsupportedError,
)
