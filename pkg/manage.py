#!/usr/bin/env python
"""Línea de comandos de arbor: subcomandos de verificación y utilidades de Django."""
import os
import sys


def main():
    """Ejecuta un subcomando (orders, frobenius_verify, verify_all, ...)."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "No se pudo importar Django. ¿Está instalado y disponible en "
            "PYTHONPATH? ¿Activaste el entorno virtual?"
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
