"""
Base común de los comandos de gestión

Traduce las excepciones del dominio a códigos de salida estables:
0 éxito, 1 verificación fallida, 2 error de uso o de dominio.
"""
import json
import logging
import time
from typing import Iterable, List, Optional, Tuple, Union

import pandas as pd
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import USAGE_ERRORS, ArithmeticIntegrityError, DomainError
from apps.core.reporting import render_json, render_table

from .models import VerificationRun

logger = logging.getLogger(__name__)

FORMATS = ('tty', 'json', 'csv')

Payload = Union[dict, pd.DataFrame]


def parse_range(text: Optional[str]) -> List[int]:
    """
    '1-4' → [1, 2, 3, 4]; '2,5' → [2, 5]; '3' → [3]; '' → []
    """
    if text is None or not str(text).strip():
        return []
    values = []
    for part in str(text).split(','):
        part = part.strip()
        try:
            if '-' in part[1:]:
                low, high = part.split('-', 1)
                values.extend(range(int(low), int(high) + 1))
            else:
                values.append(int(part))
        except ValueError:
            raise DomainError(f"Rango inválido: '{text}'")
    return values


def _json_safe(data):
    return json.loads(render_json(data))


class ArborCommand(BaseCommand):
    """
    Comando con --format, --out, --seed y --record

    Las subclases implementan `add_command_arguments` y `run`, que devuelve
    (payload, passed); payload es un dict o un DataFrame.
    """
    subcommand = ''
    default_format = 'tty'

    def add_arguments(self, parser):
        parser.add_argument('--format', choices=FORMATS, default=self.default_format,
                            help='Formato de salida')
        parser.add_argument('--out', help='Escribe el reporte en este archivo en lugar de stdout')
        parser.add_argument('--seed', type=int, default=None,
                            help='Semilla (por defecto ARBOR_SEED)')
        parser.add_argument('--record', action='store_true',
                            help='Guarda la corrida en el ledger (requiere migrate)')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, **options) -> Tuple[Payload, bool]:
        raise NotImplementedError

    def seed(self, options) -> int:
        seed = options.get('seed')
        return int(getattr(settings, 'ARBOR_SEED', 20240601)) if seed is None else seed

    def render(self, payload: Payload, fmt: str) -> str:
        if isinstance(payload, pd.DataFrame):
            return render_table(payload, fmt)
        if fmt == 'json':
            return render_json(payload)
        flat = pd.json_normalize(_json_safe(payload), sep='.')
        if fmt == 'csv':
            return flat.to_csv(index=False)
        return flat.T.to_string(header=False) + '\n'

    def handle(self, *args, **options):
        start = time.time()
        try:
            payload, passed = self.run(**options)
        except USAGE_ERRORS as exc:
            logger.warning(f"⚠️ {self.subcommand}: {exc}")
            raise CommandError(str(exc), returncode=2)
        except ArithmeticIntegrityError as exc:
            logger.error(f"❌ Integridad aritmética en {self.subcommand}: {exc}")
            raise CommandError(str(exc), returncode=1)

        output = self.render(payload, options['format'])
        if options.get('out'):
            with open(options['out'], 'w', encoding='utf-8') as handle:
                handle.write(output)
            self.stdout.write(self.style.SUCCESS(f"Reporte escrito en {options['out']}"))
        else:
            self.stdout.write(output, ending='')

        elapsed = time.time() - start
        if options.get('record'):
            self.record(options, payload, passed, elapsed)
        if not passed:
            raise CommandError(f"{self.subcommand}: verificación fallida", returncode=1)

    def record(self, options, payload: Payload, passed: bool, elapsed: float):
        if isinstance(payload, pd.DataFrame):
            report = {'rows': json.loads(render_table(payload, 'json'))}
        else:
            report = _json_safe(payload)
        parameters = {
            key: value for key, value in options.items()
            if key not in ('verbosity', 'settings', 'pythonpath', 'traceback', 'no_color',
                           'force_color', 'skip_checks', 'stdout', 'stderr')
        }
        run = VerificationRun.objects.create(
            subcommand=self.subcommand,
            parameters=_json_safe(parameters),
            passed=passed,
            exit_code=0 if passed else 1,
            report=report,
            execution_time=elapsed,
        )
        logger.info(f"Corrida registrada: {run}")


def require(options, *names: str) -> Iterable:
    missing = [name for name in names if options.get(name) is None]
    if missing:
        raise DomainError(f"Faltan parámetros: {', '.join('--' + name for name in missing)}")
    return [options[name] for name in names]
