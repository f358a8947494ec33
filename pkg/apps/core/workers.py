"""
Pool de procesos para barridos de configuraciones independientes
"""
import logging
from concurrent.futures import ProcessPoolExecutor

from django.conf import settings

logger = logging.getLogger(__name__)


def worker_count() -> int:
    return max(1, int(getattr(settings, 'ARBOR_THREADS', 1)))


def run_parallel(fn, items, workers=None):
    """
    Aplica `fn` a cada item, conservando el orden de entrada

    Con un solo worker corre en línea (sin procesos hijos).
    `fn` debe ser una función de módulo (picklable).
    """
    items = list(items)
    workers = workers or worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.info(f"Ejecutando {len(items)} tareas con {workers} procesos")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
