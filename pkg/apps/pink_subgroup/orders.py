"""
Fórmulas exactas de orden y tabla comparativa contra BFS / enumeración
"""
import logging
from typing import Iterable, Optional

import pandas as pd

from apps.core.exceptions import CappedError, DomainError
from apps.parity_functionals.functionals import bits_in_b_prime
from apps.tree_core.automorphism import check_depth, node_count

from .closure import closure_order, enum_cap, enumerate_b_prime
from .generators import pink_generators

logger = logging.getLogger(__name__)

ORDERS_COLUMNS = ['r', 'n', 'log2_formula', 'bfs_order', 'bprime_count', 'match_flag', 'capped']


def log2_order_pink(r: int, n: int) -> int:
    """log₂|G^Pink_{r,n}| = 2^n − 1 − Σ_{m<n} 2^{n−1−m}·⌊m/r⌋"""
    if r < 1 or n < 1:
        raise DomainError(f"Se requiere r, n ≥ 1 (r={r}, n={n})")
    return (1 << n) - 1 - sum((1 << (n - 1 - m)) * (m // r) for m in range(n))


def log2_order_s(r: int, n: int) -> int:
    """log₂|S_{r,n}| = 2^{n−1} − Σ_{i=1}^{⌊(n−1)/r⌋} 2^{n−1−ir}"""
    if r < 1:
        raise DomainError(f"r debe ser ≥ 1 (recibido {r})")
    if n < 2:
        raise DomainError(f"S_{{r,n}} requiere n ≥ 2 (recibido {n})")
    return (1 << (n - 1)) - sum(1 << (n - 1 - i * r) for i in range(1, (n - 1) // r + 1))


def kernel_of_restriction_count(r: int, n: int) -> int:
    """
    #{σ ∈ B'_{r,n} : res(σ, n−1) = id}

    Solo se recorren las paridades del nivel n−1 (2^{2^{n−1}} candidatos).
    """
    check_depth(n)
    if n < 2:
        raise DomainError(f"Se requiere n ≥ 2 (recibido {n})")
    if n > enum_cap() + 1:
        raise CappedError(
            f"Conteo del núcleo limitado a n ≤ {enum_cap() + 1}",
            partial_count=0,
            cap=enum_cap() + 1,
        )
    offset = node_count(n - 1)
    width = 1 << (n - 1)
    return sum(
        1 for top in range(1 << width)
        if bits_in_b_prime(top << offset, n, r)
    )


def orders_row(r: int, n: int, bfs_log2_cap: int = 16, with_enumeration: bool = True) -> dict:
    """Una fila: fórmula, BFS de ⟨α_i⟩ si cabe, y |B'_{r,n}| si n ≤ límite"""
    formula = log2_order_pink(r, n)
    bfs_order: Optional[int] = None
    bprime_count: Optional[int] = None
    capped = False
    overflow = False

    if formula <= bfs_log2_cap:
        try:
            bfs_order = closure_order(pink_generators(r, n), cap=1 << formula)
        except CappedError:
            # la cerradura ya excede 2^formula
            overflow = True
    else:
        capped = True

    if with_enumeration:
        if n <= enum_cap():
            bprime_count = enumerate_b_prime(r, n).order
        else:
            capped = True

    expected = 1 << formula
    match = not overflow and all(
        value == expected for value in (bfs_order, bprime_count) if value is not None
    )
    if not match:
        logger.warning(f"⚠️ Orden inconsistente en r={r}, n={n}: 2^{formula} vs {bfs_order}/{bprime_count}")
    return {
        'r': r,
        'n': n,
        'log2_formula': formula,
        'bfs_order': bfs_order,
        'bprime_count': bprime_count,
        'match_flag': match,
        'capped': capped,
    }


def orders_table(r_values: Iterable[int], n_values: Iterable[int],
                 bfs_log2_cap: int = 16, with_enumeration: bool = True) -> pd.DataFrame:
    """
    Tabla (r, n, log2_formula, bfs_order, bprime_count, match_flag, capped)

    Un rango vacío produce una tabla vacía con las mismas columnas.
    """
    n_values = list(n_values)
    rows = [
        orders_row(r, n, bfs_log2_cap=bfs_log2_cap, with_enumeration=with_enumeration)
        for r in r_values
        for n in n_values
    ]
    frame = pd.DataFrame(rows, columns=ORDERS_COLUMNS)
    # Int64 conserva los huecos de filas limitadas sin convertir a float
    return frame.astype({'bfs_order': 'Int64', 'bprime_count': 'Int64'})


def emit_orders_table(frame: pd.DataFrame, path=None) -> str:
    """CSV de la tabla de órdenes; si hay `path`, también lo escribe"""
    payload = frame.to_csv(index=False)
    if path:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(payload)
    return payload
