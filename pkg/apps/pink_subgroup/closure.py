"""
Cerradura de subgrupos por BFS y enumeración exhaustiva de B'_{r,n}

Los elementos se manejan como enteros de paridades. Multiplicar por la
derecha h ↦ h·g es una permutación de bits (bit x de h·g = bit g(x) de h)
seguida de un XOR con las paridades de g; la permutación se evalúa con
tablas por byte.
"""
import logging
import time
from array import array
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from django.conf import settings

from apps.core.exceptions import CappedError, DomainError
from apps.parity_functionals.functionals import (
    bits_in_b_prime,
    bits_root_residue,
    e_bound,
)
from apps.tree_core.automorphism import (
    TreeAutomorphism,
    check_depth,
    invert,
    node_count,
    node_map,
)

logger = logging.getLogger(__name__)

BITMAP_MAX_NODES = 31


def closure_cap() -> int:
    return int(getattr(settings, 'ARBOR_CLOSURE_CAP', 2 ** 24))


def enum_cap() -> int:
    return int(getattr(settings, 'ARBOR_ENUM_CAP', 4))


@dataclass(frozen=True)
class FiniteGroup:
    """Conjunto cerrado de automorfismos, ordenado por su entero de paridades"""
    depth: int
    keys: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.keys)

    @property
    def elements(self) -> Iterator[TreeAutomorphism]:
        return (TreeAutomorphism(self.depth, key) for key in self.keys)

    def __contains__(self, sigma: TreeAutomorphism) -> bool:
        return sigma.depth == self.depth and sigma.bits in self.key_set

    @cached_property
    def key_set(self) -> frozenset:
        return frozenset(self.keys)


def right_multiplier(g: TreeAutomorphism) -> Tuple[List[List[int]], int]:
    """Tablas por byte para h ↦ h·g y las paridades de g"""
    inverse_map = node_map(invert(g))
    total = node_count(g.depth)
    tables = []
    for start in range(0, total, 8):
        singles = [1 << inverse_map[start + j] if start + j < total else 0 for j in range(8)]
        table = [0] * 256
        for value in range(1, 256):
            low = value & -value
            table[value] = table[value ^ low] | singles[low.bit_length() - 1]
        tables.append(table)
    return tables, g.bits


def _multiply(h: int, tables: Sequence[List[int]], g_bits: int) -> int:
    out = g_bits
    for table in tables:
        out ^= table[h & 255]
        h >>= 8
    return out


def _generators_for(gens: Iterable[TreeAutomorphism], depth: Optional[int]):
    gens = list(gens)
    if gens:
        depth = gens[0].depth
        if any(g.depth != depth for g in gens):
            raise DomainError("Todos los generadores deben tener la misma profundidad")
    if depth is None:
        raise DomainError("Se requiere la profundidad cuando no hay generadores")
    return gens, depth


def closure(gens: Iterable[TreeAutomorphism], cap: Optional[int] = None,
            depth: Optional[int] = None) -> FiniteGroup:
    """
    Subgrupo generado, por BFS desde la identidad

    Raises:
        CappedError: si el conjunto supera `cap` (lleva la cuenta parcial)
    """
    gens, depth = _generators_for(gens, depth)
    cap = closure_cap() if cap is None else cap
    if cap < 1:
        raise DomainError(f"cap debe ser ≥ 1 (recibido {cap})")

    start = time.time()
    multipliers = [right_multiplier(g) for g in gens]
    seen = {0}
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for tables, g_bits in multipliers:
            product = _multiply(h, tables, g_bits)
            if product not in seen:
                seen.add(product)
                if len(seen) > cap:
                    logger.warning(f"⚠️ Cerradura truncada en {cap} elementos (n={depth})")
                    raise CappedError(
                        f"La cerradura excede el límite de {cap} elementos",
                        partial_count=len(seen),
                        cap=cap,
                    )
                queue.append(product)

    group = FiniteGroup(depth=depth, keys=tuple(sorted(seen)))
    logger.info(f"✅ Cerradura n={depth}: orden {group.order} en {time.time() - start:.2f}s")
    return group


def closure_order(gens: Iterable[TreeAutomorphism], cap: Optional[int] = None,
                  depth: Optional[int] = None) -> int:
    """
    Solo el orden de la cerradura

    Hasta n=5 (31 bits) usa un bitmap de 2^31 bits en lugar de un set.
    """
    gens, depth = _generators_for(gens, depth)
    bits_per_key = node_count(depth)
    if bits_per_key > BITMAP_MAX_NODES:
        return closure(gens, cap=cap, depth=depth).order

    cap = closure_cap() if cap is None else cap
    start = time.time()
    multipliers = [right_multiplier(g) for g in gens]
    seen = bytearray(max(1, (1 << bits_per_key) >> 3))
    seen[0] = 1
    queue = array('Q', [0])
    head = 0
    count = 1
    while head < len(queue):
        h = queue[head]
        head += 1
        for tables, g_bits in multipliers:
            product = _multiply(h, tables, g_bits)
            byte, bit = product >> 3, 1 << (product & 7)
            if not seen[byte] & bit:
                seen[byte] |= bit
                count += 1
                if count > cap:
                    logger.warning(f"⚠️ Cerradura truncada en {cap} elementos (n={depth})")
                    raise CappedError(
                        f"La cerradura excede el límite de {cap} elementos",
                        partial_count=count,
                        cap=cap,
                    )
                queue.append(product)

    logger.info(f"✅ Orden de cerradura n={depth}: {count} en {time.time() - start:.2f}s")
    return count


def _check_enum(n: int):
    check_depth(n)
    if n > enum_cap():
        raise CappedError(
            f"La enumeración exhaustiva está limitada a n ≤ {enum_cap()} (pedido n={n})",
            partial_count=0,
            cap=enum_cap(),
        )


def enumerate_b_prime(r: int, n: int) -> FiniteGroup:
    """Todos los σ ∈ Aut(T_n) con P_r ≡ 1 en cada nodo"""
    _check_enum(n)
    keys = tuple(bits for bits in range(1 << node_count(n)) if bits_in_b_prime(bits, n, r))
    logger.info(f"B'_{{{r},{n}}}: {len(keys)} elementos")
    return FiniteGroup(depth=n, keys=keys)


def enumerate_m_prime(r: int, n: int) -> FiniteGroup:
    """Todos los σ ∈ Aut(T_n) con residuos P_r consistentes entre nodos"""
    _check_enum(n)
    keys = tuple(
        bits for bits in range(1 << node_count(n))
        if bits_root_residue(bits, n, r) is not None
    )
    return FiniteGroup(depth=n, keys=keys)


def cyclotomic_image(r: int, n: int) -> Dict:
    """
    Imagen de P_r en la raíz sobre M'_{r,n}, con el tamaño de cada fibra

    Reporta también si la fibra de 1 coincide con B'_{r,n} y la ley del índice.
    """
    _check_enum(n)
    exponent = e_bound(0, n, r)
    fibers: Counter = Counter()
    kernel_mismatches = 0
    b_prime_order = 0
    for bits in range(1 << node_count(n)):
        root = bits_root_residue(bits, n, r)
        in_b = bits_in_b_prime(bits, n, r)
        b_prime_order += in_b
        if root is not None:
            fibers[root] += 1
        if in_b != (root == 1):
            kernel_mismatches += 1

    m_prime_order = sum(fibers.values())
    odd_residues = list(range(1, 1 << exponent, 2))
    sizes = {fibers.get(v, 0) for v in odd_residues}
    return {
        'r': r,
        'n': n,
        'exponent': exponent,
        'm_prime_order': m_prime_order,
        'b_prime_order': b_prime_order,
        'fibers': {str(v): fibers.get(v, 0) for v in odd_residues},
        'surjective': all(fibers.get(v, 0) > 0 for v in odd_residues),
        'equal_fibers': len(sizes) == 1,
        'kernel_matches': kernel_mismatches == 0,
        'index_law': m_prime_order == b_prime_order << (exponent - 1),
    }
