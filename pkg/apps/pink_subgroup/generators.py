"""
Generadores de Pink α_1..α_r a profundidad finita

Par(α_i, w) = 1 exactamente en las palabras a^{i-1}(b a^{r-1})^m.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from apps.core.exceptions import DomainError
from apps.parity_functionals.functionals import in_b_prime
from apps.tree_core.automorphism import (
    TreeAutomorphism,
    check_depth,
    identity,
    root_transposition,
    wreath,
)

logger = logging.getLogger(__name__)


def _check_index(i: int, r: int):
    if r < 1:
        raise DomainError(f"r debe ser ≥ 1 (recibido {r})")
    if not 1 <= i <= r:
        raise DomainError(f"Índice de generador fuera de rango: i={i}, r={r}")


def alpha_support(i: int, r: int, n: int):
    """Nodos (nivel, path) del soporte de paridades de α_i en T_n"""
    _check_index(i, r)
    m = 0
    while i - 1 + m * r < n:
        level = i - 1 + m * r
        path = sum(1 << (i - 1 + j * r) for j in range(m))
        yield level, path
        m += 1


def alpha_generator(i: int, r: int, n: int) -> TreeAutomorphism:
    check_depth(n)
    bits = 0
    for level, path in alpha_support(i, r, n):
        bits |= 1 << ((1 << level) - 1 + path)
    return TreeAutomorphism(n, bits)


@lru_cache(maxsize=None)
def alpha_generator_recursive(i: int, r: int, n: int) -> TreeAutomorphism:
    """
    Construcción recursiva: α_1 = (α_r, 1)τ y α_i = (α_{i-1}, 1) para i ≥ 2
    """
    _check_index(i, r)
    check_depth(n)
    if n == 1:
        return root_transposition(1) if i == 1 else identity(1)
    if i == 1:
        return wreath(alpha_generator_recursive(r, r, n - 1), identity(n - 1), 1)
    return wreath(alpha_generator_recursive(i - 1, r, n - 1), identity(n - 1), 0)


@dataclass(frozen=True)
class GeneratorSet:
    r: int
    depth: int
    elements: Tuple[TreeAutomorphism, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def all_in_b_prime(self) -> bool:
        return all(in_b_prime(alpha, self.r) for alpha in self.elements)


def pink_generators(r: int, n: int) -> GeneratorSet:
    elements = tuple(alpha_generator(i, r, n) for i in range(1, r + 1))
    return GeneratorSet(r=r, depth=n, elements=elements)
