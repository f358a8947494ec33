"""
Funcionales truncados Q_r, P_r y predicados de pertenencia B' y M'

Q_r(σ, x) solo conserva los términos cuyos nodos x·w caen en los niveles
0..n-1; P_r(σ, x) vive módulo 2^{e(m,n)} con m = nivel de x.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Tuple

from apps.core.exceptions import ContractError, DomainError
from apps.tree_core.automorphism import NodeAddress, TreeAutomorphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedResidue:
    """Clase impar módulo 2^exponent"""
    value: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise DomainError(f"Exponente inválido: {self.exponent}")
        if not 0 <= self.value < (1 << self.exponent) or self.value % 2 == 0:
            raise DomainError(f"Residuo inválido {self.value} mod 2^{self.exponent}")

    @property
    def modulus(self) -> int:
        return 1 << self.exponent

    @classmethod
    def reduce(cls, value: int, exponent: int) -> 'TruncatedResidue':
        return cls(value % (1 << exponent), exponent)

    def truncate(self, exponent: int) -> 'TruncatedResidue':
        if exponent > self.exponent:
            raise DomainError(f"No se puede refinar de 2^{self.exponent} a 2^{exponent}")
        return TruncatedResidue.reduce(self.value, exponent)

    def as_dict(self) -> dict:
        return {'value': self.value, 'exp': self.exponent}

    def __str__(self):
        return f"{self.value} mod 2^{self.exponent}"


def residue_multiply(left: TruncatedResidue, right: TruncatedResidue) -> TruncatedResidue:
    """Producto en (ℤ/2^e)^× con e el menor de los dos exponentes"""
    exponent = min(left.exponent, right.exponent)
    return TruncatedResidue.reduce(left.value * right.value, exponent)


def e_bound(m: int, n: int, r: int) -> int:
    """e(m, n) = ⌊(n-1-m)/r⌋ + 1"""
    if r < 1:
        raise DomainError(f"r debe ser ≥ 1 (recibido {r})")
    if not 0 <= m < n:
        raise DomainError(f"Se requiere 0 ≤ m < n (m={m}, n={n})")
    return (n - 1 - m) // r + 1


def words_w(r: int, i: int) -> Iterator[int]:
    """
    Paths de W(r, i): palabras de longitud ri-1 con 'a' en cada posición múltiplo de r

    Hay 2^{(r-1)i} de ellas.
    """
    if r < 1 or i < 1:
        raise DomainError(f"W(r, i) requiere r, i ≥ 1 (r={r}, i={i})")
    length = r * i - 1
    free = [j - 1 for j in range(1, length + 1) if j % r]
    for choice in range(1 << len(free)):
        path = 0
        for slot, position in enumerate(free):
            path |= ((choice >> slot) & 1) << position
        yield path


@lru_cache(maxsize=None)
def _q_masks(level: int, path: int, r: int, n: int) -> Tuple[Tuple[int, int], ...]:
    """(2^i, máscara de ids planos de x·w con w ∈ W(r,i)) para cada i representable"""
    out = []
    i = 1
    while level + r * i - 1 <= n - 1:
        target_level = level + r * i - 1
        offset = (1 << target_level) - 1
        mask = 0
        for w in words_w(r, i):
            mask |= 1 << (offset + (path | (w << level)))
        out.append((1 << i, mask))
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _node_plan(n: int, r: int) -> Tuple[Tuple[int, int, Tuple, Tuple], ...]:
    """Por nodo, en orden plano: (id plano, 2^e, máscaras de Q en xb, máscaras de Q en xa)"""
    plan = []
    for level in range(n):
        modulus = 1 << e_bound(level, n, r)
        for path in range(1 << level):
            flat_id = (1 << level) - 1 + path
            masks_a = _q_masks(level + 1, path, r, n)
            masks_b = _q_masks(level + 1, path | (1 << level), r, n)
            plan.append((flat_id, modulus, masks_b, masks_a))
    return tuple(plan)


def _weighted(bits: int, masks) -> int:
    return sum(weight * (bits & mask).bit_count() for weight, mask in masks)


def residue_values(bits: int, n: int, r: int) -> List[Tuple[int, int]]:
    """(valor, 2^e) de P_r en cada nodo, en orden plano; trabaja sobre el entero de paridades"""
    out = []
    for flat_id, modulus, masks_b, masks_a in _node_plan(n, r):
        sign = -1 if (bits >> flat_id) & 1 else 1
        value = sign + _weighted(bits, masks_b) - _weighted(bits, masks_a)
        out.append((value % modulus, modulus))
    return out


def bits_in_b_prime(bits: int, n: int, r: int) -> bool:
    for flat_id, modulus, masks_b, masks_a in _node_plan(n, r):
        sign = -1 if (bits >> flat_id) & 1 else 1
        value = sign + _weighted(bits, masks_b) - _weighted(bits, masks_a)
        if value % modulus != 1:
            return False
    return True


def bits_root_residue(bits: int, n: int, r: int):
    """Valor de P_r en la raíz si σ ∈ M'_{r,n}, o None si no lo es"""
    plan = _node_plan(n, r)
    root_value = None
    for flat_id, modulus, masks_b, masks_a in plan:
        sign = -1 if (bits >> flat_id) & 1 else 1
        value = (sign + _weighted(bits, masks_b) - _weighted(bits, masks_a)) % modulus
        if root_value is None:
            root_value = value
        elif root_value % modulus != value:
            return None
    return root_value


def q_r_trunc(sigma: TreeAutomorphism, x: NodeAddress, r: int) -> int:
    """Σ_i 2^i Σ_{w∈W(r,i)} Par(σ, xw) sobre los i representables en T_n"""
    if x.level > sigma.depth:
        raise DomainError(f"El nodo {x} está fuera de T_{sigma.depth}")
    if r < 1:
        raise DomainError(f"r debe ser ≥ 1 (recibido {r})")
    return _weighted(sigma.bits, _q_masks(x.level, x.path, r, sigma.depth))


def p_r_trunc(sigma: TreeAutomorphism, x: NodeAddress, r: int) -> TruncatedResidue:
    """(-1)^{Par(σ,x)} + Q_r(σ,xb) - Q_r(σ,xa) mod 2^{e(nivel(x), n)}"""
    if x.level >= sigma.depth:
        raise DomainError(f"P_r requiere nivel < {sigma.depth} (nodo {x})")
    sign = -1 if sigma.parity(x) else 1
    value = sign + q_r_trunc(sigma, x.child(1), r) - q_r_trunc(sigma, x.child(0), r)
    return TruncatedResidue.reduce(value, e_bound(x.level, sigma.depth, r))


def in_b_prime(sigma: TreeAutomorphism, r: int) -> bool:
    """P_r(σ, x) ≡ 1 mod 2^{e(m,n)} en todo nodo"""
    return bits_in_b_prime(sigma.bits, sigma.depth, r)


def in_m_prime(sigma: TreeAutomorphism, r: int) -> bool:
    """
    Consistencia truncada: todos los residuos coinciden módulo 2^{min(e1, e2)}

    Basta comparar cada nodo con la raíz, que tiene el mayor exponente.
    """
    return bits_root_residue(sigma.bits, sigma.depth, r) is not None


def p_r_root(sigma: TreeAutomorphism, r: int) -> TruncatedResidue:
    value = bits_root_residue(sigma.bits, sigma.depth, r)
    if value is None:
        raise ContractError(f"P_r de la raíz requiere σ ∈ M'_{{{r},{sigma.depth}}}")
    return TruncatedResidue(value, e_bound(0, sigma.depth, r))


def p_r_root_mod(sigma: TreeAutomorphism, r: int, e: int) -> TruncatedResidue:
    """P_{r,e}(σ) para e ≤ e(0, n)"""
    full = p_r_root(sigma, r)
    if not 1 <= e <= full.exponent:
        raise DomainError(f"e fuera de rango: {e} (máximo {full.exponent})")
    return full.truncate(e)
