"""
Automorfismos del árbol binario con raíz T_n

Un automorfismo se guarda como un bit de paridad por nodo de los niveles
0..n-1. El nodo (nivel m, path) tiene id plano (2^m - 1) + path, y el
símbolo j-ésimo de la palabra vive en el bit j-1 de path (a=0, b=1).
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import List, Tuple

from django.conf import settings

from apps.core.exceptions import DomainError

logger = logging.getLogger(__name__)

SYMBOLS = 'ab'


def max_depth() -> int:
    return int(getattr(settings, 'ARBOR_MAX_DEPTH', 24))


def check_depth(n: int) -> int:
    if not isinstance(n, int) or n < 1 or n > max_depth():
        raise DomainError(f"Profundidad inválida: {n} (rango 1..{max_depth()})")
    return n


def node_count(n: int) -> int:
    """Nodos con paridad en T_n (niveles 0..n-1)"""
    return (1 << n) - 1


# Tablas por elemento solo se memorizan hasta esta profundidad
CACHE_MAX_DEPTH = 10

ZERO, ONE = ord('0'), ord('1')


def unpack_parities(bits: int, n: int) -> bytes:
    """Paridades en orden plano como b'0'/b'1'; unpack_parities(b, n)[id] == ONE si Par = 1"""
    count = node_count(n)
    return format(bits, f'0{count}b')[::-1].encode('ascii')


def pack_parities(flags) -> int:
    """Inverso de unpack_parities; una sola conversión en base 2"""
    if not flags:
        return 0
    return int(bytes(flags[::-1]), 2)


@dataclass(frozen=True, order=True)
class NodeAddress:
    """Palabra sobre {a,b}: nivel y path con el primer símbolo en el bit menos significativo"""
    level: int
    path: int = 0

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.path < (1 << self.level):
            raise DomainError(f"Dirección inválida: nivel={self.level}, path={self.path}")

    @classmethod
    def root(cls) -> 'NodeAddress':
        return cls(0, 0)

    @classmethod
    def from_word(cls, word: str) -> 'NodeAddress':
        path = 0
        for j, symbol in enumerate(word):
            if symbol not in SYMBOLS:
                raise DomainError(f"Símbolo inválido '{symbol}' en la palabra '{word}'")
            path |= SYMBOLS.index(symbol) << j
        return cls(len(word), path)

    @classmethod
    def from_flat_id(cls, flat_id: int) -> 'NodeAddress':
        level = (flat_id + 1).bit_length() - 1
        return cls(level, flat_id - ((1 << level) - 1))

    @property
    def word(self) -> str:
        return ''.join(SYMBOLS[(self.path >> j) & 1] for j in range(self.level))

    @property
    def flat_id(self) -> int:
        return (1 << self.level) - 1 + self.path

    def child(self, symbol: int) -> 'NodeAddress':
        return NodeAddress(self.level + 1, self.path | (symbol << self.level))

    def parent(self) -> 'NodeAddress':
        if self.level == 0:
            raise DomainError("La raíz no tiene padre")
        return NodeAddress(self.level - 1, self.path & ((1 << (self.level - 1)) - 1))

    def extend(self, suffix: 'NodeAddress') -> 'NodeAddress':
        """Concatenación de palabras self·suffix"""
        return NodeAddress(self.level + suffix.level, self.path | (suffix.path << self.level))

    def __str__(self):
        return self.word or '∅'


@dataclass(frozen=True)
class TreeAutomorphism:
    """Elemento de Aut(T_n); cualquier asignación de bits es válida"""
    depth: int
    bits: int = 0

    def __post_init__(self):
        if self.depth < 1:
            raise DomainError(f"Profundidad inválida: {self.depth}")
        if not 0 <= self.bits < (1 << node_count(self.depth)):
            raise DomainError("Vector de paridades fuera de rango para la profundidad")

    def parity(self, x: NodeAddress) -> int:
        if x.level >= self.depth:
            raise DomainError(f"El nodo {x} no tiene paridad en T_{self.depth}")
        return (self.bits >> x.flat_id) & 1

    def is_identity(self) -> bool:
        return self.bits == 0

    def to_hex(self) -> str:
        """Byte de profundidad seguido del vector de paridades little-endian"""
        size = (node_count(self.depth) + 7) // 8
        return (bytes([self.depth]) + self.bits.to_bytes(size, 'little')).hex()

    @classmethod
    def from_hex(cls, payload: str) -> 'TreeAutomorphism':
        raw = bytes.fromhex(payload)
        if not raw:
            raise DomainError("Serialización vacía")
        depth = check_depth(raw[0])
        return cls(depth, int.from_bytes(raw[1:], 'little'))

    def __mul__(self, other: 'TreeAutomorphism') -> 'TreeAutomorphism':
        return compose(self, other)

    def __invert__(self) -> 'TreeAutomorphism':
        return invert(self)

    def __str__(self):
        return f"σ[n={self.depth}]({self.to_hex()})"


def identity(n: int) -> TreeAutomorphism:
    return TreeAutomorphism(check_depth(n), 0)


def root_transposition(n: int) -> TreeAutomorphism:
    """La permutación τ que intercambia los dos subárboles de la raíz"""
    return TreeAutomorphism(check_depth(n), 1)


def random_automorphism(n: int, seed: int) -> TreeAutomorphism:
    """Uniforme sobre Aut(T_n); misma semilla, mismos bits"""
    check_depth(n)
    return TreeAutomorphism(n, random.Random(seed).getrandbits(node_count(n)))


def apply(sigma: TreeAutomorphism, w: NodeAddress) -> NodeAddress:
    """t_{j+1} = s_{j+1} XOR Par(σ, s_1…s_j)"""
    if w.level > sigma.depth:
        raise DomainError(f"El nivel {w.level} excede la profundidad {sigma.depth}")
    flips = 0
    for j in range(w.level):
        prefix = w.path & ((1 << j) - 1)
        flips |= ((sigma.bits >> ((1 << j) - 1 + prefix)) & 1) << j
    return NodeAddress(w.level, w.path ^ flips)


def _level_images(sigma: TreeAutomorphism) -> Tuple[Tuple[int, ...], ...]:
    flags = unpack_parities(sigma.bits, sigma.depth)
    tables: List[Tuple[int, ...]] = [(0,)]
    for m in range(sigma.depth):
        previous = tables[-1]
        offset = (1 << m) - 1
        current = [0] * (1 << (m + 1))
        high = 1 << m
        for path, image in enumerate(previous):
            flip = flags[offset + path] == ONE
            current[path] = image | (flip << m)
            current[path | high] = image | ((not flip) << m)
        tables.append(tuple(current))
    return tuple(tables)


_cached_level_images = lru_cache(maxsize=512)(_level_images)


def level_images(sigma: TreeAutomorphism) -> Tuple[Tuple[int, ...], ...]:
    """
    Imágenes por nivel: level_images(σ)[m][path] = path de σ(nodo)

    Incluye el nivel n (las hojas). Lineal en el número de nodos; solo se
    memoriza para profundidades ≤ CACHE_MAX_DEPTH.
    """
    if sigma.depth <= CACHE_MAX_DEPTH:
        return _cached_level_images(sigma)
    return _level_images(sigma)


def level_permutation(sigma: TreeAutomorphism, m: int) -> Tuple[int, ...]:
    """σ como permutación de los 2^m paths del nivel m"""
    if not 0 <= m <= sigma.depth:
        raise DomainError(f"Nivel fuera de rango: {m}")
    return level_images(sigma)[m]


def _node_map(sigma: TreeAutomorphism) -> Tuple[int, ...]:
    out = []
    for m, table in enumerate(level_images(sigma)[:-1]):
        offset = (1 << m) - 1
        out.extend(offset + image for image in table)
    return tuple(out)


_cached_node_map = lru_cache(maxsize=512)(_node_map)


def node_map(sigma: TreeAutomorphism) -> Tuple[int, ...]:
    """σ sobre ids planos de los niveles 0..n-1"""
    if sigma.depth <= CACHE_MAX_DEPTH:
        return _cached_node_map(sigma)
    return _node_map(sigma)


def _check_same_depth(sigma: TreeAutomorphism, tau: TreeAutomorphism):
    if sigma.depth != tau.depth:
        raise DomainError(f"Profundidades distintas: {sigma.depth} vs {tau.depth}")


def compose(sigma: TreeAutomorphism, tau: TreeAutomorphism) -> TreeAutomorphism:
    """στ (primero τ): Par(στ, x) = Par(σ, τ(x)) XOR Par(τ, x)"""
    _check_same_depth(sigma, tau)
    if tau.bits == 0:
        return sigma
    if sigma.bits == 0:
        return tau
    source = unpack_parities(sigma.bits, sigma.depth)
    moved = bytearray(source[image] for image in node_map(tau))
    return TreeAutomorphism(sigma.depth, pack_parities(moved) ^ tau.bits)


def invert(sigma: TreeAutomorphism) -> TreeAutomorphism:
    """Par(σ⁻¹, x) = Par(σ, σ⁻¹(x))"""
    if sigma.bits == 0:
        return sigma
    flags = unpack_parities(sigma.bits, sigma.depth)
    out = bytearray([ZERO]) * len(flags)
    for m, table in enumerate(level_images(sigma)[:-1]):
        offset = (1 << m) - 1
        for path, image in enumerate(table):
            # σ⁻¹(image) = path
            out[offset + image] = flags[offset + path]
    return TreeAutomorphism(sigma.depth, pack_parities(out))


def restrict(sigma: TreeAutomorphism, m: int) -> TreeAutomorphism:
    """res_{n,m}: conserva las paridades de los niveles 0..m-1"""
    if not 1 <= m <= sigma.depth:
        raise DomainError(f"No se puede restringir T_{sigma.depth} a profundidad {m}")
    return TreeAutomorphism(m, sigma.bits & ((1 << node_count(m)) - 1))


def sgn(sigma: TreeAutomorphism, x: NodeAddress) -> int:
    return -1 if sigma.parity(x) else 1


def power(sigma: TreeAutomorphism, k: int) -> TreeAutomorphism:
    if k < 0:
        return power(invert(sigma), -k)
    result = identity(sigma.depth)
    base = sigma
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(sigma: TreeAutomorphism) -> int:
    """Orden como mcm de los ciclos sobre las hojas (acción fiel)"""
    leaves = level_images(sigma)[-1]
    seen = bytearray(len(leaves))
    result = 1
    for start in range(len(leaves)):
        if seen[start]:
            continue
        length = 0
        node = start
        while not seen[node]:
            seen[node] = 1
            node = leaves[node]
            length += 1
        result = lcm(result, length)
    return result


def wreath(sigma_a: TreeAutomorphism, sigma_b: TreeAutomorphism, swap: int) -> TreeAutomorphism:
    """
    Construye (σ_a, σ_b)·τ^swap en T_{d+1}

    Con swap=1 el subárbol a recibe las paridades de σ_b y viceversa,
    porque τ actúa primero.
    """
    _check_same_depth(sigma_a, sigma_b)
    d = sigma_a.depth
    on_a, on_b = (sigma_b, sigma_a) if swap else (sigma_a, sigma_b)
    flags_a = unpack_parities(on_a.bits, d)
    flags_b = unpack_parities(on_b.bits, d)
    out = bytearray([ZERO]) * node_count(d + 1)
    out[0] = ONE if swap & 1 else ZERO
    for level in range(d):
        offset = (1 << level) - 1
        target = (1 << (level + 1)) - 1
        for path in range(1 << level):
            out[target + (path << 1)] = flags_a[offset + path]
            out[target + ((path << 1) | 1)] = flags_b[offset + path]
    return TreeAutomorphism(d + 1, pack_parities(out))
