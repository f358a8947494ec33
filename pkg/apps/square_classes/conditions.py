"""
Clases de cuadrados sobre ℚ y las condiciones de independencia

Una clase en ℚ^×/(ℚ^×)² es un vector sobre F_2: el bit de signo y los
primos con exponente impar. Las condiciones se deciden con eliminación
gaussiana sobre máscaras de bits, que además devuelve las relaciones de
dependencia como certificado.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from django.conf import settings
from sympy import Poly, Rational, Symbol, factorint, isprime
from sympy.ntheory.primetest import is_square

from apps.core.exceptions import (
    ArithmeticIntegrityError,
    DomainError,
    ForwardOrbitError,
    UnfactoredError,
    UnsupportedError,
)

logger = logging.getLogger(__name__)

RationalLike = Union[int, str, Fraction]

MAX_PERIOD = 8
ORACLE_MAX_N = 10


def trial_division_limit() -> int:
    return int(getattr(settings, 'ARBOR_TRIAL_DIVISION_LIMIT', 10 ** 6))


def to_rational(value: RationalLike) -> Fraction:
    """Acepta enteros, Fraction o cadenas tipo '-5/9'"""
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DomainError(f"Racional inválido: {value!r} ({exc})")


@dataclass(frozen=True)
class SquareClass:
    """Clase de q módulo (ℚ^×)²; la clase de un cuadrado es el vector cero"""
    negative: bool = False
    primes: FrozenSet[int] = field(default_factory=frozenset)

    def __mul__(self, other: 'SquareClass') -> 'SquareClass':
        return SquareClass(self.negative ^ other.negative, self.primes ^ other.primes)

    def is_trivial(self) -> bool:
        return not self.negative and not self.primes

    def support(self) -> List[Union[int, str]]:
        return (['-1'] if self.negative else []) + sorted(self.primes)

    def __str__(self):
        if self.is_trivial():
            return '{}'
        return '{' + ', '.join(str(item) for item in self.support()) + '}'


def _odd_exponent_primes(n: int) -> FrozenSet[int]:
    """
    Primos con exponente impar en n > 0

    n se acepta solo si, quitando los primos ≤ ARBOR_TRIAL_DIVISION_LIMIT,
    queda 1 o un único primo. Lo que factorint encuentre por otros atajos
    por encima del límite cuenta como parte de ese cofactor.
    """
    if n == 1:
        return frozenset()
    limit = trial_division_limit()
    factors = factorint(n, limit=limit, use_rho=False, use_pm1=False)
    cofactor = 1
    for prime, exponent in factors.items():
        if prime > limit:
            cofactor *= prime ** exponent
    if cofactor != 1 and not isprime(cofactor):
        raise UnfactoredError(
            f"{n} no se factorizó con división hasta {limit} (cofactor {cofactor})"
        )
    return frozenset(prime for prime, exponent in factors.items() if exponent % 2)


def square_class(q: RationalLike) -> SquareClass:
    """
    Clase de cuadrados de q ≠ 0

    Examples:
        12 → {3}; -5/9 → {-1, 5}; 4 → {}
    """
    q = to_rational(q)
    if q == 0:
        raise DomainError("La clase de cuadrados de 0 no está definida")
    magnitude = abs(q)
    primes = _odd_exponent_primes(magnitude.numerator) ^ _odd_exponent_primes(magnitude.denominator)
    return SquareClass(q < 0, primes)


def is_rational_square(q: RationalLike) -> bool:
    """q ∈ (ℚ^×)², sin factorizar"""
    q = to_rational(q)
    return q > 0 and is_square(q.numerator) and is_square(q.denominator)


def rational_exact_period(c: RationalLike, limit: int = MAX_PERIOD) -> Optional[int]:
    """Período exacto de 0 bajo z² + c, o None si no vuelve en `limit` pasos"""
    c = to_rational(c)
    z = Fraction(0)
    for s in range(1, limit + 1):
        z = z * z + c
        if z == 0:
            return s
    return None


def disc_sequence(c: RationalLike, x0: RationalLike, count: int) -> List[Fraction]:
    """
    [D_1, ..., D_count] con D_1 = x0 - c y D_i = f^i(0) - x0 para i ≥ 2

    Raises:
        ForwardOrbitError: si algún D_i es 0
    """
    c, x0 = to_rational(c), to_rational(x0)
    if count < 0:
        raise DomainError(f"count debe ser ≥ 0 (recibido {count})")
    values = []
    z = Fraction(0)
    for i in range(1, count + 1):
        z = z * z + c
        value = x0 - c if i == 1 else z - x0
        if value == 0:
            raise ForwardOrbitError(f"x0={x0} está en la órbita de 0 (D_{i} = 0)")
        values.append(value)
    return values


def _class_masks(classes: Sequence[SquareClass]) -> List[int]:
    """Cada clase como máscara: bit 0 = signo, bit j+1 = j-ésimo primo del soporte común"""
    basis = sorted(reduce(lambda acc, cls: acc | cls.primes, classes, frozenset()))
    position = {prime: j + 1 for j, prime in enumerate(basis)}
    masks = []
    for cls in classes:
        mask = int(cls.negative)
        for prime in cls.primes:
            mask |= 1 << position[prime]
        masks.append(mask)
    return masks


def gf2_rank(rows: Sequence[int]) -> Tuple[int, List[int]]:
    """
    Rango sobre F_2 de filas dadas como máscaras, y las dependencias

    Cada dependencia es una máscara sobre los índices de fila cuya suma es
    cero; salen de las filas que se anulan durante la eliminación.
    """
    reduced = list(rows)
    combos = [1 << i for i in range(len(rows))]
    used = set()
    width = max(reduced, default=0).bit_length()
    for col in range(width):
        bit = 1 << col
        pivot = next((i for i in range(len(reduced)) if i not in used and reduced[i] & bit), None)
        if pivot is None:
            continue
        used.add(pivot)
        for i in range(len(reduced)):
            if i != pivot and reduced[i] & bit:
                reduced[i] ^= reduced[pivot]
                combos[i] ^= combos[pivot]
    dependencies = [combos[i] for i in range(len(reduced)) if reduced[i] == 0]
    return len(used), dependencies


def _indices(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


@dataclass(frozen=True)
class Verdict:
    """Resultado de una condición: condition, rank y las dependencias como índices"""
    condition: bool
    rank: int
    dependencies: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    values: Tuple[Fraction, ...]
    oracle_agrees: Optional[bool] = None


def _verdict(labels: Sequence[str], values: Sequence[Fraction]) -> Verdict:
    masks = _class_masks([square_class(value) for value in values])
    rank, dependencies = gf2_rank(masks)
    return Verdict(
        condition=rank == len(values),
        rank=rank,
        dependencies=tuple(tuple(_indices(mask)) for mask in dependencies),
        labels=tuple(labels),
        values=tuple(values),
    )


def check_condition_one(c: RationalLike, x0: RationalLike, r: int) -> Verdict:
    """
    [ℚ(ζ_8, √D_1, ..., √D_r) : ℚ] = 2^{r+2}

    Como ℚ(ζ_8) = ℚ(√-1, √2), equivale a que las clases de -1, 2, D_1..D_r
    sean independientes (rango r + 2).

    Raises:
        UnsupportedError: r ≥ 3 (ningún c racional tiene ese período)
        DomainError: c no tiene período exacto r
    """
    if r >= 3:
        raise UnsupportedError(f"r={r}: solo se soporta k = ℚ, donde el período es 1 o 2")
    if r < 1:
        raise DomainError(f"r debe ser ≥ 1 (recibido {r})")
    if rational_exact_period(c) != r:
        raise DomainError(f"c={to_rational(c)} no tiene período exacto {r}")
    values = [Fraction(-1), Fraction(2)] + disc_sequence(c, x0, r)
    labels = ['-1', '2'] + [f'D{i}' for i in range(1, r + 1)]
    verdict = _verdict(labels, values)
    if not verdict.condition:
        logger.info(f"Condición (1) falla para c={c}, x0={x0}: dependencias {verdict.dependencies}")
    return verdict


def subset_product_oracle(values: Sequence[Fraction]) -> bool:
    """
    True si ningún D_i·∏_{j∈S} D_j (S ⊆ {1..i-1}) es un cuadrado racional

    Exhaustivo en subconjuntos; no usa factorización.
    """
    for i, value in enumerate(values):
        earlier = values[:i]
        for size in range(len(earlier) + 1):
            for subset in combinations(earlier, size):
                if is_rational_square(reduce(lambda acc, d: acc * d, subset, value)):
                    return False
    return True


def check_aut_tn(c: RationalLike, x0: RationalLike, n: int) -> Verdict:
    """
    G_n ≅ Aut(T_n) sii D_1, ..., D_n son independientes en ℚ^×/(ℚ^×)²

    Para n ≤ 10 se compara además contra el oráculo de productos de subconjuntos.
    """
    if n < 1:
        raise DomainError(f"n debe ser ≥ 1 (recibido {n})")
    values = disc_sequence(c, x0, n)
    labels = [f'D{i}' for i in range(1, n + 1)]
    verdict = _verdict(labels, values)
    if n > ORACLE_MAX_N:
        return verdict
    agrees = subset_product_oracle(values) == verdict.condition
    if not agrees:
        logger.error(f"❌ Rango y oráculo discrepan para c={c}, x0={x0}, n={n}")
    return replace(verdict, oracle_agrees=agrees)


def iterate_polynomial(c: RationalLike, x0: RationalLike, i: int) -> Poly:
    """f^i(z) - x0 en ℚ[z]"""
    z = Symbol('z')
    c_value = Rational(to_rational(c).numerator, to_rational(c).denominator)
    x0_value = Rational(to_rational(x0).numerator, to_rational(x0).denominator)
    poly = Poly(z, z, domain='QQ')
    for _ in range(i):
        poly = poly * poly + c_value
    return poly - x0_value


def discriminant_class_matches(c: RationalLike, x0: RationalLike, i: int) -> bool:
    """
    La clase del discriminante Δ_i de f^i(z) - x0 coincide con la de D_i

    Δ_i sale del resultante de sympy; se compara Δ_i / D_i con un cuadrado.
    """
    if not 1 <= i <= 8:
        raise DomainError(f"i fuera de rango para el oráculo de discriminantes: {i}")
    target = disc_sequence(c, x0, i)[-1]
    delta = iterate_polynomial(c, x0, i).discriminant()
    delta = Fraction(int(delta.p), int(delta.q))
    if delta == 0:
        raise ArithmeticIntegrityError(f"Discriminante nulo con D_{i} = {target} ≠ 0")
    return is_rational_square(delta / target)

