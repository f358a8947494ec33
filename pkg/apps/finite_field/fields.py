"""
Aritmética en F_p y F_{p^k}

Un elemento es un polinomio de grado < k sobre F_p (coeficientes con el
término constante primero) módulo un polinomio mónico irreducible. La
multiplicación empaqueta los coeficientes en un entero (sustitución de
Kronecker) y reduce con las potencias X^{k+j} mod m precalculadas.
"""
import logging
import random
from typing import Iterable, List, Optional, Sequence, Tuple

from django.conf import settings
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_degree, gf_gcd, gf_strip

from apps.core.exceptions import ArithmeticIntegrityError, DomainError, UnavailableError

logger = logging.getLogger(__name__)


def prime_cap() -> int:
    return int(getattr(settings, 'ARBOR_PRIME_CAP', 2 ** 40))


def degree_cap() -> int:
    return int(getattr(settings, 'ARBOR_FIELD_DEGREE_CAP', 1024))


def is_prime(p: int) -> bool:
    """Primalidad determinista de sympy (Miller–Rabin con bases fijas bajo 2^64)"""
    return isinstance(p, int) and p > 1 and bool(isprime(p))


def check_odd_prime(p: int) -> int:
    if not is_prime(p):
        raise DomainError(f"p={p} no es primo")
    if p == 2:
        raise DomainError("Característica 2 no soportada")
    if p > prime_cap():
        raise DomainError(f"p={p} excede el límite {prime_cap()}")
    return p


class FqContext:
    """
    Contexto F_q con q = p^k

    Inmutable después de construirse; los elementos guardan una referencia.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int], seed: int = 0, tries: int = 1):
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise DomainError("El módulo debe ser mónico de grado k")
        self.p = p
        self.k = k
        self.modulus = tuple(c % p for c in modulus)
        self.seed = seed
        self.tries = tries
        self.q = p ** k
        self.two_adic_valuation, self.odd_part = _split_two_power(self.q - 1)

        bound = 2 * k * (p - 1) ** 2 + 1
        self._slot = ((bound.bit_length() + 1) + 7) // 8
        self._reduction = self._reduction_table()
        self._non_residue = None

    def __repr__(self):
        return f"FqContext(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FqContext)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # ---- empaquetado -------------------------------------------------

    def _pack(self, coeffs: Sequence[int]) -> int:
        size = self._slot
        return int.from_bytes(b''.join(c.to_bytes(size, 'little') for c in coeffs), 'little')

    def _unpack(self, value: int, count: int) -> List[int]:
        size = self._slot
        raw = value.to_bytes(count * size, 'little')
        return [int.from_bytes(raw[i * size:(i + 1) * size], 'little') for i in range(count)]

    def _reduction_table(self) -> List[int]:
        """Enteros empaquetados de X^{k+j} mod m, j = 0..k-2"""
        p, k = self.p, self.k
        base = [(-c) % p for c in self.modulus[:k]]
        current = base
        table = []
        for _ in range(max(0, k - 1)):
            table.append(self._pack(current))
            top = current[-1]
            shifted = [0] + current[:-1]
            current = [(shifted[i] + top * base[i]) % p for i in range(k)]
        return table

    # ---- aritmética sobre tuplas ------------------------------------

    def mul_coeffs(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        raw = self._unpack(self._pack(a) * self._pack(b), 2 * k - 1)
        acc = self._pack(raw[:k])
        for high, reduced in zip(raw[k:], self._reduction):
            high %= p
            if high:
                acc += high * reduced
        return tuple(c % p for c in self._unpack(acc, k))

    def pow_coeffs(self, a: Sequence[int], exponent: int) -> Tuple[int, ...]:
        if exponent < 0:
            raise DomainError("Exponente negativo; usar fq_inverse")
        if self.k == 1:
            return (pow(a[0], exponent, self.p),)
        result = self.one.coeffs
        base = tuple(a)
        while exponent:
            if exponent & 1:
                result = self.mul_coeffs(result, base)
            exponent >>= 1
            if exponent:
                base = self.mul_coeffs(base, base)
        return result

    # ---- constructores de elementos ---------------------------------

    def element(self, coeffs: Iterable[int]) -> 'FqElement':
        values = [c % self.p for c in coeffs]
        if len(values) > self.k:
            raise DomainError(f"Demasiados coeficientes para F_{{{self.p}^{self.k}}}")
        values.extend([0] * (self.k - len(values)))
        return FqElement(self, tuple(values))

    def from_int(self, value: int) -> 'FqElement':
        return self.element([value])

    @property
    def zero(self) -> 'FqElement':
        return FqElement(self, (0,) * self.k)

    @property
    def one(self) -> 'FqElement':
        return self.from_int(1)

    @property
    def generator(self) -> 'FqElement':
        """La clase de X (o 0 si k = 1)"""
        return self.element([0, 1]) if self.k > 1 else self.zero

    def random_element(self, rng: random.Random) -> 'FqElement':
        return FqElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def non_residue(self) -> 'FqElement':
        """No-residuo cuadrático fijo, elegido con la semilla del contexto"""
        if self._non_residue is None:
            rng = random.Random(f"non-residue:{self.seed}:{self.p}:{self.k}")
            half = (self.q - 1) // 2
            minus_one = -self.one
            while True:
                candidate = self.random_element(rng)
                if not candidate.is_zero() and candidate ** half == minus_one:
                    self._non_residue = candidate
                    break
        return self._non_residue


class FqElement:
    __slots__ = ('ctx', 'coeffs')

    def __init__(self, ctx: FqContext, coeffs: Tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other) -> Optional['FqElement']:
        if isinstance(other, FqElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise DomainError("Elementos de campos distintos")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ctx.p
        return FqElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ctx.p
        return FqElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        p = self.ctx.p
        return FqElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx.mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return fq_inverse(self) ** (-exponent)
        return FqElement(self.ctx, self.ctx.pow_coeffs(self.coeffs, exponent))

    def __eq__(self, other):
        # sin igualdad con int: from_int reduce mod p y rompería el contrato de __hash__
        if not isinstance(other, FqElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (other.ctx is self.ctx or other.ctx == self.ctx)

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_base_field(self) -> bool:
        return not any(self.coeffs[1:])

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __str__(self):
        return ','.join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"FqElement({self})"


def _split_two_power(value: int) -> Tuple[int, int]:
    s = (value & -value).bit_length() - 1
    return s, value >> s


def is_irreducible(ctx: FqContext) -> bool:
    """
    Criterio de grado distinto: mcd(X^{p^d} - X, m) = 1 para d ≤ k/2

    Se corta en el primer factor encontrado.
    """
    k, p = ctx.k, ctx.p
    if k == 1:
        return True
    modulus = gf_strip([ZZ(c) for c in reversed(ctx.modulus)])
    x = ctx.generator
    h = x
    for _ in range(k // 2):
        h = h ** p
        diff = gf_strip([ZZ(c) for c in reversed((h - x).coeffs)])
        if not diff:
            return False
        if gf_degree(gf_gcd(diff, modulus, p, ZZ)) > 0:
            return False
    return True


def fq_make(p: int, k: int, seed: int = 0) -> FqContext:
    """
    Construye F_{p^k} con un módulo mónico irreducible aleatorio

    Determinista para (p, k, seed). Con k = 1 el módulo es X.
    """
    check_odd_prime(p)
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"Grado de extensión inválido: {k}")
    if k > degree_cap():
        raise DomainError(f"k={k} excede el límite {degree_cap()}")
    if k == 1:
        return FqContext(p, 1, (0, 1), seed=seed, tries=1)

    rng = random.Random(f"modulus:{seed}:{p}:{k}")
    tries = 0
    while True:
        tries += 1
        coeffs = [rng.randrange(p) for _ in range(k)] + [1]
        if coeffs[0] == 0:
            continue
        ctx = FqContext(p, k, coeffs, seed=seed, tries=tries)
        if is_irreducible(ctx):
            logger.info(f"F_{{{p}^{k}}} construido tras {tries} intentos")
            return ctx


def fq_pow(a: FqElement, exponent: int) -> FqElement:
    return a ** exponent


def fq_inverse(a: FqElement) -> FqElement:
    if a.is_zero():
        raise DomainError("El cero no tiene inverso")
    return FqElement(a.ctx, a.ctx.pow_coeffs(a.coeffs, a.ctx.q - 2))


def frobenius(a: FqElement) -> FqElement:
    """a ↦ a^p"""
    return a ** a.ctx.p


def is_square(a: FqElement) -> bool:
    """Criterio de Euler"""
    return a.is_zero() or a ** ((a.ctx.q - 1) // 2) == a.ctx.one


def canonical_root(y: FqElement) -> FqElement:
    """De ±y, la de vector de coeficientes lexicográficamente menor"""
    other = -y
    return y if y.coeffs <= other.coeffs else other


def sqrt_fq(ctx: FqContext, a: FqElement) -> Optional[FqElement]:
    """
    Raíz cuadrada canónica por Tonelli–Shanks, o None si a no es cuadrado
    """
    if a.is_zero():
        return ctx.zero
    s, t = ctx.two_adic_valuation, ctx.odd_part
    c = ctx.non_residue() ** t
    x = a ** ((t + 1) // 2)
    b = a ** t
    m = s
    one = ctx.one
    while b != one:
        i = 0
        square = b
        while square != one:
            square = square * square
            i += 1
            if i == m:
                return None
        w = c
        for _ in range(m - i - 1):
            w = w * w
        x = x * w
        c = w * w
        b = b * c
        m = i
    if x * x != a:
        raise ArithmeticIntegrityError(f"Tonelli–Shanks falló para {a}")
    return canonical_root(x)


def element_order_two_power(a: FqElement) -> Optional[int]:
    """Orden de a si es potencia de 2, None en otro caso"""
    one = a.ctx.one
    value = a
    order = 1
    for _ in range(a.ctx.two_adic_valuation + 1):
        if value == one:
            return order
        value = value * value
        order <<= 1
    return None


def root_of_unity_tower(ctx: FqContext, E: int) -> List[FqElement]:
    """
    [ζ_2, ζ_4, ..., ζ_{2^E}] con ζ_2 = -1 y ζ_{2^j}² = ζ_{2^{j-1}}

    Raises:
        UnavailableError: si 2^E no divide q - 1
    """
    if E < 1:
        raise DomainError(f"E debe ser ≥ 1 (recibido {E})")
    s = ctx.two_adic_valuation
    if E > s:
        raise UnavailableError(f"2^{E} no divide q-1 en F_{{{ctx.p}^{ctx.k}}} (v₂ = {s})")
    top = ctx.non_residue() ** ctx.odd_part
    for _ in range(s - E):
        top = top * top
    tower = [top]
    for _ in range(E - 1):
        tower.append(tower[-1] * tower[-1])
    tower.reverse()
    if tower[0] != -ctx.one:
        raise ArithmeticIntegrityError("ζ_2 ≠ -1 en la torre construida")
    return tower
