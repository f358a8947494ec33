"""
Árbol de preimágenes de x0 bajo f(z) = z² + c sobre F_{p^k}

El árbol se construye nivel por nivel con raíces cuadradas; si alguna no
existe en F_{p^k} se reinicia desde cero con el grado duplicado.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from django.conf import settings

from apps.core.exceptions import (
    ArithmeticIntegrityError,
    CappedError,
    DomainError,
    ForwardOrbitError,
    UnavailableError,
)
from apps.finite_field.fields import (
    FqContext,
    FqElement,
    check_odd_prime,
    degree_cap,
    fq_make,
    root_of_unity_tower,
    sqrt_fq,
)
from apps.parity_functionals.functionals import e_bound
from apps.tree_core.automorphism import NodeAddress, check_depth

logger = logging.getLogger(__name__)

MAX_PERIOD = 8


def scan_cap() -> int:
    return int(getattr(settings, 'ARBOR_SCAN_CAP', 2 ** 24))


def default_seed() -> int:
    return int(getattr(settings, 'ARBOR_SEED', 20240601))


def forward_orbit(p: int, c: int, r: int) -> List[int]:
    """[0, f(0), ..., f^{r-1}(0)] en F_p"""
    orbit = [0]
    z = 0
    for _ in range(r - 1):
        z = (z * z + c) % p
        orbit.append(z)
    return orbit


def exact_period(p: int, c: int, limit: int = MAX_PERIOD) -> Optional[int]:
    z = 0
    for s in range(1, limit + 1):
        z = (z * z + c) % p
        if z == 0:
            return s
    return None


@dataclass(frozen=True)
class PcfParameter:
    """c ∈ F_p con 0 periódico de período exacto r"""
    p: int
    c: int
    r: int

    def __post_init__(self):
        if exact_period(self.p, self.c % self.p, self.r) != self.r:
            raise DomainError(f"c={self.c} no tiene período exacto {self.r} en F_{self.p}")

    @property
    def orbit(self) -> List[int]:
        return forward_orbit(self.p, self.c, self.r)


def find_pcf_c(p: int, r: int) -> List[int]:
    """Todos los c ∈ F_p con f_c^r(0) = 0 y f_c^s(0) ≠ 0 para 0 < s < r"""
    check_odd_prime(p)
    if not 1 <= r <= MAX_PERIOD:
        raise DomainError(f"r debe estar en 1..{MAX_PERIOD} (recibido {r})")
    if p > scan_cap():
        raise CappedError(f"p={p} excede el límite de barrido {scan_cap()}", partial_count=0, cap=scan_cap())
    return [c for c in range(p) if exact_period(p, c, r) == r]


def pick_x0(p: int, c: int, r: int) -> int:
    """El menor x0 ∈ F_p fuera de la órbita de 0"""
    orbit = set(forward_orbit(p, c, r))
    for x in range(p):
        if x not in orbit:
            return x
    raise DomainError(f"Todo F_{p} está en la órbita de 0")


@dataclass(frozen=True)
class LabeledPreimageTree:
    """
    Árbol de preimágenes con etiquetas {a,b}

    levels[m][path] es el valor del nodo (m, path); tower = (ζ_2, ..., ζ_{2^E}).
    """
    parameter: PcfParameter
    x0: int
    depth: int
    ctx: FqContext
    levels: Tuple[Tuple[FqElement, ...], ...]
    tower: Tuple[FqElement, ...]
    labeled: bool = False
    swaps: int = field(default=0, compare=False)

    @property
    def r(self) -> int:
        return self.parameter.r

    @property
    def c(self) -> FqElement:
        return self.ctx.from_int(self.parameter.c)

    def value(self, node: NodeAddress) -> FqElement:
        return self.levels[node.level][node.path]

    def nodes(self, level: int) -> Iterator[NodeAddress]:
        return (NodeAddress(level, path) for path in range(1 << level))

    def iterate_f(self, m: int, z: FqElement) -> FqElement:
        c = self.c
        for _ in range(m):
            z = z * z + c
        return z


def _grow_levels(ctx: FqContext, x0: int, c: int, n: int) -> Optional[List[List[FqElement]]]:
    c_value = ctx.from_int(c)
    levels = [[ctx.from_int(x0)]]
    for m in range(n):
        current = levels[-1]
        children: List[Optional[FqElement]] = [None] * (2 * len(current))
        high = 1 << m
        for path, value in enumerate(current):
            root = sqrt_fq(ctx, value - c_value)
            if root is None:
                return None
            children[path] = root
            children[path | high] = -root
        levels.append(children)
    return levels


def build_preimage_tree(p: int, c: int, r: int, x0: int, n: int,
                        seed: Optional[int] = None) -> LabeledPreimageTree:
    """
    Construye el árbol de profundidad n sobre el menor F_{p^k} (k potencia de 2)

    La etiqueta a va a la raíz canónica y b a su negativa.

    Raises:
        ForwardOrbitError: si x0 está en la órbita de 0
        CappedError: si k tendría que exceder el límite de grado
    """
    check_depth(n)
    parameter = PcfParameter(p, c % p, r)
    x0 %= p
    if x0 in parameter.orbit:
        raise ForwardOrbitError(f"x0={x0} está en la órbita de 0 {parameter.orbit}")
    seed = default_seed() if seed is None else seed
    E = e_bound(0, n, r)

    start = time.time()
    k = 1
    while True:
        ctx = fq_make(p, k, seed)
        levels = _grow_levels(ctx, x0, parameter.c, n)
        if levels is not None:
            break
        if 2 * k > degree_cap():
            raise CappedError(
                f"El árbol requiere grado > {k} (límite {degree_cap()})",
                partial_count=k,
                cap=degree_cap(),
            )
        logger.warning(f"⚠️ Falta una raíz cuadrada en F_{{{p}^{k}}}; reiniciando con k={2 * k}")
        k *= 2

    try:
        tower = root_of_unity_tower(ctx, E)
    except UnavailableError as exc:
        raise ArithmeticIntegrityError(f"Torre ζ_{{2^{E}}} ausente en el campo de descomposición: {exc}")

    logger.info(f"✅ Árbol p={p} c={parameter.c} x0={x0} n={n} sobre F_{{{p}^{k}}} "
                f"en {time.time() - start:.2f}s")
    return LabeledPreimageTree(
        parameter=parameter,
        x0=x0,
        depth=n,
        ctx=ctx,
        levels=tuple(tuple(level) for level in levels),
        tower=tuple(tower),
    )
