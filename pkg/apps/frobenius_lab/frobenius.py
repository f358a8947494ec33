"""
Frobenius como automorfismo del árbol y verificación del carácter ciclotómico
"""
import logging
import random
import time
from typing import Dict, List, Optional, Sequence

from apps.core.exceptions import ArithmeticIntegrityError, DomainError
from apps.finite_field.fields import frobenius
from apps.parity_functionals.functionals import (
    TruncatedResidue,
    e_bound,
    in_m_prime,
    p_r_root,
    residue_values,
)
from apps.parity_functionals.serializers import TruncatedResidueSerializer
from apps.pink_subgroup.generators import pink_generators
from apps.tree_core.automorphism import (
    ONE,
    ZERO,
    NodeAddress,
    TreeAutomorphism,
    compose,
    identity,
    invert,
    node_count,
    order,
    pack_parities,
    power,
)
from apps.tree_core.serializers import TreeAutomorphismSerializer

from .labeling import (
    ERRATUM_NOTE,
    canonical_label,
    verify_gamma_chain,
    verify_perprod,
    verify_product_identity,
    verify_structure,
)
from .preimage_tree import (
    LabeledPreimageTree,
    build_preimage_tree,
    default_seed,
    find_pcf_c,
    forward_orbit,
    pick_x0,
)

logger = logging.getLogger(__name__)

SWEEP_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def frobenius_automorphism(tree: LabeledPreimageTree) -> TreeAutomorphism:
    """
    v ↦ v^p expresado en etiquetas

    Par(σ, x) = 0 si y solo si value(σ(x)·a) = value(x·a)^p.
    """
    n = tree.depth
    images = [0]
    flags = bytearray([ZERO]) * node_count(n)
    for m in range(n):
        row = tree.levels[m + 1]
        high = 1 << m
        next_images = [0] * (high << 1)
        for path, image in enumerate(images):
            target = frobenius(row[path])
            if target == row[image]:
                parity = 0
            elif target == row[image | high]:
                parity = 1
            else:
                raise ArithmeticIntegrityError(
                    f"La imagen de Frobenius de {NodeAddress(m + 1, path)} no es hija de σ(x)"
                )
            flags[high - 1 + path] = ONE if parity else ZERO
            next_images[path] = image | (parity << m)
            next_images[path | high] = image | ((parity ^ 1) << m)
        images = next_images
    return TreeAutomorphism(n, pack_parities(flags))


def pembed_report(tree: LabeledPreimageTree, sigma: TreeAutomorphism) -> Dict:
    """P_r(σ, x) ≡ p mod 2^{e(nivel(x), n)} en todo nodo, más consistencia entre nodos"""
    p, r, n = tree.parameter.p, tree.r, tree.depth
    failures = []
    for flat_id, (value, modulus) in enumerate(residue_values(sigma.bits, n, r)):
        if value != p % modulus:
            failures.append({'node': NodeAddress.from_flat_id(flat_id).word,
                             'value': value, 'modulus': modulus})
    consistent = in_m_prime(sigma, r)
    return {
        'check': 'pembed',
        'checks': (1 << n) - 1,
        'failures': failures,
        'consistent': consistent,
        'passed': not failures and consistent,
    }


def verify_pembed(tree: LabeledPreimageTree, sigma: TreeAutomorphism) -> bool:
    return pembed_report(tree, sigma)['passed']


def zeta_action_holds(tree: LabeledPreimageTree, sigma: TreeAutomorphism) -> bool:
    """σ(ζ_{2^E}) = ζ_{2^E}^{P_r(σ, raíz)}"""
    zeta = tree.tower[-1]
    residue = p_r_root(sigma, tree.r)
    return frobenius(zeta) == zeta ** residue.value


def frobenius_residue_image(p: int, e: int) -> List[int]:
    """{p^j mod 2^e : j ≥ 0}, ordenado"""
    if e < 1:
        raise DomainError(f"e debe ser ≥ 1 (recibido {e})")
    modulus = 1 << e
    image = set()
    value = 1
    while value not in image:
        image.add(value)
        value = (value * p) % modulus
    return sorted(image)


def frobenius_power_check(sigma: TreeAutomorphism, k: int) -> bool:
    """σ^k = id con k el grado de la extensión"""
    return power(sigma, k).is_identity()


def build_labeled_tree(p: int, r: int, n: int, x0: Optional[int] = None,
                       c: Optional[int] = None, seed: Optional[int] = None) -> LabeledPreimageTree:
    """Elige c (el primero de período r) y x0 (el menor válido) si no se dan"""
    if c is None:
        candidates = find_pcf_c(p, r)
        if not candidates:
            raise DomainError(f"No hay parámetro c de período {r} en F_{p}")
        c = candidates[0]
    if x0 is None:
        x0 = pick_x0(p, c, r)
    tree = build_preimage_tree(p, c, r, x0, n, seed=seed)
    return canonical_label(tree)


def run_frobenius_lab(p: int, r: int, n: int, x0: Optional[int] = None,
                      c: Optional[int] = None, seed: Optional[int] = None) -> Dict:
    """
    Construye, etiqueta y verifica; devuelve un reporte con cada chequeo

    Returns:
        Dict con parámetros, σ, residuos y un bloque 'checks' de booleanos
    """
    start = time.time()
    seed = default_seed() if seed is None else seed
    tree = build_labeled_tree(p, r, n, x0=x0, c=c, seed=seed)
    sigma = frobenius_automorphism(tree)

    structure = verify_structure(tree)
    products = verify_product_identity(tree)
    gamma = verify_gamma_chain(tree)
    perprod = verify_perprod(tree)
    pembed = pembed_report(tree, sigma)
    member = pembed['consistent']
    exponent = e_bound(0, n, r)
    root_residue: Optional[TruncatedResidue] = p_r_root(sigma, r) if member else None

    checks = {
        'structure': structure['passed'],
        'product_identity': products['passed'],
        'gamma_chain': gamma['passed'],
        'perprod': perprod['passed'],
        'in_m_prime': member,
        'pembed': pembed['passed'],
        'zeta_action': member and zeta_action_holds(tree, sigma),
        'power_check': frobenius_power_check(sigma, tree.ctx.k),
    }
    passed = all(checks.values())
    elapsed = time.time() - start
    if passed:
        logger.info(f"✅ Frobenius p={p} r={r} n={n}: k={tree.ctx.k} en {elapsed:.2f}s")
    else:
        failed = [name for name, ok in checks.items() if not ok]
        logger.warning(f"⚠️ Frobenius p={p} r={r} n={n}: fallaron {failed}")

    return {
        'p': p,
        'r': r,
        'n': n,
        'c': tree.parameter.c,
        'x0': tree.x0,
        'seed': seed,
        'k': tree.ctx.k,
        'modulus': list(tree.ctx.modulus),
        'sigma': dict(TreeAutomorphismSerializer(sigma).data),
        'sigma_order': order(sigma),
        'root_residue': dict(TruncatedResidueSerializer(root_residue).data) if root_residue else None,
        'target': {'value': p % (1 << exponent), 'exp': exponent},
        'residue_image': frobenius_residue_image(p, exponent),
        'label_swaps': tree.swaps,
        'checks': checks,
        'failures': {
            report['check']: report['failures'][:20]
            for report in (structure, products, gamma, perprod, pembed)
            if report['failures']
        },
        'note': ERRATUM_NOTE,
        'passed': passed,
    }


def sweep_configurations(count: int = 20, seed: int = 0,
                         depths: Sequence[int] = (3, 4, 5)) -> List[Dict]:
    """
    Configuraciones (p, r, c, x0, n) deterministas con r ≤ 3

    Solo se incluyen primos donde existe un c de período r; c y x0 se
    sortean entre los parámetros de período r y los puntos fuera de la órbita.
    """
    rng = random.Random(f"sweep:{seed}")
    configs = []
    pool = [(p, r) for p in SWEEP_PRIMES for r in (1, 2, 3) if find_pcf_c(p, r)]
    while len(configs) < count:
        p, r = pool[len(configs) % len(pool)]
        c = rng.choice(find_pcf_c(p, r))
        orbit = set(forward_orbit(p, c, r))
        x0 = rng.choice([x for x in range(p) if x not in orbit])
        configs.append({
            'p': p,
            'r': r,
            'c': c,
            'x0': x0,
            'n': rng.choice(list(depths)),
            'seed': rng.getrandbits(20),
        })
    return configs


def run_sweep_item(config: Dict) -> Dict:
    """Punto de entrada picklable para el pool de procesos"""
    return run_frobenius_lab(config['p'], config['r'], config['n'], x0=config.get('x0'),
                             c=config.get('c'), seed=config.get('seed'))


def m_prime_sample(r: int, n: int, primes: Sequence[int] = (), count: int = 64,
                   seed: int = 0) -> List[TreeAutomorphism]:
    """
    Elementos de M'_{r,n}: palabras aleatorias en los α_i, en los Frobenius
    de árboles de profundidad n sobre `primes` y en sus inversos

    Los primos sin c de período r se omiten.
    """
    base = list(pink_generators(r, n))
    for p in primes:
        if find_pcf_c(p, r):
            base.append(frobenius_automorphism(build_labeled_tree(p, r, n, seed=seed)))
    base += [invert(g) for g in base]
    rng = random.Random(f"m-prime:{r}:{n}:{seed}")
    sample = []
    for _ in range(count):
        sigma = identity(n)
        for _ in range(rng.randint(1, 6)):
            sigma = compose(sigma, rng.choice(base))
        sample.append(sigma)
    return sample
