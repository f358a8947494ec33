"""
Suites de aceptación agregadas por verify_all

Cada suite devuelve un SuiteResult con el número de chequeos, las fallas
(acotadas) y el tiempo. Los perfiles 'quick' y 'full' solo cambian tamaños.
"""
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

from apps.core.exceptions import CappedError, DomainError, ForwardOrbitError
from apps.core.workers import run_parallel
from apps.frobenius_lab.frobenius import (
    build_labeled_tree,
    m_prime_sample,
    run_sweep_item,
    sweep_configurations,
)
from apps.frobenius_lab.labeling import swap_siblings, verify_perprod
from apps.parity_functionals.functionals import bits_root_residue, e_bound, in_b_prime
from apps.pink_subgroup.closure import (
    closure,
    closure_order,
    cyclotomic_image,
    enumerate_b_prime,
    enumerate_m_prime,
)
from apps.pink_subgroup.generators import (
    GeneratorSet,
    alpha_generator,
    alpha_generator_recursive,
    pink_generators,
)
from apps.pink_subgroup.orders import log2_order_pink
from apps.square_classes.conditions import (
    check_aut_tn,
    check_condition_one,
    discriminant_class_matches,
)
from apps.tree_core.automorphism import (
    NodeAddress,
    TreeAutomorphism,
    apply,
    compose,
    invert,
    node_count,
    random_automorphism,
    root_transposition,
)

logger = logging.getLogger(__name__)

MAX_REPORTED_FAILURES = 20

PINK_CONFIGS = ((1, 3), (1, 4), (2, 3), (2, 4), (3, 4))

PROFILES = {
    'quick': {
        'triples': 2000,
        'residue_pairs': 3000,
        'deep_pairs': 2000,
        'frobenius_depth': 5,
        'include_2_5': False,
        'sweep_count': 20,
        'sweep_depths': (3, 4, 5),
        'rational_instances': 1000,
        'discriminant_depth': 6,
    },
    'full': {
        'triples': 10_000,
        'residue_pairs': 20_000,
        'deep_pairs': 10_000,
        'frobenius_depth': 6,
        'include_2_5': True,
        'sweep_count': 24,
        'sweep_depths': (3, 4, 5, 6, 7),
        'rational_instances': 1000,
        'discriminant_depth': 6,
    },
}


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: List = field(default_factory=list)
    details: Dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, detail):
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(detail)
        else:
            self.details['truncated_failures'] = self.details.get('truncated_failures', 0) + 1

    def as_dict(self) -> Dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'checks': self.checks,
            'failures': self.failures,
            'details': self.details,
        }


def _timed(name: str, body: Callable[[SuiteResult], None]) -> SuiteResult:
    result = SuiteResult(name)
    start = time.time()
    body(result)
    result.elapsed = time.time() - start
    icon = '✅' if result.passed else '❌'
    logger.info(f"{icon} Suite {name}: {result.checks} chequeos en {result.elapsed:.2f}s")
    return result


def _all_elements(n: int) -> List[TreeAutomorphism]:
    return [TreeAutomorphism(n, bits) for bits in range(1 << node_count(n))]


def suite_group_algebra(triples: int = 10_000, seed: int = 0) -> SuiteResult:
    """Leyes de grupo y compatibilidad de la acción: exhaustivo en n ≤ 3, tríos aleatorios en n = 8"""

    def body(result: SuiteResult):
        for n in (1, 2, 3):
            elements = _all_elements(n)
            nodes = [NodeAddress(level, path) for level in range(n + 1) for path in range(1 << level)]
            for sigma in elements:
                result.checks += 1
                if not compose(sigma, invert(sigma)).is_identity():
                    result.fail({'n': n, 'law': 'inverse', 'sigma': sigma.to_hex()})
            for sigma, tau in product(elements, repeat=2):
                composed = compose(sigma, tau)
                result.checks += 1
                for x in nodes:
                    if apply(composed, x) != apply(sigma, apply(tau, x)):
                        result.fail({'n': n, 'law': 'action', 'sigma': sigma.to_hex(), 'tau': tau.to_hex()})
                        break

        rng = random.Random(f"group:{seed}")
        for _ in range(triples):
            s, t, u = (random_automorphism(8, rng.getrandbits(32)) for _ in range(3))
            result.checks += 1
            if compose(compose(s, t), u) != compose(s, compose(t, u)):
                result.fail({'n': 8, 'law': 'associativity', 'sigma': s.to_hex()})
            x = NodeAddress(8, rng.getrandbits(8))
            if apply(compose(s, t), x) != apply(s, apply(t, x)):
                result.fail({'n': 8, 'law': 'action', 'sigma': s.to_hex()})

    return _timed('group_algebra', body)


def suite_root_residue(pairs: int = 3000, seed: int = 0, deep_pairs: int = 2000,
                       frobenius_depth: int = 5) -> SuiteResult:
    """
    P_r de la raíz es multiplicativo en M'_{r,n} y su fibra de 1 es B'_{r,n}

    Pares exhaustivos en n ≤ 3, muestreados en n = 4. En n = 5..8 los pares
    salen de m_prime_sample; hasta `frobenius_depth` incluye Frobenius sobre F_5 y F_7.
    """

    def body(result: SuiteResult):
        rng = random.Random(f"residue:{seed}")
        for r, n in product((1, 2, 3), (1, 2, 3, 4)):
            group = enumerate_m_prime(r, n)
            elements = list(group.elements)
            residues = {key: bits_root_residue(key, n, r) for key in group.keys}
            if n <= 3:
                candidates = product(elements, repeat=2)
            else:
                candidates = ((rng.choice(elements), rng.choice(elements)) for _ in range(pairs))
            exponent_mask = (1 << e_bound(0, n, r)) - 1
            for sigma, tau in candidates:
                result.checks += 1
                composed = compose(sigma, tau).bits
                value = residues.get(composed)
                expected = (residues[sigma.bits] * residues[tau.bits]) & exponent_mask
                if value != expected:
                    result.fail({'r': r, 'n': n, 'sigma': sigma.to_hex(), 'tau': tau.to_hex()})
            image = cyclotomic_image(r, n)
            result.checks += 1
            if not image['kernel_matches']:
                result.fail({'r': r, 'n': n, 'reason': 'kernel'})

        deep = list(product((2, 3), (5, 6, 7, 8)))
        for r, n in deep:
            primes = (5, 7) if n <= frobenius_depth else ()
            sample = m_prime_sample(r, n, primes=primes, count=48, seed=seed)
            residues = {sigma.bits: bits_root_residue(sigma.bits, n, r) for sigma in sample}
            exponent_mask = (1 << e_bound(0, n, r)) - 1
            for _ in range(max(1, deep_pairs // len(deep))):
                sigma, tau = rng.choice(sample), rng.choice(sample)
                result.checks += 1
                value = bits_root_residue(compose(sigma, tau).bits, n, r)
                left, right = residues[sigma.bits], residues[tau.bits]
                if value is None or left is None or right is None or value != (left * right) & exponent_mask:
                    result.fail({'r': r, 'n': n, 'sigma': sigma.to_hex(), 'tau': tau.to_hex()})

    return _timed('root_residue', body)


def suite_pink_closure(include_2_5: bool = False, generators: Callable = pink_generators) -> SuiteResult:
    """⟨α_i⟩ = B'_{r,n} como conjuntos y |⟨α_i⟩| = 2^{fórmula}"""

    def body(result: SuiteResult):
        orders = {}
        for r, n in PINK_CONFIGS:
            expected = 1 << log2_order_pink(r, n)
            group = closure(generators(r, n))
            bprime = enumerate_b_prime(r, n)
            orders[f'{r},{n}'] = group.order
            result.checks += 2
            if group.keys != bprime.keys:
                result.fail({'r': r, 'n': n, 'reason': 'closure != B\'', 'order': group.order})
            if group.order != expected:
                result.fail({'r': r, 'n': n, 'reason': 'order', 'order': group.order, 'expected': expected})
        if include_2_5:
            expected = 1 << log2_order_pink(2, 5)
            try:
                order = closure_order(generators(2, 5), cap=expected)
            except CappedError as exc:
                order = exc.partial_count
            orders['2,5'] = order
            result.checks += 1
            if order != expected:
                result.fail({'r': 2, 'n': 5, 'reason': 'order', 'order': order, 'expected': expected})
        result.details['orders'] = orders

    return _timed('pink_closure', body)


def suite_generators(n: int = 12, r_max: int = 6) -> SuiteResult:
    """α_i ∈ B'_{r,n} para i ≤ r ≤ r_max; la forma cerrada coincide con la recursiva"""

    def body(result: SuiteResult):
        for r in range(1, r_max + 1):
            for i in range(1, r + 1):
                alpha = alpha_generator(i, r, n)
                result.checks += 2
                if not in_b_prime(alpha, r):
                    result.fail({'r': r, 'i': i, 'reason': 'not in B\''})
                if alpha != alpha_generator_recursive(i, r, n):
                    result.fail({'r': r, 'i': i, 'reason': 'recursive mismatch'})

    return _timed('generators', body)


def suite_index_law(n_max: int = 4, r_max: int = 3) -> SuiteResult:
    """|M'_{r,n}| / |B'_{r,n}| = 2^{e(0,n)-1}"""

    def body(result: SuiteResult):
        ratios = {}
        for r, n in product(range(1, r_max + 1), range(1, n_max + 1)):
            image = cyclotomic_image(r, n)
            ratios[f'{r},{n}'] = [image['m_prime_order'], image['b_prime_order']]
            result.checks += 1
            if not (image['index_law'] and image['surjective'] and image['equal_fibers']):
                result.fail({'r': r, 'n': n, 'image': image})
        result.details['orders'] = ratios

    return _timed('index_law', body)


def suite_frobenius(count: int = 20, depths: Sequence[int] = (3, 4, 5), seed: int = 0) -> SuiteResult:
    """Frobenius en M', P_r ≡ p en cada nodo, cadena γ, identidad de razones y de productos"""

    def body(result: SuiteResult):
        configs = sweep_configurations(count, seed=seed, depths=depths)
        reports = run_parallel(run_sweep_item, configs)
        rows = []
        for config, report in zip(configs, reports):
            result.checks += 1
            rows.append({'p': report['p'], 'r': report['r'], 'n': report['n'], 'k': report['k'],
                         'passed': report['passed']})
            if not report['passed']:
                result.fail({'config': config, 'checks': report['checks'], 'failures': report['failures']})
        result.details['configurations'] = rows

    return _timed('frobenius', body)


def _random_rational(rng: random.Random, numerator: int, denominator: int) -> Fraction:
    return Fraction(rng.randint(-numerator, numerator), rng.randint(1, denominator))


def suite_square_classes(instances: int = 1000, discriminant_depth: int = 6, seed: int = 0) -> SuiteResult:
    """Condición (1) sobre ℚ, rango contra el oráculo de subconjuntos y el oráculo de discriminantes"""

    def body(result: SuiteResult):
        holds = check_condition_one(-1, 5, 2)
        fails = check_condition_one(-1, 3, 2)
        result.checks += 2
        if not holds.condition:
            result.fail({'c': -1, 'x0': 5, 'reason': 'condition should hold'})
        if fails.condition or (2,) not in fails.dependencies:
            result.fail({'c': -1, 'x0': 3, 'reason': 'D1 square certificate missing'})

        rng = random.Random(f"rational:{seed}")
        done = 0
        while done < instances:
            c = rng.choice([Fraction(0), Fraction(-1), _random_rational(rng, 9, 9)])
            n = rng.randint(1, 8) if c in (0, -1) else rng.randint(1, 3)
            x0 = _random_rational(rng, 40, 12)
            try:
                verdict = check_aut_tn(c, x0, n)
            except ForwardOrbitError:
                continue
            done += 1
            result.checks += 1
            if not verdict.oracle_agrees:
                result.fail({'c': str(c), 'x0': str(x0), 'n': n, 'reason': 'oracle'})

        pairs = [(_random_rational(rng, 7, 5), _random_rational(rng, 7, 5), min(3, discriminant_depth))
                 for _ in range(4)]
        pairs += [(Fraction(rng.randint(-2, 1)), Fraction(rng.randint(-7, 7)), discriminant_depth)
                  for _ in range(3)]
        for c, x0, depth in pairs:
            for i in range(1, depth + 1):
                try:
                    matches = discriminant_class_matches(c, x0, i)
                except ForwardOrbitError:
                    break
                result.checks += 1
                if not matches:
                    result.fail({'c': str(c), 'x0': str(x0), 'i': i, 'reason': 'discriminant'})

    return _timed('square_classes', body)


def suite_negative_controls(seed: int = 0) -> SuiteResult:
    """Etiquetas alteradas rompen la identidad de razones; un no-miembro de B' se rechaza"""

    def body(result: SuiteResult):
        tree = build_labeled_tree(7, 2, 4, seed=seed)
        broken = swap_siblings(tree, NodeAddress(tree.depth - 1, 0))
        result.checks += 1
        if verify_perprod(broken)['passed']:
            result.fail({'reason': 'mutated labels accepted'})

        rng = random.Random(f"nonmember:{seed}")
        bprime = enumerate_b_prime(2, 4)
        for _ in range(1000):
            sigma = random_automorphism(4, rng.getrandbits(32))
            if sigma not in bprime:
                break
        else:
            raise DomainError("No se encontró un no-miembro de B' en 1000 muestras")
        result.checks += 1
        if in_b_prime(sigma, 2):
            result.fail({'reason': 'non-member accepted', 'sigma': sigma.to_hex()})

    return _timed('negative_controls', body)


def tampered_generators(r: int, n: int) -> GeneratorSet:
    """α_1 reemplazado por la transposición de la raíz"""
    honest = pink_generators(r, n)
    return GeneratorSet(r=r, depth=n, elements=(root_transposition(n),) + honest.elements[1:])


def run_suites(profile: str = 'quick', seed: int = 0, mutate: bool = False) -> Tuple[bool, Dict]:
    """
    Corre todas las suites del perfil

    Returns:
        (todas pasaron, reporte con cada suite)
    """
    if profile not in PROFILES:
        raise DomainError(f"Perfil desconocido: {profile} (opciones: {sorted(PROFILES)})")
    sizes = PROFILES[profile]
    generators = tampered_generators if mutate else pink_generators
    results = [
        suite_group_algebra(sizes['triples'], seed=seed),
        suite_root_residue(sizes['residue_pairs'], seed=seed, deep_pairs=sizes['deep_pairs'],
                           frobenius_depth=sizes['frobenius_depth']),
        suite_pink_closure(sizes['include_2_5'], generators=generators),
        suite_generators(),
        suite_index_law(),
        suite_frobenius(sizes['sweep_count'], sizes['sweep_depths'], seed=seed),
        suite_square_classes(sizes['rational_instances'], sizes['discriminant_depth'], seed=seed),
        suite_negative_controls(seed=seed),
    ]
    passed = all(result.passed for result in results)
    report = {
        'profile': profile,
        'seed': seed,
        'mutated': mutate,
        'passed': passed,
        'suites': [result.as_dict() for result in results],
    }
    return passed, report
