"""
Tests del laboratorio de Frobenius: árbol de preimágenes, etiquetado y σ_p
"""
import random

from django.test import SimpleTestCase, override_settings

from apps.core.exceptions import CappedError, DomainError, ForwardOrbitError
from apps.parity_functionals.functionals import (
    TruncatedResidue,
    in_m_prime,
    p_r_root,
    residue_multiply,
)
from apps.tree_core.automorphism import NodeAddress, compose, identity, order

from .frobenius import (
    build_labeled_tree,
    frobenius_automorphism,
    frobenius_power_check,
    frobenius_residue_image,
    m_prime_sample,
    pembed_report,
    run_frobenius_lab,
    run_sweep_item,
    sweep_configurations,
    verify_pembed,
)
from .labeling import (
    swap_siblings,
    verify_gamma_chain,
    verify_perprod,
    verify_product_identity,
    verify_structure,
)
from .preimage_tree import (
    build_preimage_tree,
    exact_period,
    find_pcf_c,
    forward_orbit,
    pick_x0,
)
from .serializers import LabeledPreimageTreeSerializer


class FindPcfTest(SimpleTestCase):

    def test_period_one_and_two(self):
        self.assertEqual(find_pcf_c(7, 1), [0])
        self.assertEqual(find_pcf_c(7, 2), [6])

    def test_period_three_matches_cubic(self):
        # f^3(0) = c (c^3 + 2c^2 + c + 1)
        expected = [c for c in range(1, 11) if (c ** 3 + 2 * c * c + c + 1) % 11 == 0]
        self.assertEqual(find_pcf_c(11, 3), expected)

    def test_exact_period(self):
        self.assertEqual(exact_period(5, 4), 2)
        self.assertIsNone(exact_period(5, 1, limit=2))

    def test_domain(self):
        with self.assertRaises(DomainError):
            find_pcf_c(9, 1)
        with self.assertRaises(DomainError):
            find_pcf_c(7, 0)

    @override_settings(ARBOR_SCAN_CAP=10)
    def test_scan_cap(self):
        with self.assertRaises(CappedError):
            find_pcf_c(11, 2)

    def test_pick_x0_avoids_orbit(self):
        self.assertEqual(pick_x0(5, 4, 2), 1)
        self.assertEqual(pick_x0(7, 0, 1), 1)


class PreimageTreeTest(SimpleTestCase):

    def setUp(self):
        self.tree = build_preimage_tree(5, 4, 2, 2, 3, seed=11)

    def test_structure(self):
        report = verify_structure(self.tree)
        self.assertTrue(report['passed'], report['failures'])
        self.assertEqual(len(self.tree.levels[3]), 8)

    def test_extension_degree_is_power_of_two(self):
        k = self.tree.ctx.k
        self.assertEqual(k & (k - 1), 0)
        # 2 - 4 = 3 no es cuadrado en F_5
        self.assertGreaterEqual(k, 2)

    def test_x0_in_orbit(self):
        with self.assertRaises(ForwardOrbitError):
            build_preimage_tree(5, 4, 2, 4, 3)
        with self.assertRaises(ForwardOrbitError):
            build_preimage_tree(5, 4, 2, 0, 3)

    def test_wrong_period(self):
        with self.assertRaises(DomainError):
            build_preimage_tree(5, 4, 1, 2, 3)

    @override_settings(ARBOR_FIELD_DEGREE_CAP=1)
    def test_degree_cap(self):
        with self.assertRaises(CappedError):
            build_preimage_tree(5, 4, 2, 2, 3)


class LabelingTest(SimpleTestCase):

    def setUp(self):
        self.tree = build_labeled_tree(5, 2, 3, x0=2, c=4, seed=11)

    def test_labeled_tree_passes_all_checks(self):
        self.assertTrue(self.tree.labeled)
        for verify in (verify_structure, verify_product_identity, verify_gamma_chain, verify_perprod):
            report = verify(self.tree)
            self.assertTrue(report['passed'], (report['check'], report['failures']))
            self.assertGreater(report['checks'], 0)

    def test_sibling_swap_breaks_ratio_identity(self):
        broken = swap_siblings(self.tree, NodeAddress.from_word('aa'))
        self.assertTrue(verify_structure(broken)['passed'])
        report = verify_perprod(broken)
        self.assertFalse(report['passed'])
        self.assertEqual(report['failures'][0], {'node': '', 'i': 1})

    def test_shallow_tree_is_vacuous(self):
        tree = build_labeled_tree(5, 2, 2, x0=2, c=4)
        self.assertEqual(verify_perprod(tree)['checks'], 0)
        self.assertTrue(verify_perprod(tree)['passed'])

    def test_swap_leaf_rejected(self):
        with self.assertRaises(DomainError):
            swap_siblings(self.tree, NodeAddress(3, 0))

    def test_period_one_deeper(self):
        tree = build_labeled_tree(13, 1, 4, seed=3)
        self.assertTrue(verify_perprod(tree)['passed'])
        self.assertTrue(verify_gamma_chain(tree)['passed'])

    def test_serializer(self):
        data = LabeledPreimageTreeSerializer(self.tree).data
        self.assertEqual(len(data['nodes']), 15)
        self.assertEqual(data['nodes'][''][0], 2)
        self.assertEqual(data['parameter']['orbit'], [0, 4])
        self.assertEqual(len(data['tower']), 2)


class FrobeniusTest(SimpleTestCase):

    def test_identity_over_prime_field(self):
        # 3 - 4 = -1 = 2^2 en F_5, así que T_1 vive en F_5
        tree = build_labeled_tree(5, 2, 1, x0=3, c=4)
        self.assertEqual(tree.ctx.k, 1)
        self.assertTrue(frobenius_automorphism(tree).is_identity())

    def test_power_and_order(self):
        tree = build_labeled_tree(5, 2, 3, x0=2, c=4, seed=11)
        sigma = frobenius_automorphism(tree)
        self.assertTrue(frobenius_power_check(sigma, tree.ctx.k))
        self.assertEqual(tree.ctx.k % order(sigma), 0)

    def test_cyclotomic_embedding(self):
        tree = build_labeled_tree(7, 2, 4, seed=5)
        sigma = frobenius_automorphism(tree)
        self.assertTrue(in_m_prime(sigma, 2))
        self.assertTrue(verify_pembed(tree, sigma))
        residue = p_r_root(sigma, 2)
        self.assertEqual(residue.value, 7 % residue.modulus)

    def test_pembed_detects_wrong_sigma(self):
        tree = build_labeled_tree(7, 2, 4, seed=5)
        # la identidad da P = 1 en la raíz, pero 7 ≡ 3 mod 4
        report = pembed_report(tree, identity(4))
        self.assertEqual(report['checks'], 15)
        self.assertTrue(report['consistent'])
        self.assertFalse(report['passed'])
        self.assertIn({'node': '', 'value': 1, 'modulus': 4}, report['failures'])

    def test_residue_image(self):
        self.assertEqual(frobenius_residue_image(3, 3), [1, 3])
        self.assertEqual(frobenius_residue_image(5, 4), [1, 5, 9, 13])
        with self.assertRaises(DomainError):
            frobenius_residue_image(5, 0)

    def test_run_report(self):
        report = run_frobenius_lab(5, 2, 3, x0=2, c=4, seed=11)
        self.assertTrue(report['passed'], report['failures'])
        self.assertEqual(report['root_residue'], {'value': 1, 'exp': 2})
        self.assertEqual(report['target'], {'value': 1, 'exp': 2})
        self.assertEqual(report['sigma']['depth'], 3)
        self.assertEqual(set(report['checks']), {
            'structure', 'product_identity', 'gamma_chain', 'perprod',
            'in_m_prime', 'pembed', 'zeta_action', 'power_check',
        })

    def test_target_mod_eight(self):
        report = run_frobenius_lab(5, 2, 5, x0=2, c=4, seed=11)
        self.assertEqual(report['target'], {'value': 5, 'exp': 3})
        self.assertTrue(report['passed'], report['failures'])
        self.assertEqual(report['root_residue'], report['target'])

    def test_no_pcf_parameter(self):
        # en F_3, c=1 da 0→1→2→2: no hay período 2 (c=2 da 0→2→0)
        self.assertEqual(find_pcf_c(3, 2), [2])
        self.assertEqual(find_pcf_c(3, 3), [])
        with self.assertRaises(DomainError):
            run_frobenius_lab(3, 3, 4)


class SweepTest(SimpleTestCase):

    def test_configurations_are_deterministic(self):
        first = sweep_configurations(20, seed=1)
        self.assertEqual(first, sweep_configurations(20, seed=1))
        self.assertEqual(len(first), 20)
        self.assertTrue(all(config['r'] <= 3 for config in first))

    def test_sample_passes(self):
        for config in sweep_configurations(20, seed=2)[:6]:
            report = run_sweep_item(config)
            self.assertTrue(report['passed'], (config, report['failures']))

    def test_configurations_vary_parameters(self):
        configs = sweep_configurations(40, seed=3)
        for config in configs:
            self.assertIn(config['c'], find_pcf_c(config['p'], config['r']))
            self.assertNotIn(config['x0'], forward_orbit(config['p'], config['c'], config['r']))
        picked = {(config['p'], config['r'], config['x0']) for config in configs}
        smallest = {(config['p'], config['r'], pick_x0(config['p'], config['c'], config['r']))
                    for config in configs}
        self.assertNotEqual(picked, smallest)

    def test_item_uses_drawn_root(self):
        config = next(config for config in sweep_configurations(20, seed=4)
                      if config['x0'] != pick_x0(config['p'], config['c'], config['r']))
        report = run_sweep_item(dict(config, n=3))
        self.assertEqual((report['c'], report['x0']), (config['c'], config['x0']))
        self.assertTrue(report['passed'], report['failures'])


class RootResidueLawTest(SimpleTestCase):
    """P_r de la raíz es multiplicativo sobre muestras de M' a profundidad 5..8"""

    def test_frobenius_residue_is_p(self):
        for p in (5, 7):
            sigma = frobenius_automorphism(build_labeled_tree(p, 2, 5, seed=9))
            self.assertEqual(p_r_root(sigma, 2), TruncatedResidue(p % 8, 3))

    def test_sample_is_inside_m_prime(self):
        sample = m_prime_sample(2, 5, primes=(5,), count=24, seed=1)
        self.assertTrue(all(in_m_prime(sigma, 2) for sigma in sample))
        values = {p_r_root(sigma, 2).value for sigma in sample}
        self.assertTrue(values - {1}, values)

    def test_homomorphism_sampled_n5_to_n8(self):
        rng = random.Random(58)
        for n in (5, 6, 7, 8):
            primes = (5, 7) if n == 5 else ()
            for r in (2, 3):
                sample = m_prime_sample(r, n, primes=primes, count=32, seed=n)
                for _ in range(300):
                    sigma, tau = rng.choice(sample), rng.choice(sample)
                    self.assertEqual(
                        p_r_root(compose(sigma, tau), r),
                        residue_multiply(p_r_root(sigma, r), p_r_root(tau, r)),
                        (r, n, sigma.to_hex(), tau.to_hex()),
                    )
