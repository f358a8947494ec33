"""
Tests para generadores de Pink, cerradura y fórmulas de orden
"""
from django.test import SimpleTestCase, override_settings
from sympy.combinatorics import Permutation, PermutationGroup

from apps.core.exceptions import CappedError, DomainError
from apps.parity_functionals.functionals import in_b_prime, in_m_prime
from apps.tree_core.automorphism import (
    NodeAddress,
    identity,
    level_permutation,
    random_automorphism,
    root_transposition,
)

from .closure import (
    closure,
    closure_order,
    cyclotomic_image,
    enumerate_b_prime,
    right_multiplier,
)
from .generators import (
    alpha_generator,
    alpha_generator_recursive,
    pink_generators,
)
from .orders import (
    emit_orders_table,
    kernel_of_restriction_count,
    log2_order_pink,
    log2_order_s,
    orders_table,
)


def permutation_group_order(gens, n):
    """Oráculo independiente: Schreier–Sims de sympy sobre las hojas"""
    perms = [Permutation(list(level_permutation(g, n))) for g in gens]
    return PermutationGroup(perms).order()


class AlphaGeneratorTest(SimpleTestCase):

    def test_r3_i2_support(self):
        alpha = alpha_generator(2, 3, 8)
        expected = {'a', 'abaa', 'abaabaa'}
        support = set()
        for level in range(8):
            for path in range(1 << level):
                node = NodeAddress(level, path)
                if alpha.parity(node):
                    support.add(node.word)
        self.assertEqual(support, expected)

    def test_i1_has_root_bit(self):
        self.assertEqual(alpha_generator(1, 2, 3).bits & 1, 1)

    def test_bit_count(self):
        for r in range(1, 5):
            for i in range(1, r + 1):
                for n in range(1, 10):
                    expected = sum(1 for m in range(n) if i - 1 + m * r < n)
                    self.assertEqual(alpha_generator(i, r, n).bits.bit_count(), expected)

    def test_index_out_of_range(self):
        with self.assertRaises(DomainError):
            alpha_generator(3, 2, 4)

    def test_recursive_matches_closed_form(self):
        for r in range(1, 5):
            for i in range(1, r + 1):
                for n in range(1, 9):
                    self.assertEqual(alpha_generator_recursive(i, r, n), alpha_generator(i, r, n))

    def test_generators_in_b_prime_n12(self):
        for r in range(1, 7):
            self.assertTrue(pink_generators(r, 12).all_in_b_prime())


class ClosureTest(SimpleTestCase):

    def test_empty_generators(self):
        group = closure([], depth=3)
        self.assertEqual(group.order, 1)
        self.assertIn(identity(3), group)

    def test_right_multiplier_matches_compose(self):
        g = random_automorphism(4, seed=1)
        h = random_automorphism(4, seed=2)
        tables, g_bits = right_multiplier(g)
        out = g_bits
        value = h.bits
        for table in tables:
            out ^= table[value & 255]
            value >>= 8
        self.assertEqual(out, (h * g).bits)

    def test_known_orders(self):
        self.assertEqual(closure(pink_generators(1, 4)).order, 16)
        self.assertEqual(closure(pink_generators(2, 4)).order, 4096)

    def test_closure_equals_b_prime(self):
        for r, n in [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]:
            group = closure(pink_generators(r, n))
            self.assertEqual(group.order, 2 ** log2_order_pink(r, n))
            self.assertEqual(group.keys, enumerate_b_prime(r, n).keys)

    def test_containment_chain(self):
        group = closure(pink_generators(2, 4))
        for sigma in group.elements:
            self.assertTrue(in_b_prime(sigma, 2))
            self.assertTrue(in_m_prime(sigma, 2))

    def test_bitmap_order_matches_set(self):
        gens = pink_generators(2, 4)
        self.assertEqual(closure_order(gens), closure(gens).order)

    def test_cap(self):
        with self.assertRaises(CappedError) as ctx:
            closure(pink_generators(2, 4), cap=100)
        self.assertGreater(ctx.exception.partial_count, 100)

    def test_root_transposition_group(self):
        self.assertEqual(closure([root_transposition(3)]).order, 2)

    def test_order_2_5_against_schreier_sims(self):
        gens = pink_generators(2, 5)
        self.assertEqual(permutation_group_order(gens, 5), 2 ** 23)


class EnumerationTest(SimpleTestCase):

    def test_shallow_is_full(self):
        self.assertEqual(enumerate_b_prime(3, 2).order, 2 ** 3)

    def test_r1_n4(self):
        self.assertEqual(enumerate_b_prime(1, 4).order, 16)

    @override_settings(ARBOR_ENUM_CAP=3)
    def test_cap(self):
        with self.assertRaises(CappedError):
            enumerate_b_prime(2, 4)

    def test_cyclotomic_image(self):
        for r in (1, 2, 3):
            image = cyclotomic_image(r, 4)
            self.assertTrue(image['surjective'])
            self.assertTrue(image['equal_fibers'])
            self.assertTrue(image['kernel_matches'])
            self.assertTrue(image['index_law'])


class OrderFormulaTest(SimpleTestCase):

    def test_pink_values(self):
        self.assertEqual(log2_order_pink(2, 5), 23)
        self.assertEqual(log2_order_pink(3, 4), 14)
        self.assertEqual([log2_order_pink(2, n) for n in range(1, 5)], [1, 3, 6, 12])
        self.assertEqual([log2_order_pink(1, n) for n in range(1, 5)], [1, 2, 3, 4])
        for n in range(1, 6):
            self.assertEqual(log2_order_pink(n, n), 2 ** n - 1)

    def test_s_values(self):
        self.assertEqual(log2_order_s(2, 5), 11)
        self.assertEqual(log2_order_s(5, 3), 4)
        with self.assertRaises(DomainError):
            log2_order_s(2, 1)

    def test_telescoping(self):
        for r in range(1, 7):
            for n in range(2, 13):
                self.assertEqual(
                    log2_order_pink(r, n) - log2_order_pink(r, n - 1),
                    log2_order_s(r, n),
                )

    def test_kernel_of_restriction(self):
        for r in (1, 2, 3):
            for n in (2, 3, 4):
                self.assertEqual(kernel_of_restriction_count(r, n), 2 ** log2_order_s(r, n))


class OrdersTableTest(SimpleTestCase):

    def test_r2_table(self):
        frame = orders_table([2], range(1, 5))
        self.assertEqual(list(frame['log2_formula']), [1, 3, 6, 12])
        self.assertTrue(frame['match_flag'].all())
        self.assertEqual(int(frame['bfs_order'].iloc[-1]), 4096)

    def test_empty_range(self):
        frame = orders_table([2], [])
        self.assertTrue(frame.empty)
        self.assertEqual(emit_orders_table(frame).strip(),
                         'r,n,log2_formula,bfs_order,bprime_count,match_flag,capped')

    def test_capped_row(self):
        frame = orders_table([2], [5], bfs_log2_cap=10)
        row = frame.iloc[0]
        self.assertTrue(row['capped'])
        self.assertTrue(row['match_flag'])
