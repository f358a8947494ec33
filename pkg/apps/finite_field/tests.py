"""
Tests para la aritmética de campos finitos
"""
import random

from django.test import SimpleTestCase

from apps.core.exceptions import DomainError, UnavailableError

from .fields import (
    FqContext,
    canonical_root,
    element_order_two_power,
    fq_inverse,
    fq_make,
    frobenius,
    is_irreducible,
    is_prime,
    is_square,
    root_of_unity_tower,
    sqrt_fq,
)


class FqMakeTest(SimpleTestCase):

    def test_base_field(self):
        ctx = fq_make(7, 1)
        self.assertEqual(ctx.modulus, (0, 1))
        self.assertEqual(ctx.q, 7)
        self.assertEqual(ctx.two_adic_valuation, 1)

    def test_quadratic_has_no_roots(self):
        ctx = fq_make(5, 2, seed=3)
        c0, c1, _ = ctx.modulus
        for x in range(5):
            self.assertNotEqual((x * x + c1 * x + c0) % 5, 0)

    def test_deterministic(self):
        self.assertEqual(fq_make(11, 4, seed=9).modulus, fq_make(11, 4, seed=9).modulus)

    def test_rejects_even_and_composite(self):
        with self.assertRaises(DomainError):
            fq_make(2, 1)
        with self.assertRaises(DomainError):
            fq_make(9, 2)

    def test_reducible_modulus_detected(self):
        # X^2 - 1 = (X - 1)(X + 1) sobre F_5
        self.assertFalse(is_irreducible(FqContext(5, 2, (4, 0, 1))))
        # X^2 - 2 es irreducible sobre F_5 (2 no es cuadrado)
        self.assertTrue(is_irreducible(FqContext(5, 2, (3, 0, 1))))

    def test_quartic_with_quadratic_factors(self):
        # (X^2 - 2)(X^2 - 3) no tiene raíces en F_5 pero es reducible
        ctx = FqContext(5, 4, (6 % 5, 0, (-5) % 5, 0, 1))
        self.assertFalse(is_irreducible(ctx))

    def test_expected_tries(self):
        k = 4
        tries = [fq_make(5, k, seed=seed).tries for seed in range(100)]
        mean = sum(tries) / len(tries)
        self.assertGreater(mean, k / 3)
        self.assertLess(mean, 3 * k)

    def test_primality(self):
        self.assertTrue(is_prime(2 ** 31 - 1))
        self.assertFalse(is_prime(561))


class ArithmeticTest(SimpleTestCase):

    def setUp(self):
        self.ctx = fq_make(7, 3, seed=1)
        self.rng = random.Random(0)

    def test_field_axioms_sampled(self):
        ctx = self.ctx
        for _ in range(200):
            a, b, c = (ctx.random_element(self.rng) for _ in range(3))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual(a - a, ctx.zero)

    def test_inverse(self):
        for _ in range(50):
            a = self.ctx.random_element(self.rng)
            if not a.is_zero():
                self.assertEqual(a * fq_inverse(a), self.ctx.one)
        with self.assertRaises(DomainError):
            fq_inverse(self.ctx.zero)

    def test_multiplicative_group_order(self):
        a = self.ctx.random_element(self.rng)
        self.assertEqual(a ** (self.ctx.q - 1), self.ctx.one)

    def test_frobenius_is_additive_and_order_k(self):
        a = self.ctx.random_element(self.rng)
        b = self.ctx.random_element(self.rng)
        self.assertEqual(frobenius(a + b), frobenius(a) + frobenius(b))
        value = a
        for _ in range(3):
            value = frobenius(value)
        self.assertEqual(value, a)

    def test_printing(self):
        self.assertEqual(str(self.ctx.element([1, 0, 5])), '1,0,5')

    def test_equality_is_consistent_with_hash(self):
        three = self.ctx.from_int(3)
        self.assertNotEqual(three, 3)
        self.assertNotEqual(three, 3 + self.ctx.p)
        self.assertEqual(three, self.ctx.element([3, 0, 0]))
        self.assertEqual(hash(three), hash(self.ctx.element([3, 0, 0])))
        self.assertEqual(len({three, self.ctx.from_int(3 + self.ctx.p), 3}), 2)
        self.assertEqual(three + 4, self.ctx.from_int(7))


class SqrtTest(SimpleTestCase):

    def test_zero(self):
        ctx = fq_make(7, 1)
        self.assertEqual(sqrt_fq(ctx, ctx.zero), ctx.zero)

    def test_f7(self):
        ctx = fq_make(7, 1)
        root = sqrt_fq(ctx, ctx.from_int(2))
        self.assertIn(root.coeffs[0], (3, 4))
        self.assertEqual(root.coeffs[0], 3)
        self.assertIsNone(sqrt_fq(ctx, ctx.from_int(3)))

    def test_round_trip(self):
        rng = random.Random(5)
        contexts = [fq_make(p, k, seed=2) for p, k in [(5, 1), (13, 1), (7, 2), (3, 4), (17, 3)]]
        for trial in range(1000):
            ctx = contexts[trial % len(contexts)]
            b = ctx.random_element(rng)
            root = sqrt_fq(ctx, b * b)
            self.assertEqual(root * root, b * b)
            self.assertIn(root, (b, -b))
            self.assertEqual(root, canonical_root(root))

    def test_euler_consistency(self):
        rng = random.Random(6)
        ctx = fq_make(11, 2, seed=4)
        for _ in range(200):
            a = ctx.random_element(rng)
            self.assertEqual(is_square(a), sqrt_fq(ctx, a) is not None)


class RootOfUnityTowerTest(SimpleTestCase):

    def test_e1(self):
        ctx = fq_make(7, 1)
        self.assertEqual(root_of_unity_tower(ctx, 1), [-ctx.one])

    def test_f13(self):
        ctx = fq_make(13, 1)
        tower = root_of_unity_tower(ctx, 2)
        self.assertIn(tower[1].coeffs[0], (5, 8))

    def test_chain_and_exact_order(self):
        for p, k in [(17, 1), (3, 4), (7, 2), (5, 4)]:
            ctx = fq_make(p, k, seed=7)
            E = ctx.two_adic_valuation
            tower = root_of_unity_tower(ctx, E)
            self.assertEqual(tower[0], -ctx.one)
            for j in range(2, E + 1):
                zeta = tower[j - 1]
                self.assertEqual(zeta * zeta, tower[j - 2])
                self.assertEqual(zeta ** (2 ** (j - 1)), -ctx.one)
                self.assertEqual(element_order_two_power(zeta), 2 ** j)

    def test_unavailable(self):
        ctx = fq_make(7, 1)
        with self.assertRaises(UnavailableError):
            root_of_unity_tower(ctx, 2)
