"""
Tests de clases de cuadrados y de las condiciones de independencia
"""
import random
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from apps.core.exceptions import (
    DomainError,
    ForwardOrbitError,
    UnfactoredError,
    UnsupportedError,
)

from .conditions import (
    SquareClass,
    check_aut_tn,
    check_condition_one,
    disc_sequence,
    discriminant_class_matches,
    gf2_rank,
    is_rational_square,
    rational_exact_period,
    square_class,
    subset_product_oracle,
)
from .serializers import VerdictSerializer


class SquareClassTest(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(square_class(12), SquareClass(False, frozenset({3})))
        self.assertEqual(square_class('-5/9'), SquareClass(True, frozenset({5})))
        self.assertTrue(square_class(4).is_trivial())
        self.assertEqual(str(square_class(Fraction(-5, 9))), '{-1, 5}')

    def test_product_is_class_of_product(self):
        self.assertEqual(square_class(6) * square_class(-10), square_class(-60))

    def test_zero(self):
        with self.assertRaises(DomainError):
            square_class(0)
        with self.assertRaises(DomainError):
            square_class('1/0')

    def test_large_prime_cofactor(self):
        self.assertEqual(square_class(103 * 1000003).primes, frozenset({103, 1000003}))

    @override_settings(ARBOR_TRIAL_DIVISION_LIMIT=100)
    def test_unfactored(self):
        with self.assertRaises(UnfactoredError):
            square_class(103 * 1000003)

    def test_two_primes_above_limit_are_rejected(self):
        # factores cercanos que factorint encontraría por otra vía
        for n in (1000003 * 1000033, 1000003 * (10 ** 9 + 7), 1000003 ** 2):
            with self.assertRaises(UnfactoredError):
                square_class(n)
        self.assertEqual(square_class(Fraction(7, 1000003)).primes, frozenset({7, 1000003}))

    def test_rational_square(self):
        self.assertTrue(is_rational_square(Fraction(9, 4)))
        self.assertFalse(is_rational_square(-4))
        self.assertFalse(is_rational_square(Fraction(2, 9)))


class Gf2RankTest(SimpleTestCase):

    def test_independent(self):
        self.assertEqual(gf2_rank([0b001, 0b010, 0b100]), (3, []))

    def test_dependencies(self):
        rank, dependencies = gf2_rank([0b011, 0b110, 0b101, 0])
        self.assertEqual(rank, 2)
        self.assertIn(0b1000, dependencies)
        for mask in dependencies:
            total = 0
            for i, row in enumerate([0b011, 0b110, 0b101, 0]):
                if (mask >> i) & 1:
                    total ^= row
            self.assertEqual(total, 0)


class DiscSequenceTest(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(disc_sequence(-1, 5, 2), [6, -5])
        self.assertEqual(disc_sequence(0, 3, 1), [3])
        self.assertEqual(disc_sequence(-1, 3, 2), [4, -3])

    def test_forward_orbit(self):
        with self.assertRaises(ForwardOrbitError):
            disc_sequence(-1, 0, 2)
        with self.assertRaises(ForwardOrbitError):
            disc_sequence(-1, -1, 1)

    def test_rational_period(self):
        self.assertEqual(rational_exact_period(0), 1)
        self.assertEqual(rational_exact_period(-1), 2)
        self.assertIsNone(rational_exact_period(-2))
        self.assertIsNone(rational_exact_period('1/4'))


class ConditionOneTest(SimpleTestCase):

    def test_holds(self):
        verdict = check_condition_one(-1, 5, 2)
        self.assertTrue(verdict.condition)
        self.assertEqual(verdict.rank, 4)
        self.assertEqual(verdict.dependencies, ())

    def test_d1_square(self):
        verdict = check_condition_one(-1, 3, 2)
        self.assertFalse(verdict.condition)
        self.assertEqual(verdict.dependencies, ((2,),))
        self.assertEqual(verdict.labels[2], 'D1')

    def test_collides_with_two(self):
        verdict = check_condition_one(0, 2, 1)
        self.assertFalse(verdict.condition)
        self.assertEqual(verdict.dependencies, ((1, 2),))

    def test_scope(self):
        with self.assertRaises(UnsupportedError):
            check_condition_one(0, 2, 3)
        with self.assertRaises(DomainError):
            check_condition_one(0, 2, 2)

    def test_serializer(self):
        data = VerdictSerializer(check_condition_one(-1, 3, 2)).data
        self.assertEqual(data['condition'], False)
        self.assertEqual(data['rank'], 3)
        self.assertEqual(data['dependencies'], [[2]])
        self.assertEqual(data['certificates'], [['D1']])
        self.assertEqual(data['values'], ['-1', '2', '4', '-3'])


class AutTnTest(SimpleTestCase):

    def test_examples(self):
        self.assertTrue(check_aut_tn(-1, 5, 2).condition)
        self.assertFalse(check_aut_tn(-1, 3, 1).condition)
        self.assertTrue(check_aut_tn(0, -1, 1).condition)
        self.assertTrue(check_aut_tn(-1, 5, 2).oracle_agrees)

    def test_periodic_repetition(self):
        # con c = 0, D_i = -x0 para todo i ≥ 2
        verdict = check_aut_tn(0, 3, 3)
        self.assertFalse(verdict.condition)
        self.assertIn((1, 2), verdict.dependencies)

    def test_rank_matches_oracle(self):
        rng = random.Random(17)
        checked = 0
        while checked < 200:
            c = rng.choice([Fraction(0), Fraction(-1), Fraction(rng.randint(-9, 9), rng.randint(1, 9))])
            n = rng.randint(1, 8) if c in (0, -1) else rng.randint(1, 3)
            x0 = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
            try:
                verdict = check_aut_tn(c, x0, n)
            except ForwardOrbitError:
                continue
            self.assertTrue(verdict.oracle_agrees, (c, x0, n))
            self.assertEqual(verdict.condition, subset_product_oracle(list(verdict.values)))
            checked += 1

    def test_monotone(self):
        for c in (0, -1):
            for x0 in range(-6, 12):
                try:
                    verdicts = [check_aut_tn(c, x0, n).condition for n in range(1, 6)]
                except ForwardOrbitError:
                    continue
                for earlier, later in zip(verdicts, verdicts[1:]):
                    self.assertFalse(later and not earlier, (c, x0))


class DiscriminantOracleTest(SimpleTestCase):

    def test_basilica(self):
        for i in range(1, 7):
            self.assertTrue(discriminant_class_matches(-1, 5, i), i)

    def test_integer_parameters_to_depth_six(self):
        for c, x0 in ((0, 3), (-2, 5), (1, -4)):
            for i in range(1, 7):
                try:
                    self.assertTrue(discriminant_class_matches(c, x0, i), (c, x0, i))
                except ForwardOrbitError:
                    break

    def test_random_rationals(self):
        rng = random.Random(23)
        for _ in range(5):
            c = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
            x0 = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
            for i in (1, 2, 3):
                try:
                    self.assertTrue(discriminant_class_matches(c, x0, i), (c, x0, i))
                except ForwardOrbitError:
                    break

    def test_range(self):
        with self.assertRaises(DomainError):
            discriminant_class_matches(-1, 5, 0)
