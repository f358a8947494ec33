"""
Tests de los comandos de gestión, las suites y el ledger
"""
import json
from io import StringIO
from unittest import mock

import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from apps.core.exceptions import DomainError

from .cli import parse_range
from .models import VerificationRun
from .suites import (
    PROFILES,
    suite_generators,
    suite_negative_controls,
    suite_pink_closure,
    suite_root_residue,
    suite_square_classes,
    tampered_generators,
)


def run_command(name, **options):
    out = StringIO()
    call_command(name, stdout=out, **options)
    return out.getvalue()


class ParseRangeTest(SimpleTestCase):

    def test_forms(self):
        self.assertEqual(parse_range('1-4'), [1, 2, 3, 4])
        self.assertEqual(parse_range('2,5'), [2, 5])
        self.assertEqual(parse_range('3'), [3])
        self.assertEqual(parse_range(''), [])

    def test_invalid(self):
        with self.assertRaises(DomainError):
            parse_range('a-b')


class OrdersCommandTest(SimpleTestCase):

    def test_basilica_orders(self):
        output = run_command('orders', r='2', n='1-4', format='csv')
        frame = pd.read_csv(StringIO(output))
        self.assertEqual(list(frame['log2_formula']), [1, 3, 6, 12])
        self.assertTrue(frame['match_flag'].all())
        self.assertEqual(list(frame['bfs_order']), [2, 8, 64, 4096])

    def test_period_one(self):
        rows = json.loads(run_command('orders', r='1', n='1-4', format='json', no_enumeration=True))
        self.assertEqual([row['log2_formula'] for row in rows], [1, 2, 3, 4])
        self.assertTrue(all(row['bprime_count'] is None for row in rows))

    def test_empty_range(self):
        self.assertEqual(json.loads(run_command('orders', r='1', n='', format='json')), [])
        self.assertIn('(tabla vacía)', run_command('orders', r='', n='1-2'))


class FrobeniusCommandTest(SimpleTestCase):

    def test_passes(self):
        for p, r, n in ((7, 2, 4), (5, 1, 3)):
            report = json.loads(run_command('frobenius_verify', p=p, r=r, n=n, format='json', seed=1))
            self.assertTrue(report['passed'], report['failures'])

    def test_byte_identical(self):
        first = run_command('frobenius_verify', p=11, r=2, n=4, format='json', seed=5)
        second = run_command('frobenius_verify', p=11, r=2, n=4, format='json', seed=5)
        self.assertEqual(first, second)

    def test_x0_in_orbit(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('frobenius_verify', p=7, r=2, n=3, c=6, x0=6)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_parameter(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('frobenius_verify', p=7, r=2)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_label_tree(self):
        payload = json.loads(run_command('label_tree', p=5, r=2, n=3, c=4, x0=2, seed=11))
        self.assertEqual(len(payload['nodes']), 15)
        self.assertTrue(payload['checks']['perprod'])


class GroupCommandsTest(SimpleTestCase):

    def test_membership_of_generator(self):
        payload = json.loads(run_command('membership', r=2, n=4, alpha=1, format='json'))
        self.assertTrue(payload['in_b_prime'])
        self.assertEqual(payload['root_residue'], {'value': 1, 'exp': 2})
        self.assertEqual(len(payload['residues']), 15)

    def test_membership_of_root_transposition(self):
        payload = json.loads(run_command('membership', r=1, hex='0301', format='json'))
        self.assertFalse(payload['in_b_prime'])

    def test_pink_closure(self):
        payload = json.loads(run_command('pink_closure', r=2, n=3, format='json'))
        self.assertEqual(payload['closure_order'], 64)
        self.assertTrue(payload['equals_b_prime'])

    def test_enumerate_bprime(self):
        payload = json.loads(run_command('enumerate_bprime', r=1, n=3, format='json', list=True))
        self.assertEqual(payload['order'], 8)
        self.assertEqual(len(payload['elements']), 8)
        self.assertTrue(payload['image']['index_law'])


class ConditionCommandTest(SimpleTestCase):

    def test_basilica(self):
        payload = json.loads(run_command('condition_check', c='-1', x0='5', r=2, n=2))
        self.assertTrue(payload['condition_one']['condition'])
        self.assertTrue(payload['aut_tn']['condition'])

    def test_certificate(self):
        payload = json.loads(run_command('condition_check', c='-1', x0='3', r=2))
        self.assertFalse(payload['condition_one']['condition'])
        self.assertEqual(payload['condition_one']['certificates'], [['D1']])

    def test_discriminant(self):
        payload = json.loads(run_command('condition_check', c='1/3', x0='2', n=3, discriminant=True))
        self.assertEqual(payload['discriminant_matches'], {'1': True, '2': True, '3': True})

    def test_unsupported(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('condition_check', c='-1', x0='5', r=3)
        self.assertEqual(ctx.exception.returncode, 2)


class SuitesTest(SimpleTestCase):

    def test_generators(self):
        self.assertTrue(suite_generators(n=8, r_max=4).passed)

    def test_pink_closure_detects_tampering(self):
        self.assertTrue(suite_pink_closure().passed)
        result = suite_pink_closure(generators=tampered_generators)
        self.assertFalse(result.passed)

    def test_root_residue_reaches_depth_eight(self):
        result = suite_root_residue(pairs=50, deep_pairs=160, frobenius_depth=5)
        self.assertTrue(result.passed, result.failures)

    def test_square_classes_discriminants_to_depth_six(self):
        self.assertTrue(all(sizes['discriminant_depth'] >= 6 for sizes in PROFILES.values()))
        result = suite_square_classes(instances=20, discriminant_depth=6)
        self.assertTrue(result.passed, result.failures)

    def test_negative_controls(self):
        result = suite_negative_controls(seed=3)
        self.assertTrue(result.passed, result.failures)
        self.assertEqual(result.checks, 2)

    def test_verify_all_exit_code(self):
        failing = (False, {'passed': False, 'suites': []})
        with mock.patch('apps.verification.management.commands.verify_all.run_suites', return_value=failing):
            with self.assertRaises(CommandError) as ctx:
                run_command('verify_all', mutate=True)
        self.assertEqual(ctx.exception.returncode, 1)

    def test_unknown_profile(self):
        with self.assertRaises(CommandError):
            call_command('verify_all', '--profile', 'slow', stdout=StringIO())


class LedgerTest(TestCase):

    def test_record(self):
        run_command('pink_closure', r=1, n=3, format='json', record=True)
        run = VerificationRun.objects.get()
        self.assertEqual(run.subcommand, 'pink_closure')
        self.assertTrue(run.passed)
        self.assertEqual(run.report['closure_order'], 8)
        self.assertEqual(run.parameters['r'], 1)
