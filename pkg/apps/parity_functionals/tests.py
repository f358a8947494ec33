"""
Tests para Q_r, P_r y los predicados B' / M'
"""
import random
from itertools import product

from django.test import SimpleTestCase

from apps.core.exceptions import ContractError, DomainError
from apps.pink_subgroup.generators import alpha_generator
from apps.tree_core.automorphism import (
    NodeAddress,
    TreeAutomorphism,
    compose,
    identity,
    node_count,
    random_automorphism,
    restrict,
    root_transposition,
)

from .functionals import (
    TruncatedResidue,
    e_bound,
    in_b_prime,
    in_m_prime,
    p_r_root,
    p_r_root_mod,
    p_r_trunc,
    q_r_trunc,
    residue_multiply,
    words_w,
)
from .serializers import TruncatedResidueSerializer


def all_nodes(n):
    return [NodeAddress(level, path) for level in range(n) for path in range(1 << level)]


def m_prime_members(n, r):
    elements = (TreeAutomorphism(n, bits) for bits in range(1 << node_count(n)))
    return [sigma for sigma in elements if in_m_prime(sigma, r)]


class EBoundTest(SimpleTestCase):

    def test_values(self):
        self.assertEqual(e_bound(4, 5, 3), 1)
        self.assertEqual(e_bound(0, 5, 2), 3)
        self.assertEqual(e_bound(0, 3, 3), 1)

    def test_out_of_range(self):
        with self.assertRaises(DomainError):
            e_bound(5, 5, 2)


class WordsTest(SimpleTestCase):

    def test_count(self):
        for r in range(1, 4):
            for i in range(1, 4):
                self.assertEqual(len(list(words_w(r, i))), 2 ** ((r - 1) * i))

    def test_every_rth_symbol_is_a(self):
        for path in words_w(3, 2):
            word = NodeAddress(5, path).word
            self.assertEqual(word[2], 'a')


class QRTest(SimpleTestCase):

    def test_identity_is_zero(self):
        self.assertEqual(q_r_trunc(identity(5), NodeAddress.root(), 2), 0)

    def test_single_bit(self):
        for r in (1, 2, 3):
            n = r + 1
            x = NodeAddress.from_word('a')
            for w in words_w(r, 1):
                node = x.extend(NodeAddress(r - 1, w))
                sigma = TreeAutomorphism(n, 1 << node.flat_id)
                self.assertEqual(q_r_trunc(sigma, x, r), 2)

    def test_always_even(self):
        rng = random.Random(3)
        for _ in range(200):
            sigma = random_automorphism(5, rng.getrandbits(32))
            for x in all_nodes(5):
                self.assertEqual(q_r_trunc(sigma, x, 2) % 2, 0)


class PRTest(SimpleTestCase):

    def test_identity(self):
        for x in all_nodes(5):
            residue = p_r_trunc(identity(5), x, 2)
            self.assertEqual(residue.value, 1)
            self.assertEqual(residue.exponent, e_bound(x.level, 5, 2))

    def test_alpha_generators_are_one(self):
        for r in range(1, 4):
            for i in range(1, r + 1):
                alpha = alpha_generator(i, r, 7)
                for x in all_nodes(7):
                    self.assertEqual(p_r_trunc(alpha, x, r).value, 1)

    def test_root_transposition_shallow(self):
        residue = p_r_trunc(root_transposition(2), NodeAddress.root(), 3)
        self.assertEqual(residue, TruncatedResidue(1, 1))


class MembershipTest(SimpleTestCase):

    def test_identity_member(self):
        self.assertTrue(in_b_prime(identity(4), 2))
        self.assertTrue(in_m_prime(identity(4), 2))

    def test_shallow_trees_are_full(self):
        for r in (3, 4):
            for bits in range(1 << node_count(3)):
                sigma = TreeAutomorphism(3, bits)
                self.assertTrue(in_b_prime(sigma, r))
                self.assertTrue(in_m_prime(sigma, r))

    def test_b_prime_inside_m_prime(self):
        rng = random.Random(9)
        for _ in range(2000):
            sigma = random_automorphism(4, rng.getrandbits(32))
            if in_b_prime(sigma, 1):
                self.assertTrue(in_m_prime(sigma, 1))

    def test_restriction_stability_n4(self):
        for r in (1, 2, 3):
            for bits in range(1 << node_count(4)):
                sigma = TreeAutomorphism(4, bits)
                if in_b_prime(sigma, r):
                    self.assertTrue(in_b_prime(restrict(sigma, 3), r))
                if in_m_prime(sigma, r):
                    self.assertTrue(in_m_prime(restrict(sigma, 3), r))


class RootResidueTest(SimpleTestCase):

    def test_identity(self):
        self.assertEqual(p_r_root(identity(5), 2), TruncatedResidue(1, 3))

    def test_contract_error_outside_m_prime(self):
        for bits in range(1 << node_count(4)):
            sigma = TreeAutomorphism(4, bits)
            if not in_m_prime(sigma, 1):
                with self.assertRaises(ContractError):
                    p_r_root(sigma, 1)
                break
        else:
            self.fail("Se esperaba algún σ fuera de M'")

    def test_homomorphism_exhaustive_n3(self):
        for r in (1, 2):
            members = m_prime_members(3, r)
            roots = {sigma: p_r_root(sigma, r) for sigma in members}
            for sigma, tau in product(members, repeat=2):
                self.assertEqual(
                    p_r_root(compose(sigma, tau), r),
                    residue_multiply(roots[sigma], roots[tau]),
                )

    def test_homomorphism_sampled_n4(self):
        rng = random.Random(17)
        for r in (1, 2, 3):
            members = m_prime_members(4, r)
            for _ in range(1500):
                sigma, tau = rng.choice(members), rng.choice(members)
                self.assertEqual(
                    p_r_root(compose(sigma, tau), r),
                    residue_multiply(p_r_root(sigma, r), p_r_root(tau, r)),
                )

    def test_kernel_is_b_prime_n4(self):
        for r in (1, 2):
            for bits in range(1 << node_count(4)):
                sigma = TreeAutomorphism(4, bits)
                in_kernel = in_m_prime(sigma, r) and p_r_root(sigma, r).value == 1
                self.assertEqual(in_kernel, in_b_prime(sigma, r))

    def test_truncated_root(self):
        residue = p_r_root_mod(identity(5), 1, 3)
        self.assertEqual(residue.exponent, 3)
        with self.assertRaises(DomainError):
            p_r_root_mod(identity(5), 1, 6)


class TruncatedResidueTest(SimpleTestCase):

    def test_rejects_even(self):
        with self.assertRaises(DomainError):
            TruncatedResidue(2, 3)

    def test_multiply_uses_smaller_exponent(self):
        product_ = residue_multiply(TruncatedResidue(3, 3), TruncatedResidue(3, 2))
        self.assertEqual(product_, TruncatedResidue(1, 2))

    def test_serializer(self):
        data = TruncatedResidueSerializer(TruncatedResidue(5, 3)).data
        self.assertEqual(dict(data), {'value': 5, 'exp': 3})
