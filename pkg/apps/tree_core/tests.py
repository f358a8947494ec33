"""
Tests para el álgebra de automorfismos del árbol
"""
import random
import time
from itertools import product

from django.test import SimpleTestCase

from apps.core.exceptions import DomainError

from .automorphism import (
    CACHE_MAX_DEPTH,
    ONE,
    NodeAddress,
    TreeAutomorphism,
    _cached_level_images,
    _cached_node_map,
    apply,
    compose,
    identity,
    invert,
    level_permutation,
    node_count,
    order,
    pack_parities,
    power,
    random_automorphism,
    restrict,
    root_transposition,
    sgn,
    unpack_parities,
    wreath,
)
from .serializers import TreeAutomorphismSerializer


def all_words(level):
    return [NodeAddress(level, path) for path in range(1 << level)]


def all_elements(n):
    return [TreeAutomorphism(n, bits) for bits in range(1 << node_count(n))]


class NodeAddressTest(SimpleTestCase):
    """Tests de la codificación de palabras"""

    def test_word_round_trip(self):
        node = NodeAddress.from_word('abba')
        self.assertEqual(node.level, 4)
        self.assertEqual(node.path, 0b0110)
        self.assertEqual(node.word, 'abba')

    def test_child_and_parent(self):
        node = NodeAddress.from_word('ab')
        self.assertEqual(node.child(1).word, 'abb')
        self.assertEqual(node.child(0).parent(), node)
        with self.assertRaises(DomainError):
            NodeAddress.root().parent()

    def test_flat_id(self):
        self.assertEqual(NodeAddress.root().flat_id, 0)
        self.assertEqual(NodeAddress.from_word('b').flat_id, 2)
        for flat_id in range(31):
            self.assertEqual(NodeAddress.from_flat_id(flat_id).flat_id, flat_id)

    def test_child_map_is_injective(self):
        children = {node.child(s) for node in all_words(4) for s in (0, 1)}
        self.assertEqual(len(children), 32)

    def test_invalid_path(self):
        with self.assertRaises(DomainError):
            NodeAddress(2, 4)
        with self.assertRaises(DomainError):
            NodeAddress.from_word('abc')


class ApplyTest(SimpleTestCase):
    """Tests de la acción sobre palabras"""

    def test_identity(self):
        self.assertEqual(apply(identity(3), NodeAddress.from_word('ab')).word, 'ab')

    def test_root_transposition_flips_first_symbol(self):
        self.assertEqual(apply(root_transposition(3), NodeAddress.from_word('ab')).word, 'bb')

    def test_bijection_on_each_level(self):
        sigma = random_automorphism(4, seed=7)
        for level in range(5):
            images = {apply(sigma, w) for w in all_words(level)}
            self.assertEqual(len(images), 1 << level)

    def test_level_too_deep(self):
        with self.assertRaises(DomainError):
            apply(identity(2), NodeAddress.from_word('aaa'))

    def test_level_permutation_matches_apply(self):
        sigma = random_automorphism(4, seed=11)
        table = level_permutation(sigma, 4)
        for w in all_words(4):
            self.assertEqual(table[w.path], apply(sigma, w).path)


class GroupLawTest(SimpleTestCase):
    """Axiomas de grupo: exhaustivo en n ≤ 3, muestreado en n = 8"""

    def test_compose_identity_and_involution(self):
        tau = random_automorphism(3, seed=1)
        self.assertEqual(compose(identity(3), tau), tau)
        t = root_transposition(3)
        self.assertTrue(compose(t, t).is_identity())

    def test_compose_matches_permutation_composition_n3(self):
        elements = all_elements(3)
        leaves = {sigma: level_permutation(sigma, 3) for sigma in elements}
        for sigma, tau in product(elements, repeat=2):
            composed = leaves[compose(sigma, tau)]
            expected = tuple(leaves[sigma][leaves[tau][x]] for x in range(8))
            self.assertEqual(composed, expected)

    def test_exhaustive_axioms_n3(self):
        elements = all_elements(3)
        index = {sigma: i for i, sigma in enumerate(elements)}
        table = [[index[compose(s, t)] for t in elements] for s in elements]
        size = len(elements)
        for a in range(size):
            self.assertEqual(table[a][0], a)
            self.assertEqual(table[0][a], a)
            self.assertEqual(table[a][index[invert(elements[a])]], 0)
        failures = 0
        for a in range(size):
            row_a = table[a]
            for b in range(size):
                row_ab = table[row_a[b]]
                row_b = table[b]
                failures += sum(1 for c in range(size) if row_ab[c] != row_a[row_b[c]])
        self.assertEqual(failures, 0)

    def test_random_triples_n8(self):
        rng = random.Random(2024)
        for _ in range(2000):
            s, t, u = (random_automorphism(8, rng.getrandbits(32)) for _ in range(3))
            self.assertEqual(compose(compose(s, t), u), compose(s, compose(t, u)))
            self.assertTrue(compose(s, invert(s)).is_identity())

    def test_depth_mismatch(self):
        with self.assertRaises(DomainError):
            compose(identity(2), identity(3))

    def test_action_compatibility_n4(self):
        rng = random.Random(5)
        for _ in range(64):
            s = random_automorphism(4, rng.getrandbits(32))
            t = random_automorphism(4, rng.getrandbits(32))
            st = compose(s, t)
            for level in range(5):
                for w in all_words(level):
                    self.assertEqual(apply(st, w), apply(s, apply(t, w)))

    def test_sign_relation_n4(self):
        rng = random.Random(6)
        for _ in range(64):
            s = random_automorphism(4, rng.getrandbits(32))
            t = random_automorphism(4, rng.getrandbits(32))
            st = compose(s, t)
            for level in range(4):
                for x in all_words(level):
                    self.assertEqual(sgn(st, x), sgn(s, apply(t, x)) * sgn(t, x))


class InvertTest(SimpleTestCase):

    def test_identity_inverse(self):
        self.assertEqual(invert(identity(4)), identity(4))

    def test_level_involutions_are_self_inverse(self):
        for level in range(4):
            mask = sum(1 << ((1 << level) - 1 + p) for p in range(1 << level))
            sigma = TreeAutomorphism(4, mask)
            self.assertEqual(invert(sigma), sigma)

    def test_exhaustive_inverse_n4(self):
        for sigma in all_elements(4):
            self.assertTrue(compose(sigma, invert(sigma)).is_identity())


class RestrictTest(SimpleTestCase):

    def test_trivial_cases(self):
        sigma = random_automorphism(4, seed=3)
        self.assertEqual(restrict(sigma, 4), sigma)
        self.assertEqual(restrict(identity(4), 2), identity(2))

    def test_homomorphism_n3(self):
        elements = all_elements(3)
        for sigma, tau in product(elements, repeat=2):
            for m in (1, 2):
                self.assertEqual(
                    restrict(compose(sigma, tau), m),
                    compose(restrict(sigma, m), restrict(tau, m)),
                )

    def test_homomorphism_sampled_n4(self):
        rng = random.Random(8)
        for _ in range(2000):
            s = random_automorphism(4, rng.getrandbits(32))
            t = random_automorphism(4, rng.getrandbits(32))
            for m in range(1, 5):
                self.assertEqual(restrict(compose(s, t), m), compose(restrict(s, m), restrict(t, m)))

    def test_out_of_range(self):
        with self.assertRaises(DomainError):
            restrict(identity(3), 0)
        with self.assertRaises(DomainError):
            restrict(identity(3), 4)


class RandomAutomorphismTest(SimpleTestCase):

    def test_reproducible(self):
        self.assertEqual(random_automorphism(6, 99), random_automorphism(6, 99))

    def test_depth_one(self):
        self.assertIn(random_automorphism(1, 5).bits, (0, 1))

    def test_root_bit_frequency(self):
        hits = sum(random_automorphism(5, seed).bits & 1 for seed in range(10 ** 4))
        self.assertLess(abs(hits / 10 ** 4 - 0.5), 0.02)


class PowerOrderWreathTest(SimpleTestCase):

    def test_order_is_power_of_two(self):
        rng = random.Random(12)
        for _ in range(50):
            sigma = random_automorphism(5, rng.getrandbits(32))
            k = order(sigma)
            self.assertEqual(k & (k - 1), 0)
            self.assertTrue(power(sigma, k).is_identity())
            if k > 1:
                self.assertFalse(power(sigma, k // 2).is_identity())

    def test_negative_power(self):
        sigma = random_automorphism(4, seed=21)
        self.assertEqual(power(sigma, -1), invert(sigma))

    def test_wreath_root_swap(self):
        sigma = wreath(identity(2), identity(2), 1)
        self.assertEqual(sigma, root_transposition(3))

    def test_wreath_places_parities(self):
        sa = random_automorphism(3, seed=31)
        sb = random_automorphism(3, seed=32)
        plain = wreath(sa, sb, 0)
        for level in range(3):
            for w in all_words(level):
                self.assertEqual(plain.parity(NodeAddress.from_word('a' + w.word)), sa.parity(w))
                self.assertEqual(plain.parity(NodeAddress.from_word('b' + w.word)), sb.parity(w))
        swapped = wreath(sa, sb, 1)
        self.assertEqual(swapped, compose(plain, root_transposition(4)))


class SerializationTest(SimpleTestCase):

    def test_hex_round_trip(self):
        sigma = random_automorphism(5, seed=4)
        self.assertEqual(TreeAutomorphism.from_hex(sigma.to_hex()), sigma)
        self.assertTrue(sigma.to_hex().startswith('05'))

    def test_serializer_payload(self):
        sigma = root_transposition(2)
        data = TreeAutomorphismSerializer(sigma).data
        self.assertEqual(data['depth'], 2)
        self.assertEqual(data['hex'], '0201')
        self.assertEqual(data['set_bits'], 1)

    def test_serializer_rejects_mismatched_depth(self):
        serializer = TreeAutomorphismSerializer(data={'depth': 3, 'hex': '0201'})
        self.assertFalse(serializer.is_valid())


class DeepTreeTest(SimpleTestCase):
    """Composición e inversión a profundidades grandes"""

    def setUp(self):
        _cached_level_images.cache_clear()
        _cached_node_map.cache_clear()

    def test_parity_buffer(self):
        sigma = random_automorphism(6, seed=8)
        flags = unpack_parities(sigma.bits, 6)
        self.assertEqual(len(flags), node_count(6))
        for flat_id in range(node_count(6)):
            expected = sigma.parity(NodeAddress.from_flat_id(flat_id))
            self.assertEqual(flags[flat_id] == ONE, bool(expected))
        self.assertEqual(pack_parities(flags), sigma.bits)
        self.assertEqual(pack_parities(bytearray()), 0)

    def test_compose_matches_apply_n16(self):
        sigma = random_automorphism(16, seed=161)
        tau = random_automorphism(16, seed=162)
        product_ = compose(sigma, tau)
        rng = random.Random(16)
        for _ in range(200):
            w = NodeAddress(16, rng.getrandbits(16))
            self.assertEqual(apply(product_, w), apply(sigma, apply(tau, w)))

    def test_invert_n16(self):
        sigma = random_automorphism(16, seed=163)
        self.assertTrue(compose(sigma, invert(sigma)).is_identity())
        self.assertTrue(compose(invert(sigma), sigma).is_identity())

    def test_wreath_n15(self):
        sa = random_automorphism(14, seed=1)
        sb = random_automorphism(14, seed=2)
        sigma = wreath(sa, sb, 1)
        self.assertEqual(restrict(sigma, 1), root_transposition(1))
        self.assertEqual(sigma.parity(NodeAddress.from_word('a' + 'b' * 13)),
                         sb.parity(NodeAddress.from_word('b' * 13)))

    def test_deep_tables_are_not_cached(self):
        sigma = random_automorphism(CACHE_MAX_DEPTH + 4, seed=5)
        tau = random_automorphism(CACHE_MAX_DEPTH + 4, seed=6)
        compose(sigma, tau)
        invert(sigma)
        self.assertEqual(_cached_level_images.cache_info().currsize, 0)
        self.assertEqual(_cached_node_map.cache_info().currsize, 0)

        compose(root_transposition(4), root_transposition(4))
        self.assertEqual(_cached_node_map.cache_info().currsize, 1)

    def test_compose_n20_is_linear(self):
        sigma = random_automorphism(20, seed=201)
        tau = random_automorphism(20, seed=202)
        start = time.perf_counter()
        product_ = compose(sigma, tau)
        inverse = invert(product_)
        elapsed = time.perf_counter() - start
        self.assertLess(elapsed, 20)
        self.assertEqual(restrict(inverse, 3), invert(restrict(product_, 3)))
