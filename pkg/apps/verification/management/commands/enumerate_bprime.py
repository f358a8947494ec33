from apps.pink_subgroup.closure import cyclotomic_image, enumerate_b_prime
from apps.pink_subgroup.orders import log2_order_pink
from apps.verification.cli import ArborCommand, require


class Command(ArborCommand):
    help = "Enumeración exhaustiva de B'_{r,n} y de la imagen de P_r sobre M'_{r,n}"
    subcommand = 'enumerate_bprime'

    def add_command_arguments(self, parser):
        parser.add_argument('--r', type=int)
        parser.add_argument('--n', type=int)
        parser.add_argument('--list', action='store_true', help='Incluye cada elemento en hex')

    def run(self, **options):
        r, n = require(options, 'r', 'n')
        group = enumerate_b_prime(r, n)
        image = cyclotomic_image(r, n)
        expected = 1 << log2_order_pink(r, n)
        payload = {
            'r': r,
            'n': n,
            'order': group.order,
            'expected_order': expected,
            'image': image,
        }
        if options['list']:
            payload['elements'] = [sigma.to_hex() for sigma in group.elements]
        passed = group.order == expected and image['kernel_matches'] and image['index_law']
        return payload, passed
