from apps.pink_subgroup.closure import closure, closure_order, enum_cap, enumerate_b_prime
from apps.pink_subgroup.generators import pink_generators
from apps.pink_subgroup.orders import log2_order_pink
from apps.verification.cli import ArborCommand, require


class Command(ArborCommand):
    help = "Orden de ⟨α_1, ..., α_r⟩ en Aut(T_n) por BFS, contra la fórmula y B'_{r,n}"
    subcommand = 'pink_closure'

    def add_command_arguments(self, parser):
        parser.add_argument('--r', type=int)
        parser.add_argument('--n', type=int)
        parser.add_argument('--cap', type=int, default=None,
                            help='Máximo de elementos de la cerradura (por defecto ARBOR_CLOSURE_CAP)')

    def run(self, **options):
        r, n = require(options, 'r', 'n')
        gens = pink_generators(r, n)
        formula = log2_order_pink(r, n)
        payload = {
            'r': r,
            'n': n,
            'generators_in_b_prime': gens.all_in_b_prime(),
            'log2_formula': formula,
        }
        if n <= enum_cap():
            group = closure(gens, cap=options['cap'])
            payload['closure_order'] = group.order
            payload['equals_b_prime'] = group.keys == enumerate_b_prime(r, n).keys
        else:
            payload['closure_order'] = closure_order(gens, cap=options['cap'])
            payload['equals_b_prime'] = None
        payload['match'] = payload['closure_order'] == 1 << formula
        passed = payload['match'] and payload['generators_in_b_prime'] and payload['equals_b_prime'] is not False
        return payload, passed
