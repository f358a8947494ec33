from apps.pink_subgroup.orders import emit_orders_table, orders_table
from apps.verification.cli import ArborCommand, parse_range


class Command(ArborCommand):
    help = 'Tabla de log₂|G_{r,n}| por fórmula, con BFS y enumeración de B\' donde caben'
    subcommand = 'orders'

    def add_command_arguments(self, parser):
        parser.add_argument('--r', default='1-3', help="Rango de r, p.ej. '1-4' o '2'")
        parser.add_argument('--n', default='1-4', help="Rango de n, p.ej. '1-4'")
        parser.add_argument('--cap', type=int, default=16,
                            help='BFS solo si log₂ del orden ≤ cap')
        parser.add_argument('--no-enumeration', action='store_true',
                            help="No enumera B'_{r,n}")

    def run(self, **options):
        frame = orders_table(
            parse_range(options['r']),
            parse_range(options['n']),
            bfs_log2_cap=options['cap'],
            with_enumeration=not options['no_enumeration'],
        )
        return frame, bool(frame['match_flag'].all())

    def render(self, payload, fmt):
        if fmt == 'csv':
            return emit_orders_table(payload)
        return super().render(payload, fmt)
