import pandas as pd

from apps.core.workers import run_parallel
from apps.frobenius_lab.frobenius import run_frobenius_lab, run_sweep_item, sweep_configurations
from apps.verification.cli import ArborCommand, require


class Command(ArborCommand):
    help = 'Construye el árbol sobre F_{p^k}, lo etiqueta y verifica σ_p ∈ M\' con P_r ≡ p'
    subcommand = 'frobenius_verify'

    def add_command_arguments(self, parser):
        parser.add_argument('--p', type=int)
        parser.add_argument('--r', type=int)
        parser.add_argument('--n', type=int)
        parser.add_argument('--c', type=int, default=None, help='Parámetro c (por defecto el primero de período r)')
        parser.add_argument('--x0', type=int, default=None, help='Raíz del árbol (por defecto la menor válida)')
        parser.add_argument('--sweep', type=int, default=0,
                            help='Corre N configuraciones deterministas en lugar de una')

    def run(self, **options):
        seed = self.seed(options)
        if options['sweep']:
            configs = sweep_configurations(options['sweep'], seed=seed)
            reports = run_parallel(run_sweep_item, configs)
            frame = pd.DataFrame([
                {'p': report['p'], 'r': report['r'], 'n': report['n'], 'c': report['c'],
                 'x0': report['x0'], 'k': report['k'], 'passed': report['passed']}
                for report in reports
            ])
            return frame, bool(frame['passed'].all())
        p, r, n = require(options, 'p', 'r', 'n')
        report = run_frobenius_lab(p, r, n, x0=options['x0'], c=options['c'], seed=seed)
        return report, report['passed']
