from apps.verification.cli import ArborCommand
from apps.verification.suites import PROFILES, run_suites


class Command(ArborCommand):
    help = 'Corre todas las suites de aceptación (perfil quick o full)'
    subcommand = 'verify_all'
    default_format = 'json'

    def add_command_arguments(self, parser):
        parser.add_argument('--profile', choices=sorted(PROFILES), default='quick')
        parser.add_argument('--mutate', action='store_true',
                            help='Control negativo: reemplaza α_1 por la transposición de la raíz')

    def run(self, **options):
        passed, report = run_suites(options['profile'], seed=self.seed(options), mutate=options['mutate'])
        return report, passed
