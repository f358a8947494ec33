from apps.core.exceptions import DomainError
from apps.square_classes.conditions import (
    check_aut_tn,
    check_condition_one,
    discriminant_class_matches,
    to_rational,
)
from apps.square_classes.serializers import VerdictSerializer
from apps.verification.cli import ArborCommand, require


class Command(ArborCommand):
    help = 'Condición (1) y G_n ≅ Aut(T_n) sobre ℚ por independencia de clases de cuadrados'
    subcommand = 'condition_check'
    default_format = 'json'

    def add_command_arguments(self, parser):
        parser.add_argument('--c', help="Parámetro racional, p.ej. '-1'")
        parser.add_argument('--x0', help="Raíz racional, p.ej. '5' o '-5/9'")
        parser.add_argument('--r', type=int, default=None, help='Período de c (condición 1)')
        parser.add_argument('--n', type=int, default=None, help='Profundidad para G_n ≅ Aut(T_n)')
        parser.add_argument('--discriminant', action='store_true',
                            help='Compara la clase de Δ_i con la de D_i para i ≤ n')

    def run(self, **options):
        c, x0 = (to_rational(value) for value in require(options, 'c', 'x0'))
        if options['r'] is None and options['n'] is None:
            raise DomainError('Se requiere --r (condición 1) o --n (G_n ≅ Aut(T_n))')
        payload = {'c': str(c), 'x0': str(x0)}
        passed = True
        if options['r'] is not None:
            payload['condition_one'] = dict(VerdictSerializer(check_condition_one(c, x0, options['r'])).data)
        if options['n'] is not None:
            verdict = check_aut_tn(c, x0, options['n'])
            payload['aut_tn'] = dict(VerdictSerializer(verdict).data)
            passed = verdict.oracle_agrees is not False
            if options['discriminant']:
                matches = {
                    str(i): discriminant_class_matches(c, x0, i)
                    for i in range(1, min(options['n'], 6) + 1)
                }
                payload['discriminant_matches'] = matches
                passed = passed and all(matches.values())
        return payload, passed
