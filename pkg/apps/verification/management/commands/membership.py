from apps.core.exceptions import DomainError
from apps.parity_functionals.functionals import in_b_prime, in_m_prime, p_r_root, p_r_trunc
from apps.parity_functionals.serializers import TruncatedResidueSerializer
from apps.pink_subgroup.generators import alpha_generator
from apps.tree_core.automorphism import NodeAddress, TreeAutomorphism, random_automorphism
from apps.tree_core.serializers import TreeAutomorphismSerializer
from apps.verification.cli import ArborCommand, require


class Command(ArborCommand):
    help = "Pertenencia de σ a B'_{r,n} y M'_{r,n}, con P_r en cada nodo"
    subcommand = 'membership'

    def add_command_arguments(self, parser):
        parser.add_argument('--r', type=int)
        parser.add_argument('--n', type=int)
        source = parser.add_mutually_exclusive_group()
        source.add_argument('--hex', help='σ en forma hex (byte de profundidad + paridades)')
        source.add_argument('--alpha', type=int, help='Usa el generador α_i')

    def automorphism(self, options) -> TreeAutomorphism:
        if options.get('hex'):
            try:
                sigma = TreeAutomorphism.from_hex(options['hex'])
            except ValueError as exc:
                raise DomainError(f"hex inválido: {exc}")
            if options.get('n') not in (None, sigma.depth):
                raise DomainError(f"--n={options['n']} no coincide con la profundidad {sigma.depth}")
            return sigma
        (n,) = require(options, 'n')
        if options.get('alpha') is not None:
            return alpha_generator(options['alpha'], options['r'], n)
        return random_automorphism(n, self.seed(options))

    def run(self, **options):
        (r,) = require(options, 'r')
        sigma = self.automorphism(options)
        member = in_m_prime(sigma, r)
        residues = {}
        for level in range(sigma.depth):
            for path in range(1 << level):
                node = NodeAddress(level, path)
                residues[node.word] = dict(TruncatedResidueSerializer(p_r_trunc(sigma, node, r)).data)
        payload = {
            'r': r,
            'sigma': dict(TreeAutomorphismSerializer(sigma).data),
            'in_b_prime': in_b_prime(sigma, r),
            'in_m_prime': member,
            'root_residue': dict(TruncatedResidueSerializer(p_r_root(sigma, r)).data) if member else None,
            'residues': residues,
        }
        return payload, True
