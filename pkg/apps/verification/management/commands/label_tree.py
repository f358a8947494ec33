from apps.frobenius_lab.frobenius import build_labeled_tree
from apps.frobenius_lab.labeling import verify_gamma_chain, verify_perprod
from apps.frobenius_lab.serializers import LabeledPreimageTreeSerializer
from apps.verification.cli import ArborCommand, require


class Command(ArborCommand):
    help = 'Imprime el árbol de preimágenes con su etiquetado canónico'
    subcommand = 'label_tree'
    default_format = 'json'

    def add_command_arguments(self, parser):
        parser.add_argument('--p', type=int)
        parser.add_argument('--r', type=int)
        parser.add_argument('--n', type=int)
        parser.add_argument('--c', type=int, default=None)
        parser.add_argument('--x0', type=int, default=None)

    def run(self, **options):
        p, r, n = require(options, 'p', 'r', 'n')
        tree = build_labeled_tree(p, r, n, x0=options['x0'], c=options['c'], seed=self.seed(options))
        perprod = verify_perprod(tree)
        gamma = verify_gamma_chain(tree)
        payload = dict(LabeledPreimageTreeSerializer(tree).data)
        payload['checks'] = {'perprod': perprod['passed'], 'gamma_chain': gamma['passed']}
        payload['note'] = perprod['note']
        return payload, perprod['passed'] and gamma['passed']
