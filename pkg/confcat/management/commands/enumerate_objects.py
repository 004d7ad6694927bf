"""
Django management command dumping the oracle tables.
"""

from confcat.services import TABLES

from ._verification import VerificationCommand

EXAMPLES = """
Examples:
  %(prog)s selfic --k=3 --ell=2                   # 3 selfic maps
  %(prog)s boxfin --k=2                           # Boxfin objects with k, r, s <= 2
  %(prog)s config --m=2                           # 5 configurations of 2 points
  %(prog)s levels --m=1 --n=1 --format=machine
"""


class Command(VerificationCommand):
    help = """
    Enumerate selfic maps, Boxfin objects, configurations or level sizes of
    the pre-tensor product. The tables are the oracles behind the counting
    checks of the other commands.
    """

    command_name = "enumerate"
    examples = EXAMPLES

    def add_arguments(self, parser):
        parser.add_argument("what", choices=TABLES, help="Table to enumerate")
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, default=None, help="Domain size or k bound")
        parser.add_argument("--ell", type=int, default=None, help="Codomain size of selfic maps")
        parser.add_argument("--r-max", type=int, default=None, help="Boxfin r bound")
        parser.add_argument("--s-max", type=int, default=None, help="Boxfin s bound")

    def command_params(self, options):
        params = {"what": options["what"]}
        for key in ("k", "ell", "r_max", "s_max"):
            if options[key] is not None:
                params[key] = options[key]
        return params
