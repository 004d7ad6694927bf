"""
Django management command checking that the pre-tensor product commutes with
truncation.
"""

from ._verification import VerificationCommand

EXAMPLES = """
Examples:
  %(prog)s --m=2 --n=2 --k=2
  %(prog)s --m=1 --n=1 --k=0 --format=machine
"""


class Command(VerificationCommand):
    help = """
    Verify that truncating box_pre at k equals box_pre of the truncations,
    that the right adjoint of truncation has the expected fibers, and that
    Lambda-flat of the truncation is the part of Lambda-flat over Fin up to k.

    Exit Codes:
        0: PASS
        1: FAIL
        3: Usage error (k outside 0..m*n, or --mutate given)
    """

    command_name = "verify_truncation"
    examples = EXAMPLES

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, required=True, help="Truncation bound")

    def command_params(self, options):
        return {"k": options["k"]}
