"""
Django management command for the homotopy-orbit version of the comparison.
"""

from ._verification import VerificationCommand

EXAMPLES = """
Examples:
  %(prog)s --m=2 --n=1 --group=M:1,0              # Swap the two points of M
  %(prog)s --m=1 --n=1                            # Trivial groups
  %(prog)s --m=2 --n=1 --group=M:1,0 --mutate=delete_morphism
"""


class Command(VerificationCommand):
    help = """
    Verify the comparison of orbit configuration categories.

    Groups are generated by --group options (M:perm or N:perm, 0-based image
    lists); a side without generators uses the trivial group.

    Workflow:
        1. Build the action categories of G on config(M) and H on config(N)
        2. Run the checkers (Segal required; completeness and conservativity
           are reported only, since orbit categories have non-identity
           morphisms over identities of Fin)
        3. Count the fibers of the orbit product over the group labels against
           the plain product
        4. For each degree r and each L, compare Lambda-flat of the orbit
           product with Lambda-flat of the action category of G x H on
           config(M x N) through the induced map

    Exit Codes:
        0: PASS
        1: FAIL
        2: INCONCLUSIVE
        3: Usage error or invalid group
    """

    command_name = "verify_orbit"
    examples = EXAMPLES
