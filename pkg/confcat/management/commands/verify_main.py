"""
Django management command comparing the bounded conservatization of the
pre-tensor product with the configuration category of the product.
"""

from ._verification import VerificationCommand

EXAMPLES = """
Examples:
  %(prog)s --m=1 --n=1                            # Degrees 0..MAX_DEGREE, default L range
  %(prog)s --m=2 --n=1 --max-degree=2             # Larger product, more degrees
  %(prog)s --m=2 --n=2 --max-degree=0 --format=machine --out=report.json
  %(prog)s --m=1 --n=1 --mutate=delete_morphism   # Negative control: must not PASS
"""


class Command(VerificationCommand):
    help = """
    Verify that Lambda-flat of config(M) box_pre config(N) compares to
    config(M x N) degree by degree.

    Workflow:
        1. Build the configuration categories of M and N and their nerves over N(Fin)
        2. Run the Segal, fiberwise complete and conservative checkers on both
           inputs and on their pre-tensor product W
        3. Check the comparison functor from the category of triples to config(M x N)
        4. For each degree r, scan Lambda-flat W over the L range and compare the
           final stage with config(M x N)_r: pi0 bijection, acyclic components,
           stable scan; in degree 0 also the injection count law

    Exit Codes:
        0: PASS
        1: FAIL
        2: INCONCLUSIVE (e.g. the stabilization scan did not settle)
        3: Usage error or insufficient bounds
    """

    command_name = "verify_main"
    examples = EXAMPLES
