"""
Django management command running the local-object checkers on a serialized
category over Fin.
"""

import json
from pathlib import Path

from confcat.exceptions import CategoryError

from ._verification import VerificationCommand

EXAMPLES = """
Examples:
  %(prog)s category.json                          # Segal, complete, conservative, property beta
  %(prog)s category.json --checker-cap=3 --format=machine
"""


class Command(VerificationCommand):
    help = """
    Run the Segal, fiberwise complete and conservative checkers and the
    property beta check on a category over Fin given as JSON: objects,
    morphisms with src/dst, ids, comp entries [g, f, h] meaning g after f is
    h, object sizes and a Fin image list per morphism.
    """

    command_name = "check_space"
    examples = EXAMPLES

    def add_arguments(self, parser):
        parser.add_argument("input", help="Path to the serialized category")
        super().add_arguments(parser)

    def command_params(self, options):
        return {"input": options["input"]}

    def load_input(self, options):
        try:
            return json.loads(Path(options["input"]).read_text())
        except (OSError, ValueError) as e:
            raise CategoryError(f"Cannot read {options['input']}: {e}") from e
