"""
Shared option handling for the verification commands.

Every command builds a RunConfig from its options, hands it to
VerificationService and renders the report. The process exit code is the
verdict: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 for usage errors.
"""

import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from confcat.defaults import get_confcat_setting
from confcat.exceptions import ConfcatError
from confcat.mutations import MUTATIONS
from confcat.services import USAGE_EXIT_CODE, RunConfig, VerificationReport, VerificationService

logger = logging.getLogger(__name__)


class VerificationCommand(BaseCommand):
    """Base class; subclasses set command_name and may add options and params."""

    command_name = ""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.service = VerificationService()
        self.exit_code = 0

    def create_parser(self, prog_name, subcommand, **kwargs):
        """Add usage examples to help output"""
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        examples = getattr(self, "examples", "")
        if examples:
            parser.epilog = examples % {"prog": f"{prog_name} {subcommand}"}
        return parser

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.exit_code:
            sys.exit(self.exit_code)

    def add_arguments(self, parser):
        parser.add_argument("--m", type=int, default=1, help="Number of points of M (default: 1)")
        parser.add_argument("--n", type=int, default=1, help="Number of points of N (default: 1)")
        parser.add_argument(
            "--group",
            action="append",
            default=[],
            metavar="SIDE:PERM",
            help=(
                "Permutation generator for M or N as a 0-based image list, "
                "e.g. M:1,0 for the swap of two points. Repeatable."
            ),
        )
        parser.add_argument(
            "--max-degree",
            type=int,
            default=None,
            help="Verify simplicial degrees 0..max-degree (default: MAX_DEGREE setting)",
        )
        parser.add_argument("--ell-min", type=int, default=None, help="Smallest L scanned")
        parser.add_argument(
            "--ell-max", type=int, default=None, help="Largest L scanned (default: r + ELL_SPAN)"
        )
        parser.add_argument(
            "--cap", type=int, default=None, help="Nerve cap (default: NERVE_CAP setting)"
        )
        parser.add_argument(
            "--probe-cap",
            type=int,
            default=None,
            help="Highest homology degree probed (default: PROBE_DEGREE setting)",
        )
        parser.add_argument(
            "--checker-cap",
            type=int,
            default=None,
            help="Degrees up to which the local-object checkers run (default: CHECKER_CAP)",
        )
        parser.add_argument("--out", default=None, help="Also write the machine report here")
        parser.add_argument(
            "--seed", type=int, default=None, help="Seed for --mutate (default: MUTATION_SEED)"
        )
        parser.add_argument(
            "--mutate",
            choices=sorted(MUTATIONS),
            default=None,
            help="Corrupt the input on purpose; the run must not PASS",
        )
        parser.add_argument(
            "--format",
            choices=["human", "machine"],
            default=None,
            help="Report format (default: REPORT_FORMAT setting)",
        )
        parser.add_argument(
            "--record",
            action="store_true",
            help="Store the run and its report as a VerificationRun",
        )
        parser.add_argument(
            "--verbose", action="store_true", help="Enable verbose output and debug logging"
        )

    def command_params(self, options) -> dict:
        return {}

    def build_config(self, options) -> RunConfig:
        overrides = {
            "max_degree": options["max_degree"],
            "cap": options["cap"],
            "probe": options["probe_cap"],
            "checker_cap": options["checker_cap"],
            "seed": options["seed"],
        }
        return RunConfig(
            command=self.command_name,
            m=options["m"],
            n=options["n"],
            groups=list(options["group"]),
            ell_min=options["ell_min"],
            ell_max=options["ell_max"],
            mutate=options["mutate"],
            out=options["out"],
            params=self.command_params(options),
            **{key: value for key, value in overrides.items() if value is not None},
        )

    def load_input(self, options) -> dict | None:
        return None

    def handle(self, *args, **options):
        if options["verbose"]:
            logging.getLogger("confcat").setLevel(logging.DEBUG)

        try:
            config = self.build_config(options)
            data = self.load_input(options)
        except ConfcatError as e:
            raise CommandError(str(e), returncode=USAGE_EXIT_CODE) from e

        run = None
        if options["record"] or get_confcat_setting("RECORD_RUNS"):
            from confcat.models import VerificationRun

            run = VerificationRun.objects.start(config)

        try:
            report = self.service.run(config, data)
        except ConfcatError as e:
            logger.exception(f"{self.command_name} aborted")
            if run is not None:
                run.mark_as_error(str(e))
            raise CommandError(f"{self.command_name} failed: {e}", returncode=USAGE_EXIT_CODE) from e

        if run is not None:
            run.mark_as_finished(report.status, report.to_dict())
        if config.out:
            Path(config.out).write_text(report.to_json() + "\n")
        self.render(report, options["format"] or get_confcat_setting("REPORT_FORMAT"))
        self.exit_code = report.exit_code

    def render(self, report: VerificationReport, fmt: str) -> None:
        if fmt == "machine":
            self.stdout.write(report.to_json())
            return
        for style, text in report.human_lines():
            self.stdout.write(getattr(self.style, style)(text) if style else text)
