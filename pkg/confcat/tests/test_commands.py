"""
Management command tests: option handling, output formats and recording.
"""

import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from ..configcat import config_discrete
from ..fincat import over_fin_to_dict
from ..models import VerificationRun


class EnumerateCommandTest(TestCase):
    """enumerate_objects"""

    def test_machine_format(self):
        """Test the machine report carries the table"""
        out = StringIO()
        call_command("enumerate_objects", "selfic", format="machine", stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data["status"], "PASS")
        self.assertEqual(data["tables"]["selfic"], [[1, 1, 2], [1, 2, 1], [1, 2, 2]])

    def test_human_format(self):
        """Test human output ends with the status line"""
        out = StringIO()
        call_command("enumerate_objects", "config", m=2, format="human", no_color=True, stdout=out)
        self.assertEqual(out.getvalue().strip().splitlines()[-1], "Status: PASS")

    def test_record(self):
        """Test --record stores a finished run"""
        call_command("enumerate_objects", "config", record=True, stdout=StringIO())
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, "passed")
        self.assertEqual(run.command, "enumerate")
        self.assertEqual(run.report["tables"]["config"], [[], [0]])

    def test_out_file(self):
        """Test --out writes the machine report"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            call_command("enumerate_objects", "selfic", out=str(path), stdout=StringIO())
            self.assertEqual(json.loads(path.read_text())["command"], "enumerate")


class UsageErrorTest(TestCase):
    """Usage errors exit with code 3"""

    def test_truncation_bound_out_of_range(self):
        """Test k above m*n"""
        with self.assertRaises(CommandError) as ctx:
            call_command("verify_truncation", k=9, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 3)

    def test_recorded_usage_error(self):
        """Test a recorded run that aborts is marked as error"""
        with self.assertRaises(CommandError):
            call_command("verify_truncation", k=9, record=True, stdout=StringIO())
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, "error")
        self.assertIn("0 <= k <= m*n", run.error_message)

    def test_missing_input_file(self):
        """Test an unreadable input file"""
        with self.assertRaises(CommandError) as ctx:
            call_command("check_space", "/nonexistent/category.json", stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 3)


class CheckSpaceCommandTest(TestCase):
    """check_space on a file"""

    def test_one_point_configurations(self):
        """Test a serialized configuration category passes"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "category.json"
            path.write_text(json.dumps(over_fin_to_dict(config_discrete(1))))
            out = StringIO()
            call_command("check_space", str(path), format="machine", stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data["status"], "PASS")
        self.assertEqual(data["counts"]["levels"], [2, 3, 4])
