import uuid
from typing import ClassVar

from django.db import models
from django.utils import timezone

from .exceptions import InvalidStateTransitionError

# Verdict statuses of a report map onto terminal run statuses
REPORT_STATUS_MAP = {
    "PASS": "passed",
    "FAIL": "failed",
    "INCONCLUSIVE": "inconclusive",
}


class VerificationRunManager(models.Manager):
    """Manager with convenience methods for recorded runs"""

    def start(self, config):
        """
        Create a run for a RunConfig and mark it running.

        Args:
            config: RunConfig of the run about to execute

        Returns:
            VerificationRun in the running state
        """
        from . import __version__

        run = self.create(
            command=config.command, config=config.to_dict(), tool_version=__version__
        )
        run.mark_as_running()
        return run

    def finished(self):
        return self.filter(status__in=VerificationRun.TERMINAL_STATUSES)

    def for_command(self, command):
        return self.filter(command=command)


class VerificationRun(models.Model):
    """
    A recorded verification run.

    Stores the run configuration and the machine-readable report so a run
    can be compared with later runs of the same configuration. Runs are only
    recorded on request; the pipelines themselves never touch the database.

    Lifecycle:
        pending -> running -> passed | failed | inconclusive | error
        error -> pending (re-run)

    Example:
        run = VerificationRun.objects.start(config)
        report = VerificationService().run(config)
        run.mark_as_finished(report.status, report.to_dict())
    """

    STATUS_CHOICES: ClassVar = [
        ("pending", "Pending"),
        ("running", "Running"),
        ("passed", "Passed"),
        ("failed", "Failed"),
        ("inconclusive", "Inconclusive"),
        ("error", "Error"),
    ]
    TERMINAL_STATUSES: ClassVar = ["passed", "failed", "inconclusive", "error"]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    command = models.CharField(max_length=50)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default="pending")
    config = models.JSONField(default=dict, help_text="RunConfig of the run")
    report = models.JSONField(null=True, blank=True, help_text="Machine-format report")
    tool_version = models.CharField(max_length=20, blank=True)
    error_message = models.TextField(blank=True)

    created_at = models.DateTimeField(auto_now_add=True)
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    objects = VerificationRunManager()

    class Meta:
        verbose_name = "Verification Run"
        verbose_name_plural = "Verification Runs"
        ordering: ClassVar = ["-created_at"]
        indexes: ClassVar = [
            models.Index(fields=["status", "created_at"], name="vrun_status_created_idx"),
            models.Index(fields=["command", "status"], name="vrun_command_status_idx"),
        ]

    def __str__(self):
        return f"{self.command} ({self.status})"

    def save(self, *args, **kwargs):
        """Override save to validate state transitions"""
        if self.pk:
            try:
                old_obj = VerificationRun.objects.get(pk=self.pk)
                if old_obj.status != self.status and not old_obj.can_transition_to(
                    self.status
                ):
                    raise InvalidStateTransitionError(
                        f"Invalid status transition: {old_obj.status} -> {self.status}"
                    )
            except VerificationRun.DoesNotExist:
                pass  # New object, no validation needed

        super().save(*args, **kwargs)

    @property
    def duration(self):
        """Time between start and finish, or None while either is missing."""
        if self.started_at and self.finished_at:
            return self.finished_at - self.started_at
        return None

    @property
    def verdict(self):
        """Status stored in the report envelope, if any."""
        return (self.report or {}).get("status")

    # State Machine Validation
    VALID_TRANSITIONS: ClassVar[dict[str, list[str]]] = {
        "pending": ["running"],
        "running": ["passed", "failed", "inconclusive", "error"],
        "passed": [],  # Terminal state
        "failed": [],  # Terminal state
        "inconclusive": [],  # Terminal state
        "error": ["pending"],
    }

    def can_transition_to(self, new_status):
        """Check if transition to new status is valid"""
        return new_status in self.VALID_TRANSITIONS.get(self.status, [])

    def transition_to(self, new_status, save=True):
        """
        Move to new_status.

        Raises:
            InvalidStateTransitionError: (a ValueError) for a transition the
                lifecycle does not allow
        """
        if not self.can_transition_to(new_status):
            raise InvalidStateTransitionError(
                f"Invalid transition from {self.status} to {new_status}. "
                f"Valid transitions: {self.VALID_TRANSITIONS.get(self.status, [])}"
            )
        self.status = new_status
        if save:
            self.save(update_fields=["status"])
        return True

    def mark_as_running(self):
        self.transition_to("running", save=False)
        self.started_at = timezone.now()
        self.save(update_fields=["status", "started_at"])

    def mark_as_finished(self, verdict, report):
        """
        Store the report and move to the terminal status of its verdict.

        Args:
            verdict: PASS, FAIL or INCONCLUSIVE
            report: machine-format report dict
        """
        self.transition_to(REPORT_STATUS_MAP[verdict], save=False)
        self.report = report
        self.finished_at = timezone.now()
        self.save(update_fields=["status", "report", "finished_at"])

    def mark_as_error(self, message):
        self.transition_to("error", save=False)
        self.error_message = message
        self.finished_at = timezone.now()
        self.save(update_fields=["status", "error_message", "finished_at"])

    def reset_for_rerun(self):
        """Send an errored run back to pending, clearing its outcome."""
        self.transition_to("pending", save=False)
        self.error_message = ""
        self.report = None
        self.started_at = self.finished_at = None
        self.save(
            update_fields=["status", "error_message", "report", "started_at", "finished_at"]
        )
