"""
Service layer for verification pipelines.

Each pipeline builds its inputs from a RunConfig, runs the checkers and the
degreewise comparisons, and collects everything into a VerificationReport.
Management commands are thin wrappers around VerificationService; they only
parse options, render the report and map its status to an exit code.
"""

import json
import logging
import time
from collections.abc import Callable, Hashable
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from . import __version__
from .boxtensor import (
    BoxBounds,
    BoxfinCategory,
    BoxPreSpace,
    box_pre,
    comparison_functor,
    orbit_fiber_counts,
    orbit_target,
)
from .configcat import (
    ConfigCategory,
    check_property_beta,
    config_discrete,
    config_orbit,
    permutation_group,
    product_points,
)
from .conservatize import (
    FLAT,
    homology_cap,
    lambda_equivalence_check,
    lambda_level,
    lambda_tower,
    pi0_by_reference,
    restrict_to_base,
    stabilization_scan,
)
from .defaults import get_confcat_setting
from .exceptions import (
    BoundsError,
    CategoryError,
    CompressionError,
    ConfcatError,
    GroupActionError,
    SimplicialError,
)
from .fincat import FinCatOverFin, over_fin_from_dict
from .finset import boxfin_objects, enumerate_selfic, injection_count
from .homotopy import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    CheckResult,
    combine_statuses,
    vertex_comparison,
    verify_weak_equiv_to_discrete,
)
from .mutations import MUTATIONS, apply_mutation
from .sspace import (
    DiscreteSimplicialSpace,
    nerve_over_fin,
    run_checkers,
    tau_adjunction_check,
    tau_fiber_law_check,
    truncate,
)

logger = logging.getLogger(__name__)

COMMANDS = ("verify_main", "verify_orbit", "verify_truncation", "enumerate", "check_space")
TABLES = ("selfic", "boxfin", "config", "levels")
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
USAGE_EXIT_CODE = 3

# Errors inside one degree fail that degree instead of aborting the run
DEGREE_ERRORS = (CompressionError, CategoryError, SimplicialError)


def parse_group_spec(spec: str) -> tuple[str, tuple[int, ...]]:
    """
    Parse a generator given as "M:1,0" or "N:2,0,1" (0-based image list).

    Raises:
        GroupActionError: if the side is not M or N or the images are not integers
    """
    side, sep, images = spec.partition(":")
    side = side.strip().upper()
    if not sep or side not in ("M", "N"):
        raise GroupActionError(f"Group generator {spec!r} must look like M:1,0 or N:1,0")
    try:
        perm = tuple(int(i) for i in images.split(",") if i.strip())
    except ValueError:
        raise GroupActionError(f"Group generator {spec!r} has a non-integer image") from None
    return side, perm


@dataclass
class RunConfig:
    """
    Everything a verification run depends on.

    Unset bounds fall back to the CONFCAT settings when the config is built,
    so the serialized config is the complete description of the run.
    """

    command: str = "verify_main"
    m: int = 1
    n: int = 1
    groups: list[str] = field(default_factory=list)
    max_degree: int = field(default_factory=lambda: get_confcat_setting("MAX_DEGREE"))
    ell_min: int | None = None
    ell_max: int | None = None
    cap: int = field(default_factory=lambda: get_confcat_setting("NERVE_CAP"))
    probe: int = field(default_factory=lambda: get_confcat_setting("PROBE_DEGREE"))
    checker_cap: int = field(default_factory=lambda: get_confcat_setting("CHECKER_CAP"))
    seed: int = field(default_factory=lambda: get_confcat_setting("MUTATION_SEED"))
    mutate: str | None = None
    out: str | None = None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        config = cls(**{key: value for key, value in data.items() if key in known})
        config.groups = list(config.groups)
        config.params = dict(config.params)
        return config

    def generators(self, side: str) -> list[tuple[int, ...]]:
        """Permutation generators given for one side ("M" or "N")."""
        return [perm for s, perm in map(parse_group_spec, self.groups) if s == side]

    def ell_range(self, r: int) -> range:
        """
        The L values scanned in degree r.

        Raises:
            BoundsError: if the range is empty
        """
        lo = r if self.ell_min is None else max(r, self.ell_min)
        hi = r + get_confcat_setting("ELL_SPAN") if self.ell_max is None else self.ell_max
        if hi < lo:
            raise BoundsError(
                f"L range {lo}..{hi} for degree {r} is empty; raise --ell-max to at least {lo}",
                minimal_bounds=lo,
            )
        return range(lo, hi + 1)

    @property
    def space_cap(self) -> int:
        """Cap for the input nerves: enough for every L scanned and every checker."""
        return max(self.ell_range(self.max_degree)[-1], self.checker_cap, 1)

    def validate(self) -> list[str]:
        """
        Returns:
            List of problems (empty if the config can be run)
        """
        problems = []
        if self.command not in COMMANDS:
            problems.append(f"unknown command {self.command!r}")
        if self.m < 1 or self.n < 1:
            problems.append("--m and --n must be at least 1")
        if self.max_degree < 0:
            problems.append("--max-degree must be non-negative")
        if self.cap < 1:
            problems.append("--cap must be at least 1")
        if self.probe < 0:
            problems.append("--probe-cap must be non-negative")
        if self.checker_cap < 0:
            problems.append("checker cap must be non-negative")
        for name in ("ell_min", "ell_max"):
            value = getattr(self, name)
            if value is not None and value < 0:
                problems.append(f"--{name.replace('_', '-')} must be non-negative")
        if self.mutate is not None and self.mutate not in MUTATIONS:
            problems.append(f"unknown mutation {self.mutate!r}; choose from {sorted(MUTATIONS)}")
        for spec in self.groups:
            try:
                parse_group_spec(spec)
            except GroupActionError as e:
                problems.append(str(e))
        return problems


def _json_safe(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _json_safe(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [_json_safe(item) for item in value]
    if isinstance(value, set | frozenset):
        return sorted(repr(item) for item in value)
    if value is None or isinstance(value, bool | int | float | str):
        return value
    return repr(value)


@dataclass
class VerificationReport:
    """
    Outcome of one run.

    checkers maps an input name to its checker results; results listed in
    informational are reported but do not enter the status.
    """

    command: str
    config: dict
    checkers: dict[str, dict[str, CheckResult]] = field(default_factory=dict)
    informational: set[tuple[str, str]] = field(default_factory=set)
    checks: dict[str, CheckResult] = field(default_factory=dict)
    degrees: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    mutation: dict | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        statuses = [
            result.status
            for source, results in self.checkers.items()
            for name, result in results.items()
            if (source, name) not in self.informational
        ]
        statuses += [result.status for result in self.checks.values()]
        statuses += [degree["status"] for degree in self.degrees]
        return combine_statuses(statuses)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def add_checkers(
        self, source: str, results: dict[str, CheckResult], informational: tuple[str, ...] = ()
    ) -> None:
        self.checkers[source] = results
        self.informational.update((source, name) for name in informational)

    def to_dict(self) -> dict:
        """The machine-readable envelope; timings are left out so runs compare byte for byte."""
        checkers = {
            source: {
                name: {**result.to_dict(), "required": (source, name) not in self.informational}
                for name, result in results.items()
            }
            for source, results in self.checkers.items()
        }
        data = {
            "tool": "confcat",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "status": self.status,
            "checkers": checkers,
            "checks": {name: result.to_dict() for name, result in self.checks.items()},
            "degrees": self.degrees,
            "notes": list(self.notes),
            "counts": self.counts,
            "tables": self.tables,
            "mutation": self.mutation,
        }
        return _json_safe(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def human_lines(self) -> list[tuple[str, str]]:
        """(style, text) pairs; style is SUCCESS, WARNING, ERROR or empty."""
        style = {PASS: "SUCCESS", FAIL: "ERROR", INCONCLUSIVE: "WARNING"}
        lines = [("", f"confcat {__version__}: {self.command}")]
        if self.mutation:
            lines.append(("WARNING", f"Mutation: {self.mutation['description']}"))
        for source, results in self.checkers.items():
            for name, result in results.items():
                suffix = "" if (source, name) not in self.informational else " (informational)"
                lines.append(
                    (style[result.status], f"  {source} {name}: {result.status}{suffix}")
                )
        for name, result in self.checks.items():
            lines.append((style[result.status], f"  {name}: {result.status}"))
        for degree in self.degrees:
            text = f"  degree {degree['r']}: {degree['status']}"
            if "error" in degree:
                text += f" ({degree['error']})"
            lines.append((style[degree["status"]], text))
        for name, rows in self.tables.items():
            lines.append(("", f"  table {name}: {len(rows)} rows"))
        lines.extend(("WARNING", f"  note: {note}") for note in self.notes)
        for phase, seconds in self.timings.items():
            lines.append(("", f"  {phase}: {seconds:.2f}s"))
        lines.append((style[self.status], f"Status: {self.status}"))
        return lines


class _Timer:
    """Accumulates wall-clock time per phase into a report."""

    def __init__(self, report: VerificationReport, phase: str):
        self.report, self.phase = report, phase

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.start
        self.report.timings[self.phase] = self.report.timings.get(self.phase, 0.0) + elapsed
        return False


def _validation_result(name: str, C: FinCatOverFin) -> CheckResult:
    problems = C.category.validate()
    if not problems:
        try:
            problems = C.check()
        except CategoryError as e:
            problems = [str(e)]
    return CheckResult(name, not problems, problems, {"objects": len(C.category.objects())})


def _count_law(LL, total: int) -> CheckResult:
    """Components over size k number the injections of k into total points."""
    by_size = pi0_by_reference(LL)
    witnesses, details = [], {}
    for k in range(total + 1):
        actual, expected = by_size.get((k,), 0), injection_count(k, total)
        details[k] = {"components": actual, "injections": expected}
        if actual != expected:
            witnesses.append((k, actual, expected))
    return CheckResult("count_law", not witnesses, witnesses, details)


class VerificationService:
    """
    Runs the verification pipelines.

    Example:
        service = VerificationService()
        report = service.run(RunConfig(command="verify_main", m=1, n=1))
        print(report.status)
    """

    def run(self, config: RunConfig, data: dict | None = None) -> VerificationReport:
        """
        Dispatch on config.command.

        Raises:
            ConfcatError: for invalid configurations or insufficient bounds
        """
        problems = config.validate()
        if problems:
            raise BoundsError("Invalid run configuration: " + "; ".join(problems))
        pipelines: dict[str, Callable[[RunConfig], VerificationReport]] = {
            "verify_main": self.verify_main,
            "verify_orbit": self.verify_orbit,
            "verify_truncation": self.verify_truncation,
            "enumerate": self.enumerate,
            "check_space": lambda cfg: self.check_space(cfg, data),
        }
        logger.info(f"Starting {config.command} with m={config.m}, n={config.n}")
        report = pipelines[config.command](config)
        logger.info(f"Finished {config.command}: {report.status}")
        return report

    # Inputs

    def _mutate(
        self, config: RunConfig, report: VerificationReport, C_M: FinCatOverFin, C_N: FinCatOverFin
    ) -> tuple[FinCatOverFin, FinCatOverFin, bool]:
        """Apply config.mutate; returns the inputs and whether Boxfin stays selfic."""
        if config.mutate is None:
            return C_M, C_N, True
        if config.mutate == "break_selfic":
            larger = C_M if C_M.fin_bound() >= C_N.fin_bound() else C_N
            report.mutation = apply_mutation(config.mutate, larger, config.seed).to_dict()
            return C_M, C_N, False
        mutation = apply_mutation(config.mutate, C_M, config.seed)
        report.mutation = mutation.to_dict()
        return mutation.category, C_N, True

    def _validate_inputs(self, report: VerificationReport, inputs: dict[str, FinCatOverFin]) -> bool:
        for name, C in inputs.items():
            report.checks[f"input_{name}"] = _validation_result(f"input_{name}", C)
        valid = all(report.checks[f"input_{name}"].passed for name in inputs)
        if not valid:
            logger.warning("Input tables do not form categories over Fin; skipping the pipeline")
        return valid

    def _checkers(
        self,
        report: VerificationReport,
        spaces: dict[str, DiscreteSimplicialSpace],
        cap: int,
        informational: dict[str, tuple[str, ...]],
    ) -> None:
        with _Timer(report, "checkers"):
            for name, space in spaces.items():
                report.add_checkers(name, run_checkers(space, cap), informational.get(name, ()))

    @staticmethod
    def _mutation_floor(config: RunConfig, report: VerificationReport) -> RunConfig:
        """Mutated runs look at degree 1 at least; deletions may only show there."""
        if config.mutate is None or min(config.max_degree, config.checker_cap) >= 1:
            return config
        report.notes.append("mutation runs verify degrees and checkers up to 1 at least")
        floor = {"max_degree": max(config.max_degree, 1), "checker_cap": max(config.checker_cap, 1)}
        return RunConfig.from_dict({**config.to_dict(), **floor})

    # Pipelines

    def verify_main(self, config: RunConfig) -> VerificationReport:
        """
        Compare Lambda-flat of box_pre(config(M), config(N)) with the
        configuration category of M x N, degree by degree.

        Args:
            config: run configuration (m, n, degrees, L range, caps)

        Returns:
            VerificationReport with checker outcomes and per-degree verdicts
        """
        report = VerificationReport("verify_main", config.to_dict())
        config = self._mutation_floor(config, report)
        C_M, C_N, selfic = self._mutate(
            config, report, config_discrete(config.m), config_discrete(config.n)
        )
        if not self._validate_inputs(report, {"M": C_M, "N": C_N}):
            return report
        cap = config.space_cap
        X, Y = nerve_over_fin(C_M, cap), nerve_over_fin(C_N, cap)
        W = box_pre(X, Y, selfic=selfic)
        self._checkers(
            report, {"X": X, "Y": Y, "W": W}, config.checker_cap, {"W": ("conservative",)}
        )
        target = config_discrete(product_points(config.m, config.n))
        Z = nerve_over_fin(target, cap)
        comparison = comparison_functor(W, target)
        problems = comparison.check()
        report.checks["comparison_functor"] = CheckResult(
            "comparison_functor",
            not problems,
            problems,
            {"injective_on_objects": comparison.degree0_injective()},
        )
        report.notes.extend(comparison.notes())
        phi = comparison.space_map(W, Z)
        report.counts = {
            "W": [len(W.level(r)) for r in range(config.checker_cap + 1)],
            "target": [len(Z.level(r)) for r in range(config.max_degree + 1)],
        }
        with _Timer(report, "degrees"):
            for r in range(config.max_degree + 1):
                report.degrees.append(self._main_degree(config, W, Z, phi, r))
        return report

    def _main_degree(
        self,
        config: RunConfig,
        W: BoxPreSpace,
        Z: DiscreteSimplicialSpace,
        phi: Callable[[Hashable], Hashable],
        r: int,
    ) -> dict:
        entry: dict[str, Any] = {"r": r}
        try:
            scan = stabilization_scan(W, r, FLAT, config.ell_range(r), config.cap, config.probe)
            LL = scan.final.level
            comparison = vertex_comparison(LL, phi, Z)
            verdict = verify_weak_equiv_to_discrete(
                LL, Z.level(r), config.probe, comparison, scan.verdict, scan.final.homology
            )
        except DEGREE_ERRORS as e:
            logger.warning(f"Degree {r} failed: {e}")
            entry.update(status=FAIL, error=f"{type(e).__name__}: {e}")
            return entry
        entry.update(
            status=verdict.status,
            verdict=verdict.to_dict(),
            stabilization=scan.to_dict(),
            vertex_comparison=comparison.to_dict(),
            target_size=len(Z.level(r)),
        )
        if r == 0:
            law = _count_law(LL, config.m * config.n)
            entry["count_law"] = law.to_dict()
            if not law.passed:
                entry["status"] = FAIL
        return entry

    def verify_orbit(self, config: RunConfig) -> VerificationReport:
        """
        Compare Lambda-flat of the product of the two action categories with
        Lambda-flat of the action category of G x H on configurations of
        M x N, and count the fibers over the group labels.
        """
        report = VerificationReport("verify_orbit", config.to_dict())
        config = self._mutation_floor(config, report)
        G = permutation_group(config.generators("M"), config.m)
        H = permutation_group(config.generators("N"), config.n)
        report.counts["group_orders"] = [G.order, H.order]
        C_M, C_N, selfic = self._mutate(
            config, report, config_orbit(config.m, G), config_orbit(config.n, H)
        )
        if not self._validate_inputs(report, {"M": C_M, "N": C_N}):
            return report
        cap = config.space_cap
        X, Y = nerve_over_fin(C_M, cap), nerve_over_fin(C_N, cap)
        W = box_pre(X, Y, selfic=selfic)
        side_info = ("fiberwise_complete", "conservative")
        self._checkers(
            report,
            {"X": X, "Y": Y, "W": W},
            config.checker_cap,
            {"X": side_info, "Y": side_info, "W": side_info},
        )
        plain = box_pre(
            nerve_over_fin(config_discrete(config.m), config.checker_cap),
            nerve_over_fin(config_discrete(config.n), config.checker_cap),
        )
        report.checks["orbit_fibers"] = orbit_fiber_counts(
            W, plain, G.order * H.order, config.checker_cap
        )
        target = orbit_target(config.m, config.n, G, H)
        Z = nerve_over_fin(target, cap)
        comparison = comparison_functor(W, target)
        problems = comparison.check()
        report.checks["comparison_functor"] = CheckResult(
            "comparison_functor", not problems, problems
        )
        report.notes.extend(comparison.notes())
        phi = comparison.space_map(W, Z)
        with _Timer(report, "degrees"):
            for r in range(config.max_degree + 1):
                report.degrees.append(self._orbit_degree(config, W, Z, phi, r))
        return report

    def _orbit_degree(
        self,
        config: RunConfig,
        W: BoxPreSpace,
        Z: DiscreteSimplicialSpace,
        phi: Callable[[Hashable], Hashable],
        r: int,
    ) -> dict:
        stages = []
        L_values = list(config.ell_range(r))
        nerve_cap = homology_cap(config.cap, config.probe)
        try:
            sources = lambda_tower(W, r, L_values, FLAT, nerve_cap)
            targets = lambda_tower(Z, r, L_values, FLAT, nerve_cap)
        except DEGREE_ERRORS as e:
            logger.warning(f"Degree {r} failed: {e}")
            return {"r": r, "status": FAIL, "error": f"{type(e).__name__}: {e}", "stages": []}
        for L in L_values:
            try:
                verdict = lambda_equivalence_check(sources[L], targets[L], phi, config.probe)
            except DEGREE_ERRORS as e:
                logger.warning(f"Degree {r} at L={L} failed: {e}")
                stages.append({"L": L, "status": FAIL, "error": f"{type(e).__name__}: {e}"})
                continue
            stages.append({"L": L, "status": verdict.status, "verdict": verdict.to_dict()})
        statuses = [stage["status"] for stage in stages]
        window = get_confcat_setting("STABILITY_WINDOW")
        if statuses[-1] == FAIL:
            status = FAIL
        elif len(statuses) >= window and set(statuses[-window:]) == {PASS}:
            status = PASS
        else:
            logger.warning(f"Orbit comparison in degree {r} is inconclusive: {statuses}")
            status = INCONCLUSIVE
        return {"r": r, "status": status, "stages": stages}

    def verify_truncation(self, config: RunConfig) -> VerificationReport:
        """
        Check that truncating box_pre at k equals box_pre of the truncations,
        the fiber law of the right adjoint, and that Lambda-flat of the
        truncation is the part of Lambda-flat over Fin up to k.

        Raises:
            BoundsError: if k is missing or outside 0..m*n, or a mutation was requested
        """
        if config.mutate is not None:
            raise BoundsError("verify_truncation takes no mutation: truncation has no failing input")
        k, total = config.params.get("k"), config.m * config.n
        if k is None or not 0 <= k <= total:
            raise BoundsError(f"Truncation needs 0 <= k <= m*n = {total}", minimal_bounds=total)
        report = VerificationReport("verify_truncation", config.to_dict())
        cap = config.space_cap
        X = nerve_over_fin(config_discrete(config.m), cap)
        Y = nerve_over_fin(config_discrete(config.n), cap)
        W = box_pre(X, Y)
        self._checkers(
            report, {"X": X, "Y": Y, "W": W}, config.checker_cap, {"W": ("conservative",)}
        )
        left = truncate(W, k)
        r_k, s_k = min(k, config.m), min(k, config.n)
        right = box_pre(truncate(X, r_k), truncate(Y, s_k), BoxBounds(k, r_k, s_k))
        report.checks["truncation_identity"] = self._levelwise_identity(
            left, right, config.checker_cap
        )
        report.checks["tau_fiber_law"] = tau_fiber_law_check(left, total, config.checker_cap)
        sources = [nerve_over_fin(config_discrete(p), 2, fin_bound=total) for p in (0, 1)]
        report.checks["tau_adjunction"] = tau_adjunction_check(left, total, sources)
        with _Timer(report, "degrees"):
            for r in range(config.max_degree + 1):
                report.degrees.append(self._truncation_degree(config, W, left, k, r))
        return report

    @staticmethod
    def _levelwise_identity(
        left: DiscreteSimplicialSpace, right: DiscreteSimplicialSpace, cap: int
    ) -> CheckResult:
        witnesses, details = [], {}
        for r in range(min(cap, left.cap, right.cap) + 1):
            ours, theirs = set(left.level(r)), set(right.level(r))
            details[r] = {"left": len(ours), "right": len(theirs)}
            if ours != theirs:
                witnesses.append((r, len(ours - theirs), len(theirs - ours)))
        return CheckResult("truncation_identity", not witnesses, witnesses, details)

    def _truncation_degree(
        self, config: RunConfig, W: BoxPreSpace, truncated: DiscreteSimplicialSpace, k: int, r: int
    ) -> dict:
        L = config.ell_range(r)[-1]
        nerve_cap = homology_cap(config.cap, config.probe)
        try:
            of_truncation = lambda_level(truncated, r, FLAT, L, nerve_cap)
            truncation_of = restrict_to_base(lambda_level(W, r, FLAT, L, nerve_cap), k)
        except DEGREE_ERRORS as e:
            return {"r": r, "L": L, "status": FAIL, "error": f"{type(e).__name__}: {e}"}
        levels = (of_truncation, truncation_of)
        probes = {
            "counts": [level.skeleton.counts() for level in levels],
            "pi0": [len(level.components) for level in levels],
            "homology": [level.homology(nerve_cap - 1).to_dict() for level in levels],
        }
        agree = all(pair[0] == pair[1] for pair in probes.values())
        return {"r": r, "L": L, "status": PASS if agree else FAIL, "probes": probes}

    def enumerate(self, config: RunConfig) -> VerificationReport:
        """
        Dump one oracle table; config.params["what"] picks it.

        Raises:
            ConfcatError: for an unknown table name
        """
        what = config.params.get("what", "config")
        if what not in TABLES:
            raise ConfcatError(f"Unknown table {what!r}; choose from {list(TABLES)}")
        report = VerificationReport("enumerate", config.to_dict())
        rows = getattr(self, f"_table_{what}")(config)
        report.tables[what] = rows
        report.counts[what] = len(rows)
        return report

    @staticmethod
    def _table_selfic(config: RunConfig) -> list:
        k, ell = config.params.get("k", 3), config.params.get("ell", 2)
        return [list(f.img) for f in enumerate_selfic(k, ell)]

    @staticmethod
    def _table_boxfin(config: RunConfig) -> list:
        k = config.params.get("k", 2)
        r_max, s_max = config.params.get("r_max", k), config.params.get("s_max", k)
        category = BoxfinCategory(BoxBounds(k, r_max, s_max))
        return [
            {**kappa.to_dict(), "out_degree": len(category.out_morphisms(kappa))}
            for kappa in boxfin_objects(k, r_max, s_max)
        ]

    @staticmethod
    def _table_config(config: RunConfig) -> list:
        return [list(x) for x in ConfigCategory(range(config.m)).objects()]

    @staticmethod
    def _table_levels(config: RunConfig) -> list:
        cap = config.checker_cap
        X = nerve_over_fin(config_discrete(config.m), cap)
        Y = nerve_over_fin(config_discrete(config.n), cap)
        W = box_pre(X, Y)
        return [
            {"r": r, "X": len(X.level(r)), "Y": len(Y.level(r)), "W": len(W.level(r))}
            for r in range(cap + 1)
        ]

    def check_space(self, config: RunConfig, data: dict | None) -> VerificationReport:
        """
        Run the local-object checkers and property beta on a serialized
        category over Fin (the over_fin_to_dict format).

        Raises:
            ConfcatError: if no input was given or a mutation was requested
        """
        if data is None:
            raise CategoryError("check_space needs a serialized category over Fin")
        if config.mutate is not None:
            raise BoundsError("check_space takes no mutation; mutate the input file instead")
        report = VerificationReport("check_space", config.to_dict())
        C = over_fin_from_dict(data)
        if not self._validate_inputs(report, {"input": C}):
            return report
        X = nerve_over_fin(C, max(config.checker_cap, 2))
        self._checkers(report, {"input": X}, config.checker_cap, {})
        beta = check_property_beta(C)
        report.checks["property_beta"] = CheckResult(
            "property_beta", beta.passed, beta.failures(), beta.to_dict()
        )
        report.counts["levels"] = [len(X.level(r)) for r in range(config.checker_cap + 1)]
        return report
