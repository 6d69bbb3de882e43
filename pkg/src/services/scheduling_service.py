"""
SchedulingService: the bridge between the entry points and the domain.

Both the CLI and the HTTP app call into one instance.  The service is
stateless apart from logging: every call takes its network, streams and
configuration explicitly and returns plain result objects.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from baselines import schedule_by_name
from core.checks import check_inputs
from core.network import NetworkGraph
from core.stream import Stream
from core.validation_result import ValidationResult
from harness.experiments import ReliabilityReport, ScalabilityReport, exp_reliability, exp_scalability
from harness.streams import ScenarioSpec
from scheduler import ScheduleResult, SchedulerOptions, TsnConfiguration
from sim import SimulationResult, Trace, Violation, run_hypercycles, validate_trace

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class ScheduleOutcome:
    result: ScheduleResult
    checks: ValidationResult

    @property
    def config(self) -> TsnConfiguration:
        return self.result.config

    def summary(self) -> dict:
        return {
            "mode": self.config.mode,
            "hypercycle_ns": self.config.hypercycle,
            "accepted": list(self.result.accepted),
            "rejected": {sid: r.value for sid, r in sorted(self.result.rejected.items())},
            "errors": list(self.checks.errors),
            "warnings": list(self.checks.warnings),
        }


@dataclass(slots=True)
class VerifyOutcome:
    violations: list[Violation] = field(default_factory=list)
    psfp_drops: int = 0
    samples: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.psfp_drops

    def summary(self) -> dict:
        return {
            "ok": self.ok,
            "samples": self.samples,
            "psfp_drops": self.psfp_drops,
            "violations": [
                {
                    "constraint": v.constraint.value,
                    "port": list(v.port),
                    "frame": str(v.frame),
                    "times": list(v.times),
                    "detail": v.detail,
                }
                for v in self.violations
            ],
        }


class SchedulingService:
    """Facade that the CLI and the API layer call.  One instance per process."""

    def schedule(
        self,
        network: NetworkGraph,
        streams: Sequence[Stream],
        mode: str = "fips",
        seed: int | None = None,
        options: SchedulerOptions | None = None,
    ) -> ScheduleOutcome:
        checks = check_inputs(network, streams)
        for w in checks.warnings:
            logger.warning("Input: %s", w)
        result = schedule_by_name(network, streams, mode, options)
        result.config.seed = seed
        for sid, reason in sorted(result.rejected.items()):
            logger.warning("Rejected %s: %s", sid, reason.value)
        return ScheduleOutcome(result, checks)

    def simulate(
        self,
        config: TsnConfiguration,
        network: NetworkGraph,
        streams: Sequence[Stream],
        n_cycles: int,
        seed: int,
        clip_to_pdb: bool = False,
        collect_trace: bool = False,
    ) -> SimulationResult:
        return run_hypercycles(config, network, streams, n_cycles, seed, clip_to_pdb, collect_trace)

    def verify(
        self,
        config: TsnConfiguration,
        network: NetworkGraph,
        streams: Sequence[Stream],
        samples: int,
        seed: int,
    ) -> VerifyOutcome:
        """Simulate ``samples`` hypercycles with delays clipped into their budgets.

        A sound configuration yields a valid trace and no PSFP drop.
        """
        sim = run_hypercycles(config, network, streams, samples, seed, clip_to_pdb=True)
        assert sim.trace is not None
        outcome = VerifyOutcome(
            validate_trace(sim.trace, config, network, streams),
            sim.report.psfp_drops,
            samples,
        )
        logger.info(
            "Verified %d clipped hypercycles: %d violations, %d PSFP drops",
            samples, len(outcome.violations), outcome.psfp_drops,
        )
        return outcome

    def verify_trace(
        self,
        trace: Trace,
        config: TsnConfiguration,
        network: NetworkGraph,
        streams: Sequence[Stream],
    ) -> VerifyOutcome:
        return VerifyOutcome(validate_trace(trace, config, network, streams), 0, trace.n_cycles)

    def bench_reliability(self, spec: ScenarioSpec) -> ReliabilityReport:
        return exp_reliability(spec)

    def bench_scalability(self, spec: ScenarioSpec) -> ScalabilityReport:
        return exp_scalability(spec)
