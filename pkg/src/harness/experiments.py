"""
Headline experiments.

``exp_reliability`` schedules one congested scenario with FIPS and the
two scalar baselines and measures the delivered QoS of the tracked
high-criticality streams by simulation.

``exp_scalability`` counts how many wireless streams FIPS and STI admit
over a grid of reliability and jitter requirements.  Each replication
draws one stream set (seeded by master seed and replication index only)
and re-targets its wireless QoS per grid point, so all grid points of a
replication share the same paths and phases.

Replications and grid points are independent and run on a process pool
when ``workers > 1``.
"""
from __future__ import annotations

import csv
import logging
import multiprocessing
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from statistics import fmean
from typing import Callable, Iterable, TypeVar

import numpy as np

from baselines import schedule_by_name
from core.timebase import TimeNs, to_ms
from harness.streams import ScenarioSpec, gen_stream_set, is_wireless, tracked_streams, with_wireless_qos
from harness.topology import gen_agv_topology
from scheduler import ScheduleMode, ScheduleResult, schedule
from sim.engine import run_hypercycles
from sim.qos import QosReport

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

RELIABILITY_MODES = ("fips", "med", "max")


def scenario_rng(spec: ScenarioSpec, replication: int = 0) -> np.random.Generator:
    """Generator derived from (master seed, replication) only."""
    return np.random.default_rng([spec.seed, replication])


def _pool_map(fn: Callable[[T], R], tasks: list[T], workers: int) -> list[R]:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with multiprocessing.Pool(min(workers, len(tasks))) as pool:
        return pool.map(fn, tasks)


# ------------------------------------------------------------------
# Reliability
# ------------------------------------------------------------------

@dataclass(slots=True)
class ModeOutcome:
    mode: str
    accepted: list[str]
    rejected: dict[str, str]
    qos: QosReport


@dataclass(slots=True)
class ReliabilityReport:
    spec: ScenarioSpec
    tracked: list[str]
    outcomes: list[ModeOutcome] = field(default_factory=list)

    def rows(self) -> list[dict]:
        """One comparison row per (mode, tracked stream)."""
        out = []
        for o in self.outcomes:
            for sid in self.tracked:
                if sid not in o.qos.streams:
                    out.append({"mode": o.mode, "stream": sid, "status": o.rejected.get(sid, "rejected")})
                    continue
                t = o.qos.streams[sid]
                out.append({
                    "mode": o.mode,
                    "stream": sid,
                    "status": "accepted",
                    "reliability": t.delivered_fraction,
                    "halfwidth": t.reliability_halfwidth,
                    "latency_min_ms": to_ms(t.latency_min) if t.latency_min is not None else None,
                    "latency_max_ms": to_ms(t.latency_max) if t.latency_max is not None else None,
                    "observed_jitter_us": t.observed_jitter / 1000,
                    "drops": t.dropped,
                })
        return out


def _simulate_task(args: tuple) -> QosReport:
    config, network, streams, n_cycles, seed = args
    return run_hypercycles(config, network, streams, n_cycles, seed, collect_trace=False).report


def exp_reliability(spec: ScenarioSpec) -> ReliabilityReport:
    network = gen_agv_topology(spec.topology)
    streams = gen_stream_set(spec, network, scenario_rng(spec))
    report = ReliabilityReport(spec, tracked_streams(spec))

    for mode in RELIABILITY_MODES:
        result = schedule_by_name(network, streams, mode)
        admitted = set(result.accepted)
        accepted = [s for s in streams if s.id in admitted]
        tasks = [
            (result.config, network, accepted, spec.n_cycles, spec.seed * 1_000 + r)
            for r in range(spec.replications)
        ]
        reports = _pool_map(_simulate_task, tasks, spec.workers)
        qos = reports[0]
        for other in reports[1:]:
            qos = qos.merge(other)
        report.outcomes.append(ModeOutcome(
            mode, list(result.accepted), {k: v.value for k, v in result.rejected.items()}, qos,
        ))
        logger.info(
            "%s: %d/%d accepted, simulated %d cycles", mode, len(result.accepted), len(streams),
            spec.n_cycles * spec.replications,
        )
    return report


# ------------------------------------------------------------------
# Scalability
# ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GridPoint:
    reliability: Fraction
    jitter_bound: TimeNs


@dataclass(frozen=True, slots=True)
class ScalabilityRow:
    replication: int
    point: GridPoint
    fips_accepted: int
    sti_accepted: int


@dataclass(slots=True)
class ScalabilityReport:
    spec: ScenarioSpec
    rows: list[ScalabilityRow] = field(default_factory=list)

    def averages(self) -> list[tuple[GridPoint, float, float]]:
        """Mean accepted wireless streams per grid point, in grid order."""
        acc: dict[GridPoint, list[ScalabilityRow]] = defaultdict(list)
        for row in self.rows:
            acc[row.point].append(row)
        return [
            (p, fmean(r.fips_accepted for r in rows), fmean(r.sti_accepted for r in rows))
            for p, rows in acc.items()
        ]

    def trend_breaks(self) -> list[str]:
        """Replications where FIPS admission is not monotone in the grid.

        Reliability sweeps are taken at the largest jitter allowance,
        jitter sweeps at each configured reliability.
        """
        spec = self.spec
        by_rep: dict[int, dict[GridPoint, int]] = defaultdict(dict)
        for row in self.rows:
            by_rep[row.replication][row.point] = row.fips_accepted
        j_max = max(spec.jitter_grid)
        notes = []
        for rep, counts in sorted(by_rep.items()):
            rel_seq = [counts[GridPoint(r, j_max)] for r in sorted(spec.reliability_grid)]
            if any(a < b for a, b in zip(rel_seq, rel_seq[1:])):
                notes.append(f"replication {rep}: accepted count rises with reliability {rel_seq}")
            for rel in spec.jitter_sweep_reliabilities:
                jit_seq = [counts[GridPoint(rel, j)] for j in sorted(spec.jitter_grid)]
                if any(a > b for a, b in zip(jit_seq, jit_seq[1:])):
                    notes.append(f"replication {rep}: accepted count falls with jitter at {rel} {jit_seq}")
        return notes

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["replication", "reliability", "jitter_us", "fips", "sti"])
            for row in self.rows:
                writer.writerow([
                    row.replication, str(row.point.reliability), row.point.jitter_bound // 1000,
                    row.fips_accepted, row.sti_accepted,
                ])


def grid_points(spec: ScenarioSpec) -> list[GridPoint]:
    j_max = max(spec.jitter_grid)
    points = [GridPoint(r, j_max) for r in spec.reliability_grid]
    points += [GridPoint(r, j) for r in spec.jitter_sweep_reliabilities for j in spec.jitter_grid]
    return list(dict.fromkeys(points))


def _count_wireless(result: ScheduleResult, wireless: set[str]) -> int:
    return sum(1 for sid in result.accepted if sid in wireless)


def _scalability_task(args: tuple[ScenarioSpec, int, list[GridPoint]]) -> list[ScalabilityRow]:
    spec, replication, points = args
    network = gen_agv_topology(spec.topology)
    base = gen_stream_set(spec, network, scenario_rng(spec, replication))
    wireless = {s.id for s in base if is_wireless(s, network)}
    rows = []
    for point in points:
        streams = with_wireless_qos(base, network, point.reliability, point.jitter_bound)
        fips = schedule(network, streams, ScheduleMode.FIPS)
        sti = schedule(network, streams, ScheduleMode.STI)
        rows.append(ScalabilityRow(
            replication, point, _count_wireless(fips, wireless), _count_wireless(sti, wireless),
        ))
        logger.info(
            "rep %d rel %s jitter %d us: FIPS %d, STI %d", replication, point.reliability,
            point.jitter_bound // 1000, rows[-1].fips_accepted, rows[-1].sti_accepted,
        )
    return rows


def exp_scalability(spec: ScenarioSpec) -> ScalabilityReport:
    points = grid_points(spec)
    tasks = [(spec, r, [p]) for r in range(spec.replications) for p in points]
    report = ScalabilityReport(spec)
    for rows in _pool_map(_scalability_task, tasks, spec.workers):
        report.rows.extend(rows)
    for note in report.trend_breaks():
        logger.warning("Trend break: %s", note)
    return report


def summarize(rows: Iterable[dict]) -> str:
    """Plain-text table for stdout."""
    rows = list(rows)
    if not rows:
        return "(no rows)"
    cols = list(dict.fromkeys(k for r in rows for k in r))
    widths = {c: max(len(c), *(len(_fmt(r.get(c))) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines += ["  ".join(_fmt(r.get(c)).ljust(widths[c]) for c in cols) for r in rows]
    return "\n".join(lines)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)
