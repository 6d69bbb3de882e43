"""
Command-line entry point.

    fips-tsn schedule  --network N --streams S --mode fips --out CONFIG
    fips-tsn simulate  --config C --network N --streams S --cycles 1000 --seed 1 --report R
    fips-tsn verify    --config C --network N --streams S (--samples 1000 --seed 1 | --trace T)
    fips-tsn bench     reliability|scalability (--spec PATH | --preset) --out R [--csv PATH]

Exit codes: 0 ok, 1 input or I/O error, 2 streams rejected,
3 validation failed, 64 usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from typing import Sequence

from core.errors import FipsError
from harness.experiments import summarize
from harness.streams import ScenarioSpec, reliability_scenario, scalability_scenario
from infrastructure import FileKind, load, save
from services import SchedulingService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2
EXIT_VIOLATIONS = 3
EXIT_USAGE = 64

_service = SchedulingService()


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False))


# ------------------------------------------------------------------
# Commands
# ------------------------------------------------------------------

def cmd_schedule(args: argparse.Namespace) -> int:
    network = load(args.network, FileKind.NETWORK)
    streams = load(args.streams, FileKind.STREAMS)
    outcome = _service.schedule(network, streams, args.mode, seed=args.seed)
    save(outcome.config, args.out, FileKind.CONFIGURATION)
    _print_json(outcome.summary())
    return EXIT_REJECTED if outcome.result.rejected else EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load(args.config, FileKind.CONFIGURATION)
    network = load(args.network, FileKind.NETWORK)
    streams = load(args.streams, FileKind.STREAMS)
    result = _service.simulate(
        config, network, streams, args.cycles, args.seed,
        clip_to_pdb=args.clip_to_pdb, collect_trace=args.trace_out is not None,
    )
    save(result.report, args.report, FileKind.QOS_REPORT)
    if args.trace_out is not None:
        save(result.trace, args.trace_out, FileKind.TRACE)
    rows = [
        {
            "stream": sid,
            "released": t.released,
            "delivered": t.delivered,
            "dropped": t.dropped,
            "reliability": t.delivered_fraction,
        }
        for sid, t in sorted(result.report.streams.items())
    ]
    print(summarize(rows))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = load(args.config, FileKind.CONFIGURATION)
    network = load(args.network, FileKind.NETWORK)
    streams = load(args.streams, FileKind.STREAMS)
    if args.trace is not None:
        trace = load(args.trace, FileKind.TRACE)
        outcome = _service.verify_trace(trace, config, network, streams)
    else:
        outcome = _service.verify(config, network, streams, args.samples, args.seed)
    _print_json(outcome.summary())
    for v in outcome.violations:
        logger.warning("%s", v)
    return EXIT_OK if outcome.ok else EXIT_VIOLATIONS


def _scenario(args: argparse.Namespace) -> ScenarioSpec:
    if args.spec is not None:
        spec = load(args.spec, FileKind.SCENARIO)
    elif args.experiment == "reliability":
        spec = reliability_scenario()
    else:
        spec = scalability_scenario()
    overrides = {
        k: v for k, v in (
            ("seed", args.seed), ("replications", args.replications),
            ("n_cycles", args.cycles), ("workers", args.workers),
        )
        if v is not None
    }
    return dataclasses.replace(spec, **overrides) if overrides else spec


def cmd_bench(args: argparse.Namespace) -> int:
    spec = _scenario(args)
    if args.experiment == "reliability":
        report = _service.bench_reliability(spec)
        save(report, args.out, FileKind.RELIABILITY_REPORT)
        print(summarize(report.rows()))
        return EXIT_OK

    report = _service.bench_scalability(spec)
    save(report, args.out, FileKind.SCALABILITY_REPORT)
    if args.csv is not None:
        report.write_csv(args.csv)
    print(summarize(
        {
            "reliability": str(point.reliability),
            "jitter_us": point.jitter_bound // 1000,
            "fips": fips,
            "sti": sti,
        }
        for point, fips, sti in report.averages()
    ))
    for note in report.trend_breaks():
        print(f"note: {note}")
    return EXIT_OK


# ------------------------------------------------------------------
# Parser
# ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fips-tsn", description="Wireless-friendly 802.1Qbv scheduling")
    parser.add_argument(
        "--log-level", default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schedule", help="compute a configuration")
    p.add_argument("--network", required=True)
    p.add_argument("--streams", required=True)
    p.add_argument("--mode", default="fips", choices=["fips", "sti", "med", "max"])
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("simulate", help="simulate a configuration and report QoS")
    p.add_argument("--config", required=True)
    p.add_argument("--network", required=True)
    p.add_argument("--streams", required=True)
    p.add_argument("--cycles", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--clip-to-pdb", action="store_true")
    p.add_argument("--trace-out", default=None)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check a configuration or a trace")
    p.add_argument("--config", required=True)
    p.add_argument("--network", required=True)
    p.add_argument("--streams", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--samples", type=int)
    src.add_argument("--trace")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run an experiment")
    p.add_argument("experiment", choices=["reliability", "scalability"])
    p.add_argument("--spec", default=None, help="scenario file; the built-in preset if omitted")
    p.add_argument("--out", required=True)
    p.add_argument("--csv", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--replications", type=int, default=None)
    p.add_argument("--cycles", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s  %(name)s  %(levelname)s  %(message)s",
    )
    if getattr(args, "samples", None) is not None and args.samples < 0:
        print("fips-tsn: error: --samples must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "cycles", None) is not None and args.cycles < 0:
        print("fips-tsn: error: --cycles must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (FipsError, OSError, ValueError) as exc:
        logger.error("%s", exc)
        print(f"fips-tsn: {exc}", file=sys.stderr)
        return EXIT_ERROR
