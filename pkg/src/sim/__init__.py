from sim.sampling import sample_delay, sample_histogram
from sim.gates import GateSchedule
from sim.trace import DropEvent, FrameKey, Trace, TraceRecord
from sim.qos import QosAccumulator, QosReport, StreamTally, measure_qos
from sim.engine import SimulationOptions, SimulationResult, Simulator, run_hypercycles
from sim.validator import Constraint, Violation, validate_trace

__all__ = [
    "sample_delay",
    "sample_histogram",
    "GateSchedule",
    "DropEvent",
    "FrameKey",
    "Trace",
    "TraceRecord",
    "QosAccumulator",
    "QosReport",
    "StreamTally",
    "measure_qos",
    "SimulationOptions",
    "SimulationResult",
    "Simulator",
    "run_hypercycles",
    "Constraint",
    "Violation",
    "validate_trace",
]
