from scheduler.ordering import (
    Batch,
    MergeCandidate,
    MergeKind,
    TransmissionOrdering,
    insert_frames,
    merge_candidates,
    phi_lower_bound,
)
from scheduler.configuration import (
    GateWindow,
    ScheduleTable,
    TsnConfiguration,
    batch_pdb,
    derive_configuration,
)
from scheduler.feasibility import Verdict, check_feasibility, worst_case_latency
from scheduler.admission import (
    Rejection,
    ScheduleMode,
    ScheduleResult,
    SchedulerOptions,
    admission_key,
    run_admission,
    schedule,
)

__all__ = [
    "Batch",
    "MergeCandidate",
    "MergeKind",
    "TransmissionOrdering",
    "insert_frames",
    "merge_candidates",
    "phi_lower_bound",
    "GateWindow",
    "ScheduleTable",
    "TsnConfiguration",
    "batch_pdb",
    "derive_configuration",
    "Verdict",
    "check_feasibility",
    "worst_case_latency",
    "Rejection",
    "ScheduleMode",
    "ScheduleResult",
    "SchedulerOptions",
    "admission_key",
    "run_admission",
    "schedule",
]
