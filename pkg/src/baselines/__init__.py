from baselines.scalar import SCHEDULER_MODES, schedule_by_name, schedule_scalar, scalar_pdb_provider

__all__ = ["SCHEDULER_MODES", "schedule_by_name", "schedule_scalar", "scalar_pdb_provider"]
