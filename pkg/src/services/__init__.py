from services.scheduling_service import ScheduleOutcome, SchedulingService, VerifyOutcome

__all__ = ["ScheduleOutcome", "SchedulingService", "VerifyOutcome"]
