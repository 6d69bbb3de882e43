from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class CheckStatus(Enum):
    """Outcome of an input check."""
    OK = "ok"              # nothing to report
    WARNING = "warning"    # usable, but probably not what was intended
    ERROR = "error"        # inputs cannot be scheduled as given


@dataclass(slots=True)
class ValidationResult:
    """
    Outcome of checking a network and stream set before scheduling.

    ``status`` is derived in ``__post_init__`` from the messages present at
    construction time; ``add_error`` / ``add_warning`` keep it current
    afterwards.
    """
    status: CheckStatus = CheckStatus.OK
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status != CheckStatus.OK and (self.errors or self.warnings):
            raise ValueError(
                f"Cannot pass status={self.status!r} together with errors/warnings; "
                f"the status is derived from the messages."
            )
        self._refresh()

    def _refresh(self) -> None:
        if self.errors:
            self.status = CheckStatus.ERROR
        elif self.warnings:
            self.status = CheckStatus.WARNING

    def add_error(self, message: str) -> None:
        self.errors.append(message)
        self._refresh()

    def add_warning(self, message: str) -> None:
        self.warnings.append(message)
        self._refresh()

    @property
    def is_valid(self) -> bool:
        return len(self.errors) == 0

    def __bool__(self) -> bool:
        return self.is_valid
