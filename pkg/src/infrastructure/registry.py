"""
Registry — maps FileKind to the schema and codec for that kind of file.

Adding a new file kind requires:
1. Add an enum value to ``FileKind``
2. Write the pydantic model and the codec functions
3. Add one ``register()`` call in ``registrations.py``

``file_io`` and the rest of the system discover handlers through
``get_handler()``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Generic, Optional, TypeVar

from pydantic import BaseModel

T = TypeVar("T")


class FileKind(Enum):
    NETWORK = "network"
    STREAMS = "streams"
    HISTOGRAM = "histogram"
    CONFIGURATION = "configuration"
    TRACE = "trace"
    QOS_REPORT = "report"
    SCENARIO = "scenario"
    RELIABILITY_REPORT = "reliability-report"
    SCALABILITY_REPORT = "scalability-report"


@dataclass(frozen=True, slots=True)
class FileKindHandler(Generic[T]):
    """Schema plus the two conversions for one file kind.

    ``decode`` receives the directory of the file being read so that
    relative references inside it can be resolved.
    """
    model: type[BaseModel]
    encode: Callable[[T], BaseModel]
    decode: Callable[[Any, Optional[Path]], T]


_handlers: dict[FileKind, FileKindHandler[Any]] = {}


def register(kind: FileKind, handler: FileKindHandler[Any]) -> None:
    """Register a handler for a file kind.  Raises on duplicates."""
    if kind in _handlers:
        raise ValueError(f"Handler already registered for {kind!r}")
    _handlers[kind] = handler


def get_handler(kind: FileKind) -> FileKindHandler[Any]:
    """Look up the handler for a file kind.  Raises on missing."""
    try:
        return _handlers[kind]
    except KeyError:
        raise ValueError(
            f"No handler registered for {kind!r}. "
            f"Did you forget to add a register() call in registrations.py?"
        ) from None
