"""
Exception hierarchy shared by every package.

Errors raised while building inputs derive from ``ModelError``; errors
that make a single scheduling candidate infeasible derive from
``SchedulingError`` and are turned into rejection reasons by the
admission loop.  Validator findings are not exceptions (see
``sim.validator.Violation``).
"""
from __future__ import annotations


class FipsError(Exception):
    """Base class for all errors raised by this package."""


# ------------------------------------------------------------------
# Model
# ------------------------------------------------------------------

class ModelError(FipsError):
    """Raised when a network or stream description is inconsistent."""


class DuplicateNodeId(ModelError):
    """Raised when two nodes share an id."""


class DuplicateLink(ModelError):
    """Raised when the same directed link is declared twice."""


class DanglingLink(ModelError):
    """Raised when a link references a node that does not exist."""


class MissingHistogram(ModelError):
    """Raised when a wireless link references an unknown histogram."""


class NotEthernet(ModelError):
    """Raised when an Ethernet-only computation is asked of a wireless link."""


class InvalidStream(ModelError):
    """Raised when a stream violates its own invariants or does not fit the graph."""


class HypercycleOverflow(ModelError):
    """Raised when the lcm of stream periods exceeds the supported horizon."""


class NoPath(ModelError):
    """Raised when no directed path joins a talker and a listener."""


# ------------------------------------------------------------------
# Delay budgets
# ------------------------------------------------------------------

class BudgetError(FipsError):
    """Base class for delay-budget allocation errors."""


class UnreachableReliability(BudgetError):
    """Raised when a histogram holds less mass than the requested reliability."""


# ------------------------------------------------------------------
# Scheduling
# ------------------------------------------------------------------

class SchedulingError(FipsError):
    """Base class for errors that make a transmission ordering unschedulable."""


class CyclicDependency(SchedulingError):
    """Raised when the start-time constraints of an ordering form a cycle."""


class HorizonExceeded(SchedulingError):
    """Raised when a schedule does not fit into the hypercycle horizon."""


# ------------------------------------------------------------------
# Simulation / files
# ------------------------------------------------------------------

class SimulationError(FipsError):
    """Base class for simulator errors."""


class ConfigMismatch(SimulationError):
    """Raised when a configuration does not cover the given network and streams."""


class FileFormatError(FipsError):
    """Raised when an input file is malformed or violates its schema."""

    def __init__(self, message: str, *, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
