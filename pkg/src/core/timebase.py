"""
Integer-nanosecond time base.

All schedule quantities are plain ``int`` nanoseconds.  Decimal inputs
such as ``"3.803"`` milliseconds convert exactly; anything that does not
land on a whole nanosecond is rejected instead of rounded.
"""
from __future__ import annotations

from fractions import Fraction
from typing import TypeAlias

TimeNs: TypeAlias = int

NS_PER_US = 1_000
NS_PER_MS = 1_000_000
NS_PER_S = 1_000_000_000

# Largest hypercycle we accept; keeps cycle-shifted times well inside int64.
MAX_HYPERCYCLE_NS = 2**62


def _exact(value: int | str | Fraction, scale: int, unit: str) -> TimeNs:
    q = Fraction(value) * scale
    if q.denominator != 1:
        raise ValueError(f"{value} {unit} is not a whole number of nanoseconds")
    return int(q)


def ms(value: int | str | Fraction) -> TimeNs:
    """Milliseconds → nanoseconds, exactly (``ms("3.803") == 3_803_000``)."""
    return _exact(value, NS_PER_MS, "ms")


def us(value: int | str | Fraction) -> TimeNs:
    """Microseconds → nanoseconds, exactly."""
    return _exact(value, NS_PER_US, "us")


def to_ms(t: TimeNs) -> float:
    """For human-readable output only."""
    return t / NS_PER_MS


def ceil_div(num: int, den: int) -> int:
    return -(-num // den)
