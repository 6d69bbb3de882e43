"""
Non-fatal input checks run before scheduling.

``build_network`` and the ``Stream`` constructor already reject inputs
that are structurally broken.  ``check_inputs`` looks at the pair and
collects everything else as messages, so the CLI can print all problems
at once instead of failing on the first.
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

from core.errors import InvalidStream
from core.network import NetworkGraph, NodeRole
from core.stream import Stream, validate_stream
from core.timebase import NS_PER_US
from core.validation_result import ValidationResult


def check_inputs(network: NetworkGraph, streams: Sequence[Stream]) -> ValidationResult:
    result = ValidationResult()

    for sid, n in Counter(s.id for s in streams).items():
        if n > 1:
            result.add_error(f"Stream id {sid!r} used {n} times")

    for stream in streams:
        try:
            validate_stream(stream, network)
        except InvalidStream as exc:
            result.add_error(str(exc))
            continue
        if network.role(stream.talker) is not NodeRole.END_STATION:
            result.add_warning(f"Stream {stream.id!r}: talker {stream.talker!r} is not an end station")
        if network.role(stream.listener) is not NodeRole.END_STATION:
            result.add_warning(f"Stream {stream.id!r}: listener {stream.listener!r} is not an end station")
        if stream.latency_bound > stream.period:
            result.add_warning(
                f"Stream {stream.id!r}: latency bound exceeds its period; "
                f"consecutive frames may overlap in the network"
            )
        if stream.phase % NS_PER_US:
            result.add_warning(f"Stream {stream.id!r}: phase is not a whole microsecond")

    for lk in network.wireless_links:
        if not network.has_port((lk.dst, lk.src)):
            result.add_warning(f"Wireless link {lk.src}->{lk.dst} has no reverse direction")

    return result
