"""
API routes for the scheduling service.

Requests carry the same JSON documents as the CLI files; the service is
stateless, so every call names its network, streams and configuration.
"""
from __future__ import annotations

from typing import Any, Literal, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from core.errors import FipsError
from infrastructure import FileKind, decode, to_json
from services.scheduling_service import SchedulingService


router = APIRouter(prefix="/api")

# Singleton service, created in main.py and attached here
_service: Optional[SchedulingService] = None


def init_service(svc: SchedulingService) -> None:
    global _service
    _service = svc


def svc() -> SchedulingService:
    if _service is None:
        raise RuntimeError("SchedulingService not initialized")
    return _service


# ------------------------------------------------------------------
# Request models
# ------------------------------------------------------------------

class ScheduleRequest(BaseModel):
    network: dict[str, Any]
    streams: dict[str, Any]
    mode: Literal["fips", "sti", "med", "max"] = "fips"
    seed: Optional[int] = None


class SimulateRequest(BaseModel):
    config: dict[str, Any]
    network: dict[str, Any]
    streams: dict[str, Any]
    cycles: int = Field(default=100, ge=0, le=100_000)
    seed: int = 0
    clip_to_pdb: bool = False
    include_trace: bool = False


class VerifyRequest(BaseModel):
    config: dict[str, Any]
    network: dict[str, Any]
    streams: dict[str, Any]
    samples: int = Field(default=100, ge=0, le=100_000)
    seed: int = 0
    trace: Optional[dict[str, Any]] = None


def _inputs(req) -> tuple:
    if req.network.get("histogram_files"):
        raise HTTPException(400, "Histograms must be embedded; file references are not accepted")
    network = decode(req.network, FileKind.NETWORK, source="network")
    streams = decode(req.streams, FileKind.STREAMS, source="streams")
    return network, streams


# ------------------------------------------------------------------
# Endpoints
# ------------------------------------------------------------------

@router.get("/health")
def health():
    return {"status": "ok"}


@router.post("/schedule")
def schedule(req: ScheduleRequest):
    """Run admission and return the configuration with its summary."""
    try:
        network, streams = _inputs(req)
        outcome = svc().schedule(network, streams, req.mode, seed=req.seed)
    except FipsError as e:
        raise HTTPException(422, str(e))
    except ValueError as e:
        raise HTTPException(400, str(e))
    return {
        "summary": outcome.summary(),
        "config": to_json(outcome.config, FileKind.CONFIGURATION),
    }


@router.post("/simulate")
def simulate(req: SimulateRequest):
    try:
        network, streams = _inputs(req)
        config = decode(req.config, FileKind.CONFIGURATION, source="config")
        result = svc().simulate(
            config, network, streams, req.cycles, req.seed,
            clip_to_pdb=req.clip_to_pdb, collect_trace=req.include_trace,
        )
    except FipsError as e:
        raise HTTPException(422, str(e))
    except ValueError as e:
        raise HTTPException(400, str(e))
    body = {"report": to_json(result.report, FileKind.QOS_REPORT)}
    if result.trace is not None:
        body["trace"] = to_json(result.trace, FileKind.TRACE)
    return body


@router.post("/verify")
def verify(req: VerifyRequest):
    """Validate a submitted trace, or clipped simulations of the configuration."""
    try:
        network, streams = _inputs(req)
        config = decode(req.config, FileKind.CONFIGURATION, source="config")
        if req.trace is not None:
            trace = decode(req.trace, FileKind.TRACE, source="trace")
            outcome = svc().verify_trace(trace, config, network, streams)
        else:
            outcome = svc().verify(config, network, streams, req.samples, req.seed)
    except FipsError as e:
        raise HTTPException(422, str(e))
    except ValueError as e:
        raise HTTPException(400, str(e))
    return outcome.summary()
