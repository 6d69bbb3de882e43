"""
FastAPI application entry point.

Run:  python -m uvicorn app.main:app --port 8000
"""
from __future__ import annotations

import logging

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s  %(name)s  %(levelname)s  %(message)s",
)

from fastapi import FastAPI

from services.scheduling_service import SchedulingService
from app.routes import router, init_service

app = FastAPI(title="FIPS TSN scheduler")

init_service(SchedulingService())

app.include_router(router)
