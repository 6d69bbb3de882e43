"""
File I/O — read a JSON file into a domain object, write one back.

Load flow:
    file (plain or .gz) → json.loads → schema.model_validate → decode
    JSON syntax error   → FileFormatError(location="path:line:col")
    schema violation    → FileFormatError(location="path:field.path")

Save flow:
    encode → model_dump(mode="json") → json.dumps(indent=2) → atomic write

Output is deterministic: codecs emit sorted lists and the JSON keys
follow the schema field order.
"""
from __future__ import annotations

import gzip
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from core.errors import FileFormatError

import infrastructure.registrations  # noqa: F401  (side-effect: populates the registry)
from infrastructure.registry import FileKind, get_handler

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------
# File helpers (plain text or gzip)
# ------------------------------------------------------------------

def _is_gz(path: Path) -> bool:
    return path.suffix == ".gz"


def _read_text(path: Path) -> str:
    if _is_gz(path):
        with gzip.open(path, "rt", encoding="utf-8") as f:
            return f.read()
    return path.read_text(encoding="utf-8")


def _write_text(path: Path, content: str) -> None:
    """Write *content* atomically: write to a temp file then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(suffix=".tmp.gz" if _is_gz(path) else ".tmp", dir=str(path.parent))
    try:
        os.close(fd)
        if _is_gz(path):
            # an empty name and mtime=0 keep the gzip header identical across runs
            with open(tmp, "wb") as raw, gzip.GzipFile(filename="", fileobj=raw, mode="wb", mtime=0) as gz:
                gz.write(content.encode("utf-8"))
        else:
            Path(tmp).write_text(content, encoding="utf-8")
        os.replace(tmp, str(path))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ------------------------------------------------------------------
# Parse / dump
# ------------------------------------------------------------------

def _field_path(loc: tuple) -> str:
    return ".".join(str(p) for p in loc) or "<root>"


def parse_model(text: str, kind: FileKind, source: str = "<input>") -> BaseModel:
    """Validate JSON text against the schema of ``kind``."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, location=f"{source}:{exc.lineno}:{exc.colno}") from None
    return validate_model(raw, kind, source)


def validate_model(raw: Any, kind: FileKind, source: str = "<input>") -> BaseModel:
    try:
        return get_handler(kind).model.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise FileFormatError(
            f"{first['msg']} ({exc.error_count()} error(s))",
            location=f"{source}:{_field_path(first['loc'])}",
        ) from None


def decode(raw: Any, kind: FileKind, base: Path | None = None, source: str = "<input>") -> Any:
    """Schema-validate an already parsed document and build the domain object."""
    model = validate_model(raw, kind, source)
    return get_handler(kind).decode(model, base)


def dumps(obj: Any, kind: FileKind) -> str:
    model = get_handler(kind).encode(obj)
    return json.dumps(model.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


def to_json(obj: Any, kind: FileKind) -> dict:
    return get_handler(kind).encode(obj).model_dump(mode="json")


# ------------------------------------------------------------------
# Load / save
# ------------------------------------------------------------------

def load(file_path: str | Path, kind: FileKind) -> Any:
    """Read a file of the given kind and return the domain object."""
    path = Path(file_path)
    model = parse_model(_read_text(path), kind, str(path))
    obj = get_handler(kind).decode(model, path.parent)
    logger.info("Loaded %s from %s", kind.value, path)
    return obj


def save(obj: Any, file_path: str | Path, kind: FileKind) -> None:
    path = Path(file_path)
    _write_text(path, dumps(obj, kind))
    logger.info("Saved %s to %s", kind.value, path)
