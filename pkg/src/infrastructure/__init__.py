from infrastructure.registry import FileKind, FileKindHandler, register, get_handler
from infrastructure.file_io import decode, dumps, load, parse_model, save, to_json

__all__ = [
    "FileKind",
    "FileKindHandler",
    "register",
    "get_handler",
    "decode",
    "dumps",
    "load",
    "parse_model",
    "save",
    "to_json",
]
