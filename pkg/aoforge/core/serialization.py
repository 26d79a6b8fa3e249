from __future__ import annotations

from pathlib import Path
from typing import Any

from rest_framework import renderers, serializers
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser

from aoforge.core.exceptions import InvalidArgument
from aoforge.core.utils import jsonable


def flatten_errors(errors: Any, prefix: str = "") -> list[str]:
    if isinstance(errors, dict):
        messages = []
        for field, value in errors.items():
            name = field if field != "non_field_errors" else ""
            messages.extend(flatten_errors(value, f"{prefix}{name}: " if name else prefix))
        return messages
    if isinstance(errors, list):
        return [message for item in errors for message in flatten_errors(item, prefix)]
    return [f"{prefix}{errors}"]


def deserialize(serializer_class: type[serializers.Serializer], data: Any, context: dict | None = None) -> Any:
    """Validate ``data`` and build the library value; validation errors become InvalidArgument."""
    serializer = serializer_class(data=data, context=context or {})
    if not serializer.is_valid():
        raise InvalidArgument("; ".join(flatten_errors(serializer.errors)))
    return serializer.save()


def read_json(path: str | Path) -> Any:
    try:
        with open(path, "rb") as stream:
            return JSONParser().parse(stream)
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}")
    except ParseError as exc:
        raise InvalidArgument(f"{path}: {exc.detail}")


def render_json(data: Any, indent: int | None = 2) -> bytes:
    return renderers.JSONRenderer().render(jsonable(data), renderer_context={"indent": indent})
