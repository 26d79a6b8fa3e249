from __future__ import annotations


class AOForgeError(Exception):
    """Base error, carries a machine readable ``code`` for reports."""

    code = "error"

    def __init__(self, message: str = "", code: str | None = None) -> None:
        super().__init__(message)
        self.message = message
        if code:
            self.code = code

    def as_dict(self) -> dict:
        return {"code": self.code, "message": self.message}


class InvalidArgument(AOForgeError, ValueError):
    code = "invalid_argument"


class ResourceLimit(AOForgeError):
    code = "resource_limit"


class ConsistencyError(AOForgeError):
    """A library contract was violated; never raised on valid input."""

    code = "internal_consistency"
