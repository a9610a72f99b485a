"""
Utilities for icotri.

Provides the error hierarchy and a few small label/JSON helpers shared by
the complex, group and move modules.
"""

import json
from typing import Dict, Any, Optional, List


class IcotriError(Exception):
    """Base exception for icotri errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


class InvalidFaceError(IcotriError):
    """A simplex was expected to be a face of the complex but is not."""

    def __init__(self, simplex: Any, complex_name: str = ""):
        details = {"simplex": str(simplex)}
        if complex_name:
            details["complex"] = complex_name
        super().__init__("not a face", details)
        self.simplex = simplex


class NotPureError(IcotriError):
    """Operation requires a pure complex."""

    def __init__(self, dimensions: Optional[List[int]] = None):
        super().__init__("not pure", {"facet_dimensions": dimensions or []})


class ComplexConstructionError(IcotriError):
    """A complex, sphere, ball, join or orbit closure could not be built."""
    pass


class ComplexFormatError(IcotriError):
    """Malformed complex or script JSON."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        path: Optional[str] = None
    ):
        details = {}
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        if path:
            details["path"] = path
        super().__init__(message, details)
        self.line = line
        self.column = column


class GroupError(IcotriError):
    """Invalid permutation or group input."""
    pass


class ImpureActionError(IcotriError):
    """The group action violates purity, so no simplicial quotient exists."""

    def __init__(self, report: Any):
        witness = report.failing_condition
        details = {}
        if witness is not None:
            details = {
                "condition": witness.condition,
                "orbit": [str(v) for v in witness.orbit],
                "simplex": [str(v) for v in witness.simplex],
            }
        super().__init__("impure action", details)
        self.report = report


class InvalidMoveError(IcotriError):
    """A bistellar move, starring or GBM precondition failed."""
    pass


class ScriptError(IcotriError):
    """A move script aborted at a step."""

    def __init__(self, message: str, step: int, script: str = "", cause: Optional[Exception] = None):
        details: Dict[str, Any] = {"step": step}
        if script:
            details["script"] = script
        if cause is not None:
            details["cause"] = getattr(cause, "message", str(cause))
        super().__init__(message, details)
        self.step = step
        self.cause = cause


class CatalogError(IcotriError):
    """Unknown catalog entry or a recipe that failed its validation."""
    pass


class IcosahedronError(IcotriError):
    """Input is not an icosahedron, or a triangle correspondence is not unique."""
    pass


class SubdivisionError(IcotriError):
    """A complex failed its subdivision certificate."""
    pass


class UnknownClaimError(IcotriError):
    """Requested claim id is not registered."""

    def __init__(self, claim_id: str, known: List[str]):
        super().__init__(f"unknown claim '{claim_id}'", {"known": known})
        self.claim_id = claim_id


def load_json_text(text: str, path: Optional[str] = None) -> Any:
    """
    Parse JSON text, converting decode failures into ComplexFormatError.

    Args:
        text: Raw JSON document
        path: Optional file path used in the error details

    Returns:
        Decoded JSON value

    Examples:
        >>> load_json_text('{"a": 1}')
        {'a': 1}
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ComplexFormatError(f"parse error: {e.msg}", line=e.lineno, column=e.colno, path=path)


def require_keys(payload: Dict[str, Any], keys: List[str], what: str) -> None:
    """Raise ComplexFormatError if any of `keys` is missing from `payload`."""
    if not isinstance(payload, dict):
        raise ComplexFormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in payload]
    if missing:
        raise ComplexFormatError(f"{what} is missing keys: {', '.join(missing)}")
