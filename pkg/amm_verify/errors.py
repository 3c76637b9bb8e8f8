# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/errors.py

"""Exception hierarchy for amm-verify.

Each exception stores structured data that callers can inspect
programmatically. Resource errors additionally render a single
machine-parsable line used by the command-line surface; they are never
turned into mathematical verdicts.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Optional


class AmmError(Exception):
    """Base exception for all amm-verify errors.

    Attributes:
        error_code: Machine-readable identifier for the error category.
        context: JSON-able metadata describing the failure.
    """

    error_code: str = "AMM_ERROR"

    def __init__(
        self, message: str, *, context: Optional[Dict[str, Any]] = None
    ) -> None:
        self.message = message
        self.context = context or {}
        super().__init__(f"[{self.error_code}] {message}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error_code": self.error_code,
            "message": self.message,
            "context": self.context,
        }

    def to_json(self, *, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)


class ValidationError(AmmError):
    """Raised when an argument violates an operation's precondition.

    Attributes:
        field: Name of the offending argument.
        value: The value that was supplied (if available).
        expected: Description of what was expected (if available).
        reason: Free-form explanation (if available).
    """

    error_code: str = "VALIDATION_ERROR"

    def __init__(
        self,
        field: str,
        value: Any = None,
        expected: Optional[str] = None,
        *,
        reason: Optional[str] = None,
    ) -> None:
        self.field = field
        self.value = value
        self.expected = expected
        self.reason = reason

        if reason:
            msg = f"Validation failed for '{field}': {reason}"
        elif expected:
            msg = f"Validation failed for '{field}': expected {expected}, got {value!r}"
        else:
            msg = f"Validation failed for '{field}'"
        super().__init__(
            msg,
            context={"field": field, "value": repr(value), "expected": expected},
        )


class ResourceError(AmmError):
    """Raised when a computation would exceed a configured budget.

    Attributes:
        resource: Name of the exhausted budget (``width``, ``scan_steps``...).
        required: What the computation needed.
        limit: The configured ceiling.
    """

    error_code: str = "RESOURCE_ERROR"

    def __init__(self, resource: str, required: Any, limit: Any) -> None:
        self.resource = resource
        self.required = required
        self.limit = limit
        super().__init__(
            f"{resource} budget exceeded: required {required}, limit {limit}",
            context={"resource": resource, "required": required, "limit": limit},
        )

    def reason_line(self) -> str:
        return (
            f"resource-error code={self.error_code} resource={self.resource} "
            f"required={self.required} limit={self.limit}"
        )


class WidthCapError(ResourceError):
    """A residue width beyond the supported multi-limb cap was requested."""

    error_code: str = "WIDTH_CAP"

    def __init__(self, required: int, limit: int) -> None:
        super().__init__("width_bits", required, limit)


class OracleBoundError(ResourceError):
    """The exact oracle was asked for an index beyond its configured bound."""

    error_code: str = "ORACLE_BOUND"

    def __init__(self, required: int, limit: int) -> None:
        super().__init__("oracle_n", required, limit)


class EscalationCapError(ResourceError):
    """Every residue width up to the cap vanished; the valuation is unknown."""

    error_code: str = "ESCALATION_CAP"

    def __init__(self, required: str, limit: int) -> None:
        super().__init__("escalation_bits", required, limit)


class ScanBudgetError(ResourceError):
    """A residue scan period exceeds the step budget."""

    error_code: str = "SCAN_BUDGET"

    def __init__(self, required_bits: int, limit_bits: int) -> None:
        super().__init__(
            "scan_steps", f"2^{required_bits}", f"2^{limit_bits}"
        )
        self.required_bits = required_bits
        self.limit_bits = limit_bits


class LevelCapError(ResourceError):
    """The verification level needed exceeds the configured maximum."""

    error_code: str = "LEVEL_CAP"

    def __init__(self, required: int, limit: int) -> None:
        super().__init__("level", required, limit)


class CertificateError(AmmError):
    """Raised when a certificate file cannot be parsed or is inconsistent."""

    error_code: str = "CERTIFICATE_ERROR"


__all__ = [
    "AmmError",
    "ValidationError",
    "ResourceError",
    "WidthCapError",
    "OracleBoundError",
    "EscalationCapError",
    "ScanBudgetError",
    "LevelCapError",
    "CertificateError",
]
