"""Tests for the amm-verify error hierarchy."""

import json

import pytest

from amm_verify.errors import (AmmError, CertificateError, EscalationCapError,
                               LevelCapError, OracleBoundError, ResourceError,
                               ScanBudgetError, ValidationError, WidthCapError)

# ---------------------------------------------------------------------------
# Base class
# ---------------------------------------------------------------------------


class TestAmmError:
    def test_creation(self):
        error = AmmError("something went wrong")
        assert error.message == "something went wrong"
        assert error.error_code == "AMM_ERROR"
        assert str(error) == "[AMM_ERROR] something went wrong"

    def test_context_defaults_to_empty(self):
        assert AmmError("x").context == {}

    def test_to_json(self):
        error = AmmError("boom", context={"k": 5})
        data = json.loads(error.to_json())
        assert data == {
            "error_code": "AMM_ERROR",
            "message": "boom",
            "context": {"k": 5},
        }


# ---------------------------------------------------------------------------
# ValidationError
# ---------------------------------------------------------------------------


class TestValidationError:
    def test_with_expected(self):
        error = ValidationError("z", 0, expected="positive integer")
        assert error.error_code == "VALIDATION_ERROR"
        assert error.field == "z"
        assert error.value == 0
        assert "positive integer" in str(error)

    def test_with_reason(self):
        error = ValidationError("ell", 0, reason="s is negative")
        assert error.reason == "s is negative"
        assert "s is negative" in str(error)

    def test_minimal(self):
        error = ValidationError("x")
        assert error.value is None
        assert error.expected is None

    def test_inherits_from_base(self):
        assert isinstance(ValidationError("x"), AmmError)


# ---------------------------------------------------------------------------
# Resource errors
# ---------------------------------------------------------------------------


class TestResourceErrors:
    @pytest.mark.parametrize(
        "error, code, resource",
        [
            (WidthCapError(600, 512), "WIDTH_CAP", "width_bits"),
            (OracleBoundError(3000, 2000), "ORACLE_BOUND", "oracle_n"),
            (EscalationCapError(">512", 512), "ESCALATION_CAP", "escalation_bits"),
            (LevelCapError(30, 24), "LEVEL_CAP", "level"),
        ],
    )
    def test_codes(self, error, code, resource):
        assert isinstance(error, ResourceError)
        assert error.error_code == code
        assert error.resource == resource

    def test_reason_line(self):
        line = ScanBudgetError(36, 34).reason_line()
        assert line == (
            "resource-error code=SCAN_BUDGET resource=scan_steps "
            "required=2^36 limit=2^34"
        )

    def test_scan_budget_bits(self):
        error = ScanBudgetError(36, 34)
        assert error.required_bits == 36
        assert error.limit_bits == 34

    def test_certificate_error_is_not_resource(self):
        error = CertificateError("bad file")
        assert not isinstance(error, ResourceError)
        assert error.error_code == "CERTIFICATE_ERROR"
