# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/certificate.py

"""Serializable proof certificates.

The JSON layout is versioned; optional fields are omitted when empty so a
certificate reads the same as the documented schema.
"""

from __future__ import annotations

import enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from .errors import CertificateError

CERTIFICATE_VERSION = "1"


class FindingStatus(str, enum.Enum):
    NONCONSTANT_BRANCHING = "nonconstant_branching"
    CONSTANT_CLASS = "constant_class"
    UNRESOLVED = "unresolved"


class Outcome(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class ScanEvidence(BaseModel):
    """Scan verdicts backing a branching finding.

    ``zero_ell`` is None when constancy at ell = 0 comes from the Kwong
    congruence rather than a scan.
    """

    model_config = ConfigDict(frozen=True)

    zero_ell: Optional[int] = None
    nonzero_ell: int
    nonzero_witness: Optional[int] = None


class ResidueFinding(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int = Field(ge=0)
    status: FindingStatus
    ell: Optional[int] = Field(default=None, ge=0)
    value: Optional[int] = Field(default=None, ge=0)
    witness: Optional[Tuple[int, int]] = None
    evidence: Optional[ScanEvidence] = None
    fallback: bool = False
    reason: Optional[str] = None

    @model_validator(mode="after")
    def _check_status_fields(self) -> "ResidueFinding":
        if self.status is FindingStatus.NONCONSTANT_BRANCHING and self.ell is None:
            raise ValueError("branching findings carry ell")
        if self.status is FindingStatus.CONSTANT_CLASS and self.value is None:
            raise ValueError("constant findings carry value")
        return self


class LevelAudit(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    nonconstant: List[int]
    violations: List[int] = Field(default_factory=list)


class ScanBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    modulus_bits: int = 0
    period_bits: int = 0
    steps: int = 0


class Refutation(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    m: int
    nonconstant_children: int


class ProofCertificate(BaseModel):
    """Record of one verification run for a fixed k."""

    model_config = ConfigDict(frozen=True)

    version: str = CERTIFICATE_VERSION
    k: int = Field(ge=5)
    b_k: int
    nu2_k_factorial: int
    M: int = Field(ge=0)
    mu_k: Optional[int] = None
    M_k: Optional[int] = None
    outcome: Outcome
    findings: List[ResidueFinding] = Field(default_factory=list)
    small_levels: List[LevelAudit] = Field(default_factory=list)
    scan: ScanBudget = Field(default_factory=ScanBudget)
    uniform_ell: Optional[int] = None
    max_ell: int = Field(ge=0)
    refutation: Optional[Refutation] = None
    reason: Optional[str] = None
    elapsed_ms: int = 0

    def finding(self, j: int) -> ResidueFinding:
        for finding in self.findings:
            if finding.j == j:
                return finding
        raise KeyError(j)

    def by_status(self, status: FindingStatus) -> List[ResidueFinding]:
        return [f for f in self.findings if f.status is status]

    def without_timing(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"elapsed_ms"})

    def to_json(self, *, indent: Optional[int] = 2) -> str:
        return self.model_dump_json(indent=indent, exclude_none=True)

    @classmethod
    def from_json(cls, json_str: str) -> "ProofCertificate":
        try:
            cert = cls.model_validate_json(json_str)
        except PydanticValidationError as exc:
            raise CertificateError(
                f"malformed certificate: {exc.error_count()} error(s)",
                context={"errors": exc.errors(include_url=False)},
            ) from exc
        if cert.version != CERTIFICATE_VERSION:
            raise CertificateError(
                f"unsupported certificate version {cert.version!r}",
                context={"version": cert.version},
            )
        return cert


__all__ = [
    "CERTIFICATE_VERSION",
    "FindingStatus",
    "Outcome",
    "ScanEvidence",
    "ResidueFinding",
    "LevelAudit",
    "ScanBudget",
    "Refutation",
    "ProofCertificate",
]
