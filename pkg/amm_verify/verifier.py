# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/verifier.py

"""Verification pipeline for a fixed k.

For each level candidate the verifier enumerates the non-constant classes,
searches an ell for each of them from the residue scans, decides every other
class directly, audits the lower levels and records everything in a
:class:`ProofCertificate`.
"""

from __future__ import annotations

import logging
import threading
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .certificate import (FindingStatus, LevelAudit, Outcome, ProofCertificate,
                          Refutation, ResidueFinding, ScanBudget, ScanEvidence)
from .classes import (MIN_K, CongruenceClass, children, classify_level,
                      direct_decision_applies, enumerate_nkm, nu_constancy)
from .config import get_config, update_config
from .errors import LevelCapError, ResourceError, ValidationError
from .fcheck import FParams, FScanResult, ScanVerdict, scan_residues
from .mod2 import nu2_factorial
from .stirling import kwong_slack, nu2_stirling

logger = logging.getLogger("amm_verify.verifier")


class VerifyOptions(BaseModel):
    """Knobs for one verification run; unset fields fall back to the config."""

    model_config = ConfigDict(frozen=True)

    max_ell: int = Field(ge=0)
    budget_bits: int = Field(ge=1)
    oracle_bound: int = Field(ge=0)
    max_level: int = Field(ge=1)
    threads: Optional[int] = Field(default=None, ge=1)

    @classmethod
    def from_config(cls, **overrides: Optional[int]) -> "VerifyOptions":
        config = get_config()
        values = {
            "max_ell": config.verifier.max_ell,
            "budget_bits": config.scan.budget_bits,
            "oracle_bound": config.arithmetic.oracle_bound,
            "max_level": config.verifier.max_level,
            "threads": config.threads,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def _scan_level_ok(m: int, s: int) -> bool:
    return m >= s + 1 and (1 << m) - m >= s + 3


def choose_level(k: int, max_ell: int) -> int:
    """Smallest level at which every scan up to ``max_ell + 1`` is meaningful."""
    if k < MIN_K:
        raise ValidationError("k", k, expected=f"integer >= {MIN_K}")
    if max_ell < 0:
        raise ValidationError("max_ell", max_ell, expected="nonnegative integer")
    b_k = kwong_slack(k)
    s = nu2_factorial(k) + max_ell + 1 - b_k - 3
    m = max(1, b_k)
    while not (direct_decision_applies(k, m) and _scan_level_ok(m, s)):
        m += 1
    return m


class ScanCache:
    """Scans keyed by ``(k, ell, level)``, shared across residues."""

    def __init__(
        self, *, budget_bits: int, threads: Optional[int] = None
    ) -> None:
        self.budget_bits = budget_bits
        self.threads = threads
        self._lock = threading.Lock()
        self._scans: Dict[Tuple[int, int, int], FScanResult] = {}
        self.largest = ScanBudget()

    def get(self, k: int, ell: int, level: int) -> FScanResult:
        key = (k, ell, level)
        with self._lock:
            cached = self._scans.get(key)
        if cached is not None:
            return cached

        result = scan_residues(
            FParams.for_ell(k, ell),
            level,
            workers=self.threads,
            budget_bits=self.budget_bits,
        )
        with self._lock:
            self._scans[key] = result
            if result.period_bits > self.largest.period_bits:
                self.largest = ScanBudget(
                    modulus_bits=result.params.modulus_bits,
                    period_bits=result.period_bits,
                    steps=result.steps,
                )
        return result


def _scan_pair(
    k: int, level: int, j: int, ell: int, cache: ScanCache
) -> Optional[ScanEvidence]:
    """Evidence that ell satisfies both branching conditions for ``j``."""
    if ell > 0 and cache.get(k, ell, level).verdict(j) is not ScanVerdict.ALL_ZERO:
        return None
    upper = cache.get(k, ell + 1, level)
    if upper.verdict(j) is not ScanVerdict.ALL_NONZERO:
        return None
    mask = upper.classification_modulus - 1
    return ScanEvidence(
        zero_ell=ell if ell > 0 else None,
        nonzero_ell=ell + 1,
        nonzero_witness=upper.nonzero_witness[j & mask],
    )


def find_ell(
    k: int,
    M: int,
    j: int,
    max_ell: int,
    *,
    cache: Optional[ScanCache] = None,
) -> Optional[int]:
    """Smallest ell with constancy mod ``2^(M-b_k+ell)`` and not one power higher.

    ell = 0 needs no scan for the first condition. Returns None when no ell up
    to ``max_ell`` qualifies; scan resource errors propagate.
    """
    found = _find_ell_evidence(k, M, j, max_ell, cache)
    return None if found is None else found[0]


def _find_ell_evidence(
    k: int, M: int, j: int, max_ell: int, cache: Optional[ScanCache]
) -> Optional[Tuple[int, ScanEvidence]]:
    if cache is None:
        cache = ScanCache(budget_bits=get_config().scan.budget_bits)
    for ell in range(max_ell + 1):
        evidence = _scan_pair(k, M, j, ell, cache)
        if evidence is not None:
            return ell, evidence
    return None


def _informational_ell(
    k: int, M: int, j: int, max_ell: int, cache: ScanCache
) -> Optional[int]:
    for ell in range(max_ell + 1):
        try:
            if _scan_pair(k, M, j, ell, cache) is not None:
                return ell
        except ResourceError:
            return None
    return None


def _proof_scan(
    k: int, M: int, findings: List[ResidueFinding], cache: ScanCache
) -> Optional[FScanResult]:
    """The scan at one above the largest recorded branching ell."""
    ells = [
        f.ell
        for f in findings
        if f.status is FindingStatus.NONCONSTANT_BRANCHING
    ]
    if not ells:
        return None
    return cache.get(k, max(ells) + 1, M)


def _mark_fallback(
    k: int, M: int, findings: List[ResidueFinding], cache: ScanCache
) -> List[ResidueFinding]:
    """Flag constant classes on which the proof scan is not nonzero.

    Those are the classes that must be shown constant directly rather
    than through the scan.
    """
    scan = _proof_scan(k, M, findings, cache)
    if scan is None:
        return findings
    marked = []
    for f in findings:
        if (
            f.status is FindingStatus.CONSTANT_CLASS
            and scan.verdict(f.j) is not ScanVerdict.ALL_NONZERO
        ):
            f = f.model_copy(update={"fallback": True})
        marked.append(f)
    return marked


def uniform_ell(k: int, M: int, max_ell: int, cache: ScanCache) -> Optional[int]:
    """Smallest scan ell whose sum is nonzero for every n, if any."""
    for ell in range(1, max_ell + 2):
        try:
            if cache.get(k, ell, M).all_nonzero():
                return ell
        except ResourceError:
            return None
    return None


def _nonconstant_children(cls: CongruenceClass, k: int) -> int:
    return sum(1 for c in children(cls) if not nu_constancy(c, k).constant)


def small_level_report(
    k: int, M: int, threads: Optional[int] = None
) -> List[LevelAudit]:
    """N_{k,m} and the one-non-constant-child check for ``1 <= m < M``."""
    if M < 1:
        raise ValidationError("M", M, expected="integer >= 1")
    audits = []
    for m in range(1, M):
        nonconstant = enumerate_nkm(k, m, threads)
        violations = [
            n
            for n in nonconstant
            if _nonconstant_children(CongruenceClass(n, m), k) != 1
        ]
        if violations:
            logger.info("k=%d level %d branching violations: %s", k, m, violations)
        audits.append(
            LevelAudit(m=m, nonconstant=nonconstant, violations=violations)
        )
    return audits


def _stabilization_level(audits: List[LevelAudit], mu: int, M: int) -> int:
    m_k = M
    for audit in reversed(audits):
        if len(audit.nonconstant) != mu or audit.violations:
            break
        m_k = audit.m
    return m_k


def _inconclusive(
    k: int, M: int, options: VerifyOptions, error: ResourceError, started: float
) -> ProofCertificate:
    logger.info("k=%d inconclusive: %s", k, error.reason_line())
    return ProofCertificate(
        k=k,
        b_k=kwong_slack(k),
        nu2_k_factorial=nu2_factorial(k),
        M=M,
        outcome=Outcome.INCONCLUSIVE,
        max_ell=options.max_ell,
        reason=error.reason_line(),
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )


@contextmanager
def _oracle_bound(bound: int) -> Iterator[None]:
    previous = get_config().arithmetic.oracle_bound
    update_config(arithmetic={"oracle_bound": bound})
    try:
        yield
    finally:
        update_config(arithmetic={"oracle_bound": previous})


def verify_amm(
    k: int, options: Optional[VerifyOptions] = None
) -> ProofCertificate:
    """Run the full verification for ``k`` and return its certificate."""
    if k < MIN_K:
        raise ValidationError("k", k, expected=f"integer >= {MIN_K}")
    options = options or VerifyOptions.from_config()
    started = time.perf_counter()

    with _oracle_bound(options.oracle_bound):
        return _verify(k, options, started)


def _verify(k: int, options: VerifyOptions, started: float) -> ProofCertificate:
    cache = ScanCache(budget_bits=options.budget_bits, threads=options.threads)
    M = 0
    ells: Dict[int, Optional[Tuple[int, ScanEvidence]]] = {}
    unresolved_reason: Dict[int, str] = {}
    try:
        for ell_try in range(options.max_ell + 1):
            M = choose_level(k, ell_try)
            if M > options.max_level:
                raise LevelCapError(M, options.max_level)
            verdicts = classify_level(k, M, options.threads)
            nonconstant = sorted(n for n, v in verdicts.items() if not v.constant)
            logger.info(
                "k=%d ell<=%d: level M=%d, #N=%d", k, ell_try, M, len(nonconstant)
            )

            ells, unresolved_reason = {}, {}
            exhausted = False
            for j in nonconstant:
                try:
                    ells[j] = _find_ell_evidence(k, M, j, ell_try, cache)
                except ResourceError as exc:
                    ells[j] = None
                    unresolved_reason[j] = exc.reason_line()
                    exhausted = True
            if exhausted or all(v is not None for v in ells.values()):
                break
    except ResourceError as exc:
        return _inconclusive(k, M, options, exc, started)

    try:
        findings: List[ResidueFinding] = []
        for j in range(k, k + (1 << M)):
            verdict = verdicts[j]
            if not verdict.constant:
                found = ells[j]
                if found is None:
                    reason = unresolved_reason.get(
                        j, f"no ell <= {options.max_ell} satisfies both conditions"
                    )
                    findings.append(
                        ResidueFinding(
                            j=j,
                            status=FindingStatus.UNRESOLVED,
                            witness=verdict.witness,
                            reason=reason,
                        )
                    )
                else:
                    findings.append(
                        ResidueFinding(
                            j=j,
                            status=FindingStatus.NONCONSTANT_BRANCHING,
                            ell=found[0],
                            witness=verdict.witness,
                            evidence=found[1],
                        )
                    )
            else:
                findings.append(
                    ResidueFinding(
                        j=j,
                        status=FindingStatus.CONSTANT_CLASS,
                        value=verdict.value,
                        ell=_informational_ell(
                            k, M, j, options.max_ell, cache
                        ),
                    )
                )
        findings = _mark_fallback(k, M, findings, cache)

        nonconstant = [
            f.j for f in findings if f.status is not FindingStatus.CONSTANT_CLASS
        ]
        mu_k = len(nonconstant)
        audits = small_level_report(k, M, options.threads)
        m_k = _stabilization_level(audits, mu_k, M)

        refutation = None
        for n in nonconstant:
            count = _nonconstant_children(CongruenceClass(n, M), k)
            if count != 1:
                refutation = Refutation(n=n, m=M, nonconstant_children=count)
                break

        uniform = uniform_ell(k, M, options.max_ell, cache)
    except ResourceError as exc:
        return _inconclusive(k, M, options, exc, started)

    unresolved = [f for f in findings if f.status is FindingStatus.UNRESOLVED]
    if refutation is not None:
        outcome = Outcome.REFUTED
        reason = (
            f"class {refutation.n} mod 2^{refutation.m} has "
            f"{refutation.nonconstant_children} non-constant children"
        )
    elif unresolved:
        outcome = Outcome.INCONCLUSIVE
        reason = unresolved[0].reason
    else:
        outcome = Outcome.VERIFIED
        reason = None

    logger.info(
        "k=%d %s: M=%d mu=%d M_k=%d uniform_ell=%s",
        k, outcome.value, M, mu_k, m_k, uniform,
    )
    return ProofCertificate(
        k=k,
        b_k=kwong_slack(k),
        nu2_k_factorial=nu2_factorial(k),
        M=M,
        mu_k=mu_k,
        M_k=m_k,
        outcome=outcome,
        findings=findings,
        small_levels=audits,
        scan=cache.largest,
        uniform_ell=uniform,
        max_ell=options.max_ell,
        refutation=refutation,
        reason=reason,
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )


def check_certificate(
    cert: ProofCertificate, options: Optional[VerifyOptions] = None
) -> List[str]:
    """Re-derive every finding of ``cert``; returns the problems found."""
    options = options or VerifyOptions.from_config()
    with _oracle_bound(options.oracle_bound):
        return _check(cert, options)


def _check(cert: ProofCertificate, options: VerifyOptions) -> List[str]:
    k, M = cert.k, cert.M
    problems: List[str] = []

    if cert.b_k != kwong_slack(k):
        problems.append(f"b_k is {cert.b_k}, expected {kwong_slack(k)}")
    if cert.nu2_k_factorial != nu2_factorial(k):
        problems.append("nu2_k_factorial does not match k")
    if not cert.findings:
        # Runs stopped by a budget carry nothing further to re-derive.
        if cert.outcome is not Outcome.INCONCLUSIVE:
            problems.append("certificate has no findings")
        return problems
    if M < 1 or not direct_decision_applies(k, M):
        problems.append(f"level M={M} fails the Kwong preconditions")
        return problems

    window = set(range(k, k + (1 << M)))
    seen = {f.j for f in cert.findings}
    if seen != window:
        problems.append("findings do not cover the residue window")

    branching = cert.by_status(FindingStatus.NONCONSTANT_BRANCHING)
    if branching:
        top_ell = max(f.ell for f in branching)
        s_top = nu2_factorial(k) + top_ell + 1 - kwong_slack(k) - 3
        if not _scan_level_ok(M, s_top):
            problems.append(f"level M={M} too small for scans at s={s_top}")

    cache = ScanCache(budget_bits=options.budget_bits, threads=options.threads)
    for finding in cert.findings:
        cls = CongruenceClass(finding.j, M)
        if finding.status is FindingStatus.NONCONSTANT_BRANCHING:
            if nu_constancy(cls, k).constant:
                problems.append(f"residue {finding.j}: class is constant")
            if _scan_pair(k, M, finding.j, finding.ell, cache) is None:
                problems.append(
                    f"residue {finding.j}: scans at ell={finding.ell} do not confirm"
                )
            if (
                cert.outcome is Outcome.VERIFIED
                and _nonconstant_children(cls, k) != 1
            ):
                problems.append(
                    f"residue {finding.j}: not exactly one non-constant child"
                )
        elif finding.status is FindingStatus.CONSTANT_CLASS:
            verdict = nu_constancy(cls, k)
            if not verdict.constant or verdict.value != finding.value:
                problems.append(f"residue {finding.j}: constant value differs")
                continue
            member = cls.first_member(k) + cls.modulus
            if nu2_stirling(member, k) != finding.value:
                problems.append(
                    f"residue {finding.j}: member {member} has another valuation"
                )
        elif cert.outcome is Outcome.VERIFIED:
            problems.append(f"residue {finding.j}: unresolved in a verified certificate")

    marked = _mark_fallback(
        k,
        M,
        [f.model_copy(update={"fallback": False}) for f in cert.findings],
        cache,
    )
    flagged = {f.j for f in marked if f.fallback}
    if flagged != {f.j for f in cert.findings if f.fallback}:
        problems.append("fallback flags do not match the proof scan")

    problems.extend(_check_refutation(cert))

    if cert.mu_k is not None and cert.mu_k != len(branching) + len(
        cert.by_status(FindingStatus.UNRESOLVED)
    ):
        problems.append("mu_k does not match the non-constant findings")
    return problems


def _check_refutation(cert: ProofCertificate) -> List[str]:
    refutation = cert.refutation
    if cert.outcome is not Outcome.REFUTED:
        if refutation is not None:
            return ["refutation recorded on a certificate that is not refuted"]
        return []
    if refutation is None:
        return ["refuted certificate carries no refutation"]

    cls = CongruenceClass(refutation.n, refutation.m)
    if refutation.m != cert.M or refutation.n not in {f.j for f in cert.findings}:
        return [f"refutation class {cls.label()} is outside the residue window"]
    if nu_constancy(cls, cert.k).constant:
        return [f"refutation class {cls.label()} is constant"]
    count = _nonconstant_children(cls, cert.k)
    if count != refutation.nonconstant_children:
        return [
            f"refutation class {cls.label()} has {count} non-constant "
            f"children, not {refutation.nonconstant_children}"
        ]
    if count == 1:
        return [f"refutation class {cls.label()} branches correctly"]
    return []


__all__ = [
    "VerifyOptions",
    "ScanCache",
    "choose_level",
    "find_ell",
    "uniform_ell",
    "small_level_report",
    "verify_amm",
    "check_certificate",
]
