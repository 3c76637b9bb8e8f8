# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/__init__.py

"""amm-verify - computational checks of the AMM conjecture on nu2(S(n, k)).

For fixed k the conjecture says that, beyond some level, exactly mu_k
congruence classes modulo 2^m carry a non-constant 2-adic valuation of the
Stirling numbers S(n, k), and each of them splits into exactly one
non-constant child.

Example:
    >>> from amm_verify import enumerate_nkm, verify_amm
    >>> enumerate_nkm(5, 3)
    [7, 12]
    >>> cert = verify_amm(5)
    >>> cert.outcome, cert.mu_k, cert.M_k
    (<Outcome.VERIFIED: 'verified'>, 2, 1)

Modules:
    mod2: residues modulo powers of two and 2-adic valuations
    stirling: S(n, k) exactly, modulo 2^w, and nu2(S(n, k))
    classes: congruence classes and nu-constancy decisions
    fcheck: the auxiliary sum f_k and its residue scan
    verifier: the verification pipeline and certificate checks
    render: table, tree and bitmap formatters
"""

import logging

from .certificate import (FindingStatus, Outcome, ProofCertificate,
                          ResidueFinding)
from .classes import (CongruenceClass, ValuationVerdict, children,
                      count_table, enumerate_nkm, nu_constancy, screen_counts)
from .config import (AmmConfig, get_config, reload_config, update_config,
                     validate_config)
from .errors import (AmmError, CertificateError, ResourceError,
                     ScanBudgetError, ValidationError)
from .fcheck import FParams, FScanResult, ScanVerdict, f_eval, scan_residues
from .mod2 import (BinDigits, Residue2, binrep_digits, nu2, nu2_factorial,
                   pow_mod2)
from .stirling import (kwong_slack, nu2_stirling, stirling_exact,
                       stirling_mod2, stirling_sum_mod2)
from .verifier import (VerifyOptions, check_certificate, choose_level,
                       find_ell, small_level_report, verify_amm)

logging.getLogger("amm_verify").addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = [
    "AmmConfig",
    "AmmError",
    "BinDigits",
    "CertificateError",
    "CongruenceClass",
    "FParams",
    "FScanResult",
    "FindingStatus",
    "Outcome",
    "ProofCertificate",
    "Residue2",
    "ResidueFinding",
    "ResourceError",
    "ScanBudgetError",
    "ScanVerdict",
    "ValidationError",
    "ValuationVerdict",
    "VerifyOptions",
    "binrep_digits",
    "check_certificate",
    "children",
    "choose_level",
    "count_table",
    "enumerate_nkm",
    "f_eval",
    "find_ell",
    "get_config",
    "kwong_slack",
    "nu2",
    "nu2_factorial",
    "nu2_stirling",
    "nu_constancy",
    "pow_mod2",
    "reload_config",
    "scan_residues",
    "screen_counts",
    "small_level_report",
    "stirling_exact",
    "stirling_mod2",
    "stirling_sum_mod2",
    "update_config",
    "validate_config",
    "verify_amm",
]
