# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/stirling.py

"""Stirling numbers of the second kind: exact, modulo ``2**w``, and their
2-adic valuation."""

from __future__ import annotations

import logging
from functools import lru_cache
from math import comb, factorial
from typing import Optional, Tuple

from .config import get_config
from .errors import EscalationCapError, OracleBoundError, ValidationError
from .mod2 import (WIDTH_CAP, Residue2, check_width, nu2, nu2_factorial,
                   odd_inverse_mod2, pow_mod2_int)

logger = logging.getLogger("amm_verify.stirling")


def kwong_slack(k: int) -> int:
    """``b_k = ceil(log2 k) - 2``."""
    if k < 1:
        raise ValidationError("k", k, expected="integer >= 1")
    return (k - 1).bit_length() - 2


def _check_indices(n: int, k: int) -> None:
    if n < 0:
        raise ValidationError("n", n, expected="nonnegative integer")
    if k < 0:
        raise ValidationError("k", k, expected="nonnegative integer")


def stirling_exact(n: int, k: int, *, oracle_bound: Optional[int] = None) -> int:
    """Exact S(n, k) from the row recurrence ``S(i,j) = j*S(i-1,j) + S(i-1,j-1)``."""
    _check_indices(n, k)
    bound = (
        get_config().arithmetic.oracle_bound
        if oracle_bound is None
        else oracle_bound
    )
    if n > bound:
        raise OracleBoundError(n, bound)
    if n < k:
        return 0

    row = [1] + [0] * k
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def stirling_mod2(n: int, k: int, w: int) -> Residue2:
    """S(n, k) mod 2**w via the same recurrence, one rolling row."""
    _check_indices(n, k)
    check_width(w)
    if n < k:
        return Residue2(0, w)

    mask = (1 << w) - 1
    row = [1] + [0] * k
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            row[j] = (j * row[j] + row[j - 1]) & mask
        row[0] = 0
    return Residue2(row[k], w)


@lru_cache(maxsize=256)
def binomial_row(k: int) -> Tuple[int, ...]:
    """``C(k, t)`` for ``t = 0..k``."""
    return tuple(comb(k, t) for t in range(k + 1))


def _sum_residue_int(n: int, k: int, w: int) -> int:
    """S(n, k) mod 2**w from ``k!*S(n,k) = sum (-1)^(k-t) C(k,t) t^n``.

    The sum is taken modulo ``2^(w + nu2(k!))`` so the power of two in k!
    can be stripped exactly before inverting the odd part.
    """
    v = nu2_factorial(k)
    wide = w + v
    total = 0
    for t, c in enumerate(binomial_row(k)):
        term = c * pow_mod2_int(t, n, wide)
        total += -term if (k - t) & 1 else term
    total %= 1 << wide

    odd_part = factorial(k) >> v
    return ((total >> v) * odd_inverse_mod2(odd_part, w)) & ((1 << w) - 1)


def stirling_sum_mod2(n: int, k: int, w: int) -> Residue2:
    """S(n, k) mod 2**w from the closed-form alternating sum."""
    _check_indices(n, k)
    if k < 1:
        raise ValidationError("k", k, expected="integer >= 1")
    check_width(w)
    return Residue2(_sum_residue_int(n, k, w), w)


@lru_cache(maxsize=1 << 16)
def _nu2_stirling(n: int, k: int, cap: int, oracle_bound: int) -> int:
    w = 8
    while True:
        w = min(w, cap)
        residue = _sum_residue_int(n, k, w)
        if residue:
            return nu2(residue)
        logger.debug("S(%d,%d) vanishes mod 2^%d, widening", n, k, w)
        if w >= cap:
            break
        w *= 2

    if n <= oracle_bound:
        logger.debug("escalation exhausted for S(%d,%d), using oracle", n, k)
        return nu2(stirling_exact(n, k, oracle_bound=oracle_bound))
    raise EscalationCapError(f">{cap}", cap)


def nu2_stirling(n: int, k: int) -> int:
    """Exact 2-adic valuation of S(n, k) for ``n >= k >= 1``."""
    if k < 1:
        raise ValidationError("k", k, expected="integer >= 1")
    if n < k:
        raise ValidationError("n", n, expected=f"integer >= k = {k}")
    arithmetic = get_config().arithmetic
    cap = min(arithmetic.escalation_cap, WIDTH_CAP)
    return _nu2_stirling(n, k, cap, arithmetic.oracle_bound)


__all__ = [
    "kwong_slack",
    "stirling_exact",
    "stirling_mod2",
    "stirling_sum_mod2",
    "binomial_row",
    "nu2_stirling",
]
