# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/classes.py

"""Congruence classes ``[n]_{2^m}`` and the decision whether
``j -> nu2(S(j, k))`` is constant on one of them."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from .config import resolve_threads
from .errors import ValidationError
from .mod2 import nu2_factorial
from .stirling import kwong_slack, nu2_stirling, stirling_sum_mod2

logger = logging.getLogger("amm_verify.classes")

MIN_K = 5


@dataclass(frozen=True, slots=True)
class CongruenceClass:
    """``[n]_{2^m} = { j : j >= max(n, 2^m), j == n mod 2^m }``."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError("n", self.n, expected="nonnegative integer")
        if self.m < 0:
            raise ValidationError("m", self.m, expected="nonnegative integer")

    @property
    def modulus(self) -> int:
        return 1 << self.m

    @property
    def residue(self) -> int:
        return self.n & (self.modulus - 1)

    @property
    def lower(self) -> int:
        return max(self.n, self.modulus)

    def first_member(self, floor: int = 0) -> int:
        """Smallest member that is also ``>= floor``."""
        start = max(self.lower, floor)
        return start + ((self.residue - start) % self.modulus)

    def contains(self, j: int) -> bool:
        return j >= self.lower and (j - self.n) % self.modulus == 0

    def members(self, floor: int = 0) -> Iterator[int]:
        j = self.first_member(floor)
        while True:
            yield j
            j += self.modulus

    def label(self) -> str:
        return f"{self.n} mod 2^{self.m}"


@dataclass(frozen=True, slots=True)
class ValuationVerdict:
    """Either ``Constant(value)`` or ``NonConstant`` with a witness pair."""

    constant: bool
    value: Optional[int] = None
    witness: Optional[Tuple[int, int]] = None

    @classmethod
    def of_constant(cls, value: int) -> "ValuationVerdict":
        return cls(True, value, None)

    @classmethod
    def of_nonconstant(cls, first: int, second: int) -> "ValuationVerdict":
        return cls(False, None, (first, second))


def children(cls: CongruenceClass) -> Tuple[CongruenceClass, CongruenceClass]:
    """The two level ``m+1`` classes splitting ``cls``."""
    return (
        CongruenceClass(cls.n, cls.m + 1),
        CongruenceClass(cls.n + cls.modulus, cls.m + 1),
    )


def _require_k(k: int) -> None:
    if k < MIN_K:
        raise ValidationError("k", k, expected=f"integer >= {MIN_K}")


def direct_decision_applies(k: int, m: int) -> bool:
    """Whether level ``m`` satisfies the Kwong congruence preconditions for k."""
    b_k = kwong_slack(k)
    return m >= b_k and (1 << m) >= m - b_k + nu2_factorial(k)


def _decide_direct(n: int, m: int, k: int) -> ValuationVerdict:
    cls = CongruenceClass(n, m)
    b_k = kwong_slack(k)
    r = cls.first_member(k)
    c = nu2_stirling(r, k)
    if m > c + b_k:
        return ValuationVerdict.of_constant(c)

    # Every member past the threshold repeats mod 2^(c+1) with period
    # 2^(c+1+b_k) in j; below it each member is checked individually.
    span = 1 << (c + 1 + b_k - m)
    threshold = c + 1 + nu2_factorial(k)
    skip = max(0, -((r - threshold) // cls.modulus))
    last = max(skip + span - 1, span)
    target = 1 << c
    for i in range(1, last + 1):
        x = r + i * cls.modulus
        if stirling_sum_mod2(x, k, c + 1).value != target:
            logger.debug(
                "%s non-constant for k=%d: %d vs %d", cls.label(), k, r, x
            )
            return ValuationVerdict.of_nonconstant(r, x)
    return ValuationVerdict.of_constant(c)


@lru_cache(maxsize=1 << 18)
def _decide(n: int, m: int, k: int) -> ValuationVerdict:
    if direct_decision_applies(k, m):
        return _decide_direct(n, m, k)

    cls = CongruenceClass(n, m)
    left, right = (_decide(c.n, c.m, k) for c in children(cls))
    if not left.constant:
        return left
    if not right.constant:
        return right

    left_rep = CongruenceClass(n, m + 1).first_member(k)
    right_rep = CongruenceClass(n + cls.modulus, m + 1).first_member(k)
    if left.value != right.value:
        return ValuationVerdict.of_nonconstant(left_rep, right_rep)

    # Members below 2^(m+1) belong to neither child.
    for j in range(cls.first_member(k), 2 * cls.modulus, cls.modulus):
        if nu2_stirling(j, k) != left.value:
            return ValuationVerdict.of_nonconstant(j, left_rep)
    return left


def nu_constancy(cls: CongruenceClass, k: int) -> ValuationVerdict:
    """Decide whether ``nu2(S(j, k))`` is constant over members ``j >= k``."""
    _require_k(k)
    return _decide(cls.n, cls.m, k)


def _window(k: int, m: int) -> range:
    return range(k, k + (1 << m))


def classify_level(
    k: int, m: int, threads: Optional[int] = None
) -> Dict[int, ValuationVerdict]:
    """Verdicts for every window representative ``k <= n < k + 2^m``."""
    _require_k(k)
    if m < 1:
        raise ValidationError("m", m, expected="integer >= 1")

    window = _window(k, m)
    workers = resolve_threads(threads)
    if workers == 1 or len(window) < 64:
        verdicts = [_decide(n, m, k) for n in window]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(lambda n: _decide(n, m, k), window))
    return dict(zip(window, verdicts))


def enumerate_nkm(k: int, m: int, threads: Optional[int] = None) -> List[int]:
    """Residues ``k <= n < k + 2^m`` whose class is not nu-constant."""
    verdicts = classify_level(k, m, threads)
    found = sorted(n for n, v in verdicts.items() if not v.constant)
    logger.debug("N_{%d,%d} = %s", k, m, found)
    return found


def count_table(
    k_min: int, k_max: int, m_max: int, threads: Optional[int] = None
) -> Dict[int, List[int]]:
    """``#N_{k,m}`` for ``k_min <= k <= k_max`` and ``1 <= m <= m_max``."""
    if k_max < k_min:
        raise ValidationError("k_max", k_max, expected=f"at least {k_min}")
    if m_max < 1:
        raise ValidationError("m_max", m_max, expected="integer >= 1")
    return {
        k: [len(enumerate_nkm(k, m, threads)) for m in range(1, m_max + 1)]
        for k in range(k_min, k_max + 1)
    }


def screen_counts(k: int, m_max: int) -> Dict[int, int]:
    """Residues not ruled out by the necessary condition ``S == 0 mod 2^m``.

    A class at level ``m + b_k`` can only be non-constant when its first
    member satisfies ``S(j, k) == 0 mod 2^m``; the count at each ``m`` is the
    number of window classes that survive.
    """
    _require_k(k)
    b_k = kwong_slack(k)
    counts: Dict[int, int] = {}
    for m in range(1, m_max + 1):
        level = max(m + b_k, 1)
        counts[m] = sum(
            1
            for n in _window(k, level)
            if stirling_sum_mod2(
                CongruenceClass(n, level).first_member(k), k, m
            ).is_zero()
        )
    return counts


__all__ = [
    "MIN_K",
    "CongruenceClass",
    "ValuationVerdict",
    "children",
    "direct_decision_applies",
    "nu_constancy",
    "classify_level",
    "enumerate_nkm",
    "count_table",
    "screen_counts",
]
