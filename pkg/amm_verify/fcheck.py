# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/fcheck.py

"""The auxiliary sum ``f_k(n)`` and the exhaustive residue scan over one period.

``f_k(n) = sum C(k,t) t^n (t^(2^(s+1)) - 1)`` over odd ``t <= k``, taken
modulo ``2^(2s+4)``. Writing ``t^(2^(s+1)) - 1 = 2^(s+3) a_t`` gives

    f_k(n) == 2^(s+3) * sum C(k,t) a_t t^n   (mod 2^(2s+4))

so only the reduced sum modulo ``2^(s+1)`` matters, and it is periodic in
``n`` with period dividing ``2^(s+1)``. The scan walks that period in
vectorised blocks, each block seeded by one exponentiation and extended by a
per-``t`` table of consecutive powers.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .config import get_config, resolve_threads
from .errors import ScanBudgetError, ValidationError
from .mod2 import (Residue2, binrep_digits, check_width, nu2_factorial,
                   pow_mod2_int)
from .stirling import binomial_row, kwong_slack

logger = logging.getLogger("amm_verify.fcheck")

_WORD_BITS = 64


class ScanVerdict(str, enum.Enum):
    ALL_ZERO = "all_zero"
    ALL_NONZERO = "all_nonzero"
    MIXED = "mixed"


@dataclass(frozen=True, slots=True)
class FParams:
    """Parameters of ``f_k`` for one value of ell.

    ``coefficients`` holds ``(t, C(k,t) * a_t mod 2^(s+1))`` for each odd t.
    """

    k: int
    ell: int
    s: int
    b_k: int
    modulus_bits: int
    coefficients: Tuple[Tuple[int, int], ...]

    @classmethod
    def for_ell(cls, k: int, ell: int) -> "FParams":
        if k < 5:
            raise ValidationError("k", k, expected="integer >= 5")
        if ell < 0:
            raise ValidationError("ell", ell, expected="nonnegative integer")
        b_k = kwong_slack(k)
        s = nu2_factorial(k) + ell - b_k - 3
        if s < 0:
            raise ValidationError(
                "ell", ell, reason=f"s = {s} is negative for k={k}"
            )
        modulus_bits = check_width(2 * s + 4)
        mask = (1 << (s + 1)) - 1
        row = binomial_row(k)
        coefficients = tuple(
            (t, (row[t] * binrep_digits(t, s).value) & mask)
            for t in range(1, k + 1, 2)
        )
        return cls(k, ell, s, b_k, modulus_bits, coefficients)

    @property
    def reduced_bits(self) -> int:
        return self.s + 1


@dataclass(frozen=True)
class FScanResult:
    params: FParams
    level: int
    period_bits: int
    steps: int
    verdicts: Tuple[ScanVerdict, ...]
    zero_witness: Tuple[Optional[int], ...]
    nonzero_witness: Tuple[Optional[int], ...]

    @property
    def classification_modulus(self) -> int:
        return 1 << self.level

    def verdict(self, j: int) -> ScanVerdict:
        return self.verdicts[j & (self.classification_modulus - 1)]

    def all_nonzero(self) -> bool:
        return all(v is ScanVerdict.ALL_NONZERO for v in self.verdicts)


def f_eval(params: FParams, n: int) -> Residue2:
    """``f_k(n) mod 2^(2s+4)`` straight from the defining sum."""
    if n < 0:
        raise ValidationError("n", n, expected="nonnegative integer")
    width = params.modulus_bits
    row = binomial_row(params.k)
    total = 0
    for t in range(1, params.k + 1, 2):
        lifted = pow_mod2_int(t, 1 << (params.s + 1), width) - 1
        total += row[t] * pow_mod2_int(t, n, width) * lifted
    return Residue2.of(total, width)


def f_block(params: FParams, start: int, size: int) -> np.ndarray:
    """Reduced sums ``f_k(n) / 2^(s+3) mod 2^(s+1)`` for ``start <= n < start+size``."""
    return _Kernel(params, size).block(start)


class _Kernel:
    """Per-scan power tables, shared read-only by all blocks."""

    def __init__(self, params: FParams, size: int) -> None:
        self.params = params
        self.size = size
        self.bits = params.reduced_bits
        self.mask = (1 << self.bits) - 1
        self.native = self.bits <= _WORD_BITS
        self.terms = [(t, c) for t, c in params.coefficients if c]
        self.tables = [self._table(t) for t, _ in self.terms]

    def _table(self, t: int) -> np.ndarray:
        if self.native:
            steps = np.full(self.size, t, dtype=np.uint64)
            steps[0] = 1
            return np.multiply.accumulate(steps, dtype=np.uint64)
        table = np.empty(self.size, dtype=object)
        power = 1
        for r in range(self.size):
            table[r] = power
            power = (power * t) & self.mask
        return table

    def block(self, start: int) -> np.ndarray:
        if self.native:
            acc = np.zeros(self.size, dtype=np.uint64)
            for (t, coef), table in zip(self.terms, self.tables):
                seed = pow_mod2_int(t, start, self.bits)
                factor = np.uint64((coef * seed) & self.mask)
                acc += factor * table
            return acc & np.uint64(self.mask)
        acc = np.zeros(self.size, dtype=object)
        for (t, coef), table in zip(self.terms, self.tables):
            seed = pow_mod2_int(t, start, self.bits)
            acc = acc + ((coef * seed) & self.mask) * table
        return np.array([int(v) & self.mask for v in acc], dtype=object)


@dataclass
class _Partial:
    any_zero: np.ndarray
    any_nonzero: np.ndarray
    first_zero: np.ndarray
    first_nonzero: np.ndarray

    @classmethod
    def empty(cls, classes: int, sentinel: int) -> "_Partial":
        return cls(
            np.zeros(classes, dtype=bool),
            np.zeros(classes, dtype=bool),
            np.full(classes, sentinel, dtype=np.int64),
            np.full(classes, sentinel, dtype=np.int64),
        )

    def merge(self, other: "_Partial") -> None:
        self.any_zero |= other.any_zero
        self.any_nonzero |= other.any_nonzero
        np.minimum(self.first_zero, other.first_zero, out=self.first_zero)
        np.minimum(
            self.first_nonzero, other.first_nonzero, out=self.first_nonzero
        )


def _observe(
    positions: np.ndarray, residues: np.ndarray, classes: int, sentinel: int
) -> Tuple[np.ndarray, np.ndarray]:
    seen = np.bincount(residues, minlength=classes) > 0
    first = np.full(classes, sentinel, dtype=np.int64)
    if residues.size:
        uniq, idx = np.unique(residues, return_index=True)
        first[uniq] = positions[idx]
    return seen, first


def _scan_block(
    kernel: _Kernel, start: int, level: int, sentinel: int
) -> _Partial:
    classes = 1 << level
    values = kernel.block(start)
    positions = np.arange(start, start + kernel.size, dtype=np.int64)
    residues = positions & (classes - 1)
    zero = np.asarray(values == 0, dtype=bool)

    any_zero, first_zero = _observe(
        positions[zero], residues[zero], classes, sentinel
    )
    any_nonzero, first_nonzero = _observe(
        positions[~zero], residues[~zero], classes, sentinel
    )
    return _Partial(any_zero, any_nonzero, first_zero, first_nonzero)


def scan_residues(
    params: FParams,
    level: int,
    *,
    workers: Optional[int] = None,
    budget_bits: Optional[int] = None,
    block_bits: Optional[int] = None,
) -> FScanResult:
    """Classify every residue ``j mod 2^level`` over one full period of ``f_k``."""
    if level < 0:
        raise ValidationError("level", level, expected="nonnegative integer")
    scan_config = get_config().scan
    budget = scan_config.budget_bits if budget_bits is None else budget_bits
    block = scan_config.block_bits if block_bits is None else block_bits

    period_bits = max(params.reduced_bits, level)
    if period_bits > budget:
        raise ScanBudgetError(period_bits, budget)
    steps = 1 << period_bits
    size = min(1 << block, steps)
    starts = range(0, steps, size)
    logger.debug(
        "scan k=%d ell=%d s=%d level=%d period=2^%d blocks=%d",
        params.k, params.ell, params.s, level, period_bits, len(starts),
    )

    kernel = _Kernel(params, size)
    classes = 1 << level

    def _scan_run(run: range) -> _Partial:
        acc = _Partial.empty(classes, steps)
        for start in run:
            acc.merge(_scan_block(kernel, start, level, steps))
        return acc

    threads = min(resolve_threads(workers), len(starts))
    runs: List[range] = [starts[i::threads] for i in range(threads)]
    total = _Partial.empty(classes, steps)
    if threads == 1:
        total.merge(_scan_run(runs[0]))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for partial in pool.map(_scan_run, runs):
                total.merge(partial)

    verdicts = []
    for zero, nonzero in zip(total.any_zero, total.any_nonzero):
        if zero and nonzero:
            verdicts.append(ScanVerdict.MIXED)
        elif zero:
            verdicts.append(ScanVerdict.ALL_ZERO)
        else:
            verdicts.append(ScanVerdict.ALL_NONZERO)

    def _witness(first: np.ndarray) -> Tuple[Optional[int], ...]:
        return tuple(None if v == steps else int(v) for v in first)

    return FScanResult(
        params=params,
        level=level,
        period_bits=period_bits,
        steps=steps,
        verdicts=tuple(verdicts),
        zero_witness=_witness(total.first_zero),
        nonzero_witness=_witness(total.first_nonzero),
    )


__all__ = [
    "ScanVerdict",
    "FParams",
    "FScanResult",
    "f_eval",
    "f_block",
    "scan_residues",
]
