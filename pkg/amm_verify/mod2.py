# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/mod2.py

"""Arithmetic modulo powers of two.

Residues carry their width explicitly; every operation reduces eagerly so
``value < 2**width`` always holds. Widths above one machine word are backed
by gmpy2 integers and expose a little-endian 64-bit limb view.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import gmpy2

from .errors import ValidationError, WidthCapError

logger = logging.getLogger("amm_verify.mod2")

WIDTH_CAP = 512
LIMB_BITS = 64
_LIMB_MASK = (1 << LIMB_BITS) - 1


def check_width(width: int, cap: int = WIDTH_CAP) -> int:
    """Validate a residue width, raising WidthCapError above the cap."""
    if width < 1:
        raise ValidationError("width", width, expected="integer >= 1")
    if width > cap:
        raise WidthCapError(width, cap)
    return width


@dataclass(frozen=True, slots=True)
class Residue2:
    """An integer modulo ``2**width``."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < (1 << self.width):
            raise ValidationError(
                "value",
                self.value,
                expected=f"0 <= value < 2^{self.width}",
            )

    @classmethod
    def of(cls, value: int, width: int) -> "Residue2":
        """Reduce an arbitrary integer into a residue of the given width."""
        check_width(width)
        return cls(int(value) & ((1 << width) - 1), width)

    @property
    def modulus(self) -> int:
        return 1 << self.width

    def _peer(self, other: "Residue2 | int") -> int:
        if isinstance(other, Residue2):
            if other.width != self.width:
                raise ValidationError(
                    "width",
                    other.width,
                    expected=f"{self.width} (truncate or extend first)",
                )
            return other.value
        return int(other)

    def __add__(self, other: "Residue2 | int") -> "Residue2":
        return Residue2.of(self.value + self._peer(other), self.width)

    __radd__ = __add__

    def __sub__(self, other: "Residue2 | int") -> "Residue2":
        return Residue2.of(self.value - self._peer(other), self.width)

    def __rsub__(self, other: int) -> "Residue2":
        return Residue2.of(int(other) - self.value, self.width)

    def __mul__(self, other: "Residue2 | int") -> "Residue2":
        return Residue2.of(self.value * self._peer(other), self.width)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue2":
        return Residue2.of(-self.value, self.width)

    def __pow__(self, exponent: int) -> "Residue2":
        return pow_mod2(self.value, exponent, self.width)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def is_zero(self) -> bool:
        return self.value == 0

    def valuation(self) -> int:
        """2-adic valuation of the residue; ``width`` when it is zero."""
        if self.value == 0:
            return self.width
        return nu2(self.value)

    def truncate(self, width: int) -> "Residue2":
        if width > self.width:
            raise ValidationError(
                "width", width, expected=f"at most {self.width}"
            )
        return Residue2.of(self.value, width)

    def extend(self, width: int) -> "Residue2":
        """Widen by zero-extension; the lifted value is the least representative."""
        if width < self.width:
            raise ValidationError(
                "width", width, expected=f"at least {self.width}"
            )
        check_width(width)
        return Residue2(self.value, width)

    def limbs(self) -> Tuple[int, ...]:
        """Little-endian 64-bit limbs, padded to the rounded-up width."""
        count = -(-self.width // LIMB_BITS)
        return tuple(
            (self.value >> (LIMB_BITS * i)) & _LIMB_MASK for i in range(count)
        )

    @classmethod
    def from_limbs(cls, limbs: Tuple[int, ...], width: int) -> "Residue2":
        value = 0
        for i, limb in enumerate(limbs):
            value |= (int(limb) & _LIMB_MASK) << (LIMB_BITS * i)
        return cls.of(value, width)


@dataclass(frozen=True, slots=True)
class BinDigits:
    """Low ``s+1`` bits of ``(t^(2^(s+1)) - 1) / 2^(s+3)``, least significant first."""

    digits: Tuple[int, ...]
    s: int
    t: int

    def __post_init__(self) -> None:
        if len(self.digits) != self.s + 1:
            raise ValidationError(
                "digits", self.digits, expected=f"{self.s + 1} entries"
            )
        if any(d not in (0, 1) for d in self.digits):
            raise ValidationError("digits", self.digits, expected="bits")

    @property
    def value(self) -> int:
        return sum(d << i for i, d in enumerate(self.digits))


def nu2(z: int) -> int:
    """Largest ``i`` with ``2**i`` dividing ``z``."""
    if z < 1:
        raise ValidationError("z", z, expected="positive integer")
    return int(gmpy2.bit_scan1(gmpy2.mpz(z)))


def nu2_factorial(k: int) -> int:
    """2-adic valuation of ``k!`` by Legendre's formula: ``k - popcount(k)``."""
    if k < 0:
        raise ValidationError("k", k, expected="nonnegative integer")
    return k - int(gmpy2.popcount(gmpy2.mpz(k)))


def pow_mod2_int(t: int, e: int, width: int) -> int:
    """``t**e mod 2**width`` as a plain int; ``0**0 == 1``."""
    if e < 0:
        raise ValidationError("e", e, expected="nonnegative integer")
    if e == 0:
        return 1 & ((1 << width) - 1)
    return int(gmpy2.powmod(gmpy2.mpz(t), e, gmpy2.mpz(1) << width))


def pow_mod2(t: int, e: int, width: int) -> Residue2:
    check_width(width)
    return Residue2(pow_mod2_int(t, e, width), width)


def odd_inverse_mod2(a: int, width: int) -> int:
    """Inverse of an odd integer modulo ``2**width``."""
    if a % 2 == 0:
        raise ValidationError("a", a, expected="odd integer")
    if width == 0:
        return 0
    return int(gmpy2.invert(gmpy2.mpz(a), gmpy2.mpz(1) << width))


def binrep_digits(t: int, s: int) -> BinDigits:
    """Binary digits c_0..c_s of ``a = (t^(2^(s+1)) - 1) / 2^(s+3)``.

    Only the low ``s+1`` bits of ``a`` are needed, i.e. bits ``s+3 .. 2s+3``
    of ``t^(2^(s+1)) - 1``, so the power is taken modulo ``2^(2s+4)``.
    """
    if t < 1 or t % 2 == 0:
        raise ValidationError("t", t, expected="odd positive integer")
    if s < 0:
        raise ValidationError("s", s, expected="nonnegative integer")

    width = 2 * s + 4
    lifted = (pow_mod2_int(t, 1 << (s + 1), width) - 1) % (1 << width)
    if lifted & ((1 << (s + 3)) - 1):
        # Cannot happen for odd t: t^(2^(s+1)) == 1 mod 2^(s+3).
        raise ValidationError("t", t, reason="power is not 1 mod 2^(s+3)")
    a = lifted >> (s + 3)
    return BinDigits(tuple((a >> i) & 1 for i in range(s + 1)), s, t)


__all__ = [
    "WIDTH_CAP",
    "LIMB_BITS",
    "Residue2",
    "BinDigits",
    "check_width",
    "nu2",
    "nu2_factorial",
    "pow_mod2",
    "pow_mod2_int",
    "odd_inverse_mod2",
    "binrep_digits",
]
