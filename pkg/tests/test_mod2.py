"""Tests for arithmetic modulo powers of two."""

import pytest

from amm_verify.errors import ValidationError, WidthCapError
from amm_verify.mod2 import (WIDTH_CAP, BinDigits, Residue2, binrep_digits,
                             nu2, nu2_factorial, odd_inverse_mod2, pow_mod2)


class TestResidue2:
    def test_of_reduces(self):
        assert Residue2.of(140, 4) == Residue2(12, 4)
        assert Residue2.of(-1, 8).value == 255

    def test_constructor_rejects_unreduced(self):
        with pytest.raises(ValidationError):
            Residue2(16, 4)

    def test_width_cap(self):
        with pytest.raises(WidthCapError):
            Residue2.of(1, WIDTH_CAP + 1)

    def test_arithmetic_wraps(self):
        a = Residue2.of(250, 8)
        b = Residue2.of(10, 8)
        assert (a + b).value == 4
        assert (b - a).value == 16
        assert (a * b).value == 2500 % 256
        assert (-b).value == 246

    def test_mixed_width_rejected(self):
        with pytest.raises(ValidationError):
            Residue2.of(1, 8) + Residue2.of(1, 16)

    def test_truncate_and_extend(self):
        r = Residue2.of(0xABCD, 16)
        assert r.truncate(8).value == 0xCD
        assert r.extend(32) == Residue2(0xABCD, 32)
        with pytest.raises(ValidationError):
            r.truncate(20)

    def test_valuation(self):
        assert Residue2.of(40, 8).valuation() == 3
        assert Residue2.of(0, 8).valuation() == 8

    def test_limbs_round_trip_above_one_word(self):
        value = (1 << 130) + (7 << 64) + 5
        r = Residue2.of(value, 200)
        assert r.limbs() == (5, 7, 4, 0)
        assert Residue2.from_limbs(r.limbs(), 200) == r

    def test_pow_operator(self):
        assert (Residue2.of(3, 4) ** 7).value == 11


class TestNu2:
    @pytest.mark.parametrize("z, expected", [(8, 3), (140, 2), (1, 0)])
    def test_examples(self, z, expected):
        assert nu2(z) == expected

    def test_zero_rejected(self):
        with pytest.raises(ValidationError):
            nu2(0)

    def test_matches_repeated_halving(self, rng):
        for _ in range(10_000):
            z = rng.getrandbits(256) | 1 << rng.randrange(256)
            rest, halvings = z, 0
            while rest % 2 == 0:
                rest //= 2
                halvings += 1
            assert nu2(z) == halvings

    def test_factorial(self):
        assert nu2_factorial(5) == 3
        assert nu2_factorial(13) == 10
        assert nu2_factorial(20) == 18


class TestPowMod2:
    def test_examples(self):
        assert pow_mod2(3, 1 << 3, 5).value == 1
        assert pow_mod2(1, 12345, 9).value == 1
        assert pow_mod2(3, 7, 4).value == 11

    def test_zero_to_zero_is_one(self):
        assert pow_mod2(0, 0, 8).value == 1
        assert pow_mod2(0, 3, 8).value == 0

    def test_odd_power_order(self):
        for t in range(1, 100, 2):
            for m in range(1, 41):
                assert pow_mod2(t, 1 << m, m + 2).value == 1

    def test_matches_builtin_pow(self):
        for t in range(21):
            for w in (1, 7, 32, 64):
                for e in range((1 << 12) + 1):
                    assert pow_mod2(t, e, w).value == pow(t, e, 1 << w)

    @pytest.mark.slow
    def test_matches_builtin_pow_every_width(self):
        for t in range(21):
            for w in range(1, 65):
                expected = 1 % (1 << w)
                for e in range((1 << 12) + 1):
                    assert pow_mod2(t, e, w).value == expected
                    expected = expected * t % (1 << w)

    def test_odd_inverse(self):
        assert (odd_inverse_mod2(15, 16) * 15) % (1 << 16) == 1
        with pytest.raises(ValidationError):
            odd_inverse_mod2(6, 8)


class TestBinrepDigits:
    def test_examples(self):
        assert binrep_digits(1, 3).digits == (0, 0, 0, 0)
        assert binrep_digits(3, 0).digits == (1,)
        assert binrep_digits(3, 1).digits == (1, 0)

    def test_even_base_rejected(self):
        with pytest.raises(ValidationError):
            binrep_digits(4, 2)

    def test_matches_exact_division(self):
        for t in range(1, 16, 2):
            for s in range(5):
                a = (t ** (1 << (s + 1)) - 1) >> (s + 3)
                assert binrep_digits(t, s).value == a % (1 << (s + 1))

    def test_reconstruction(self):
        for t in range(1, 26, 2):
            for s in range(7):
                c = binrep_digits(t, s).digits
                for m in range(s + 1, s + 9):
                    width = m + s + 3
                    expected = 1 + sum(d << (m + 2 + i) for i, d in enumerate(c))
                    assert (
                        pow_mod2(t, 1 << m, width).value
                        == expected % (1 << width)
                    )

    def test_bindigits_validation(self):
        with pytest.raises(ValidationError):
            BinDigits((1, 0), s=0, t=3)
