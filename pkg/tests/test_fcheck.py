"""Tests for the auxiliary sum f_k and the residue scan."""

import pytest

from amm_verify.errors import ScanBudgetError, ValidationError
from amm_verify.fcheck import (FParams, ScanVerdict, f_block, f_eval,
                               scan_residues)
from amm_verify.stirling import stirling_mod2

Z = ScanVerdict.ALL_ZERO
NZ = ScanVerdict.ALL_NONZERO


class TestFParams:
    def test_five(self):
        params = FParams.for_ell(5, 1)
        assert (params.s, params.b_k, params.modulus_bits) == (0, 1, 4)
        assert [t for t, _ in params.coefficients] == [1, 3, 5]

    def test_negative_s_rejected(self):
        with pytest.raises(ValidationError):
            FParams.for_ell(5, 0)

    def test_small_k_rejected(self):
        with pytest.raises(ValidationError):
            FParams.for_ell(4, 3)


class TestFEval:
    def test_worked_example(self):
        params = FParams.for_ell(5, 1)
        assert f_eval(params, 7).value == 8
        assert f_eval(params, 7 + 16).value == 8

    def test_seven_even_is_zero(self):
        params = FParams.for_ell(7, 1)
        assert params.s == 1
        assert f_eval(params, 8).value == 0
        assert f_eval(params, 9).value != 0

    def test_periodicity(self, rng):
        for k, ell in [(5, 1), (5, 2), (6, 1), (7, 2), (13, 1), (15, 3)]:
            params = FParams.for_ell(k, ell)
            period = 1 << (2 * params.s + 2)
            for _ in range(100):
                n = rng.randrange(1 << 20)
                assert f_eval(params, n) == f_eval(params, n + period)

    def test_divisible_by_leading_power(self, rng):
        params = FParams.for_ell(9, 2)
        for _ in range(50):
            assert f_eval(params, rng.randrange(5000)).valuation() >= params.s + 3

    def test_vanishing_matches_congruence(self, rng):
        for k in (5, 6, 7):
            for ell in (1, 2):
                params = FParams.for_ell(k, ell)
                m = params.s + 4
                width = m - params.b_k + ell
                for _ in range(50):
                    n = rng.randrange(1 << m, (1 << m) + 400)
                    vanishes = f_eval(params, n).is_zero()
                    congruent = stirling_mod2(
                        n + (1 << m), k, width
                    ) == stirling_mod2(n, k, width)
                    assert vanishes == congruent

    def test_block_matches_direct_evaluation(self, rng):
        # k = 90 needs more than one machine word per reduced sum.
        for k, ell in [(7, 2), (13, 2), (20, 3), (90, 1)]:
            params = FParams.for_ell(k, ell)
            shift = params.s + 3
            for _ in range(10):
                start = rng.randrange(1 << 24)
                block = f_block(params, start, 100)
                for offset in range(100):
                    assert f_eval(params, start + offset).value == (
                        int(block[offset]) << shift
                    )


class TestScanResidues:
    def test_five_all_nonzero(self):
        result = scan_residues(FParams.for_ell(5, 1), 3)
        assert result.verdicts == (NZ,) * 8
        assert result.all_nonzero()

    def test_seven_parity_split(self):
        result = scan_residues(FParams.for_ell(7, 1), 2)
        assert result.verdicts == (Z, NZ, Z, NZ)
        assert result.zero_witness[0] == 0
        assert result.nonzero_witness[1] == 1

    def test_thirteen_low_residues(self):
        result = scan_residues(FParams.for_ell(13, 1), 2)
        assert result.verdict(1) is NZ
        assert result.verdict(2) is NZ
        assert result.verdict(3) is Z
        assert result.verdict(0) is Z

    def test_thirteen_three_mod_four_zero_below_four(self):
        for ell in range(1, 4):
            result = scan_residues(FParams.for_ell(13, ell), 2)
            assert result.verdict(3) is Z
        # from ell = 4 on the class splits
        result = scan_residues(FParams.for_ell(13, 4), 2)
        assert result.verdict(3) is ScanVerdict.MIXED

    def test_period(self):
        params = FParams.for_ell(7, 2)
        result = scan_residues(params, 4)
        assert result.period_bits == max(params.s + 1, 4)
        assert result.steps == 1 << result.period_bits

    def test_budget(self):
        with pytest.raises(ScanBudgetError) as exc_info:
            scan_residues(FParams.for_ell(13, 6), 8, budget_bits=6)
        assert exc_info.value.limit_bits == 6

    @pytest.mark.parametrize("k, ell, level", [(9, 3, 6), (15, 4, 10)])
    def test_workers_agree(self, k, ell, level):
        params = FParams.for_ell(k, ell)
        results = [
            scan_residues(params, level, workers=w, block_bits=4)
            for w in (1, 2, 8)
        ]
        assert results[0] == results[1] == results[2]

    def test_mixed_carries_witnesses(self):
        params = FParams.for_ell(7, 1)
        result = scan_residues(params, 0)
        assert result.verdicts == (ScanVerdict.MIXED,)
        assert result.zero_witness[0] is not None
        assert result.nonzero_witness[0] is not None
