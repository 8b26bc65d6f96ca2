"""
Tests for the weight classification: Maisner-Nart witnesses, split
Jacobians, predictions and the weight tables
"""

from dataclasses import replace

import pytest

from cyclicweights import classify
from cyclicweights.classify import (
    EXPECTED_TABLE_ROWS,
    SplitWitness,
    WeightStatus,
    _mn_witness,
    compare_predicted_vs_bruteforce,
    lemma_j_witness,
    mn_simple_exists,
    predict_weight_set,
    reproduce_tables,
    split_occurs_even_m,
    split_occurs_odd_m,
)
from cyclicweights.errors import InternalConsistencyError
from cyclicweights.numtheory import intervals


class TestMaisnerNart:
    """Simple Jacobian witnesses"""

    def test_witness_m7_a1_35(self):
        witness = mn_simple_exists(7, 35)
        assert witness is not None
        assert witness.a2 == 544
        assert witness.passed
        assert witness.recheck()

    def test_witness_m7_a1_minus_41(self):
        witness = mn_simple_exists(7, -41)
        assert witness.a2 == 672
        assert witness.delta_Z == 17
        assert witness.delta_2adic == 512

    def test_no_witness_m7_a1_minus_37(self):
        assert mn_simple_exists(7, -37) is None

    def test_square_delta(self):
        witness = _mn_witness(6, 31, 368)
        assert witness.delta_Z == 1
        assert not witness.delta_nonsquare
        assert not witness.passed

    def test_no_witness_m6_a1_31(self):
        assert mn_simple_exists(6, 31) is None

    def test_outside_weil_range(self):
        assert mn_simple_exists(6, 33) is None

    def test_even_a1_rejected(self):
        with pytest.raises(ValueError):
            mn_simple_exists(6, 30)

    def test_to_dict(self):
        data = mn_simple_exists(7, 35).to_dict()
        assert data["a2"] == 544
        assert all(data["conditions"].values())


class TestSplitJacobians:
    """Jacobians isogenous to a product of elliptic curves"""

    def test_odd_m(self):
        split = split_occurs_odd_m(7, 35)
        assert (split.s, split.a, split.prime) == (16, 19, 3)
        split = split_occurs_odd_m(7, -37)
        assert (split.s, split.a, split.prime) == (-16, -21, 5)
        assert split_occurs_odd_m(7, -41) is None

    def test_even_m(self):
        split = split_occurs_even_m(10, 119)
        assert (split.s, split.a, split.prime) == (64, 55, 3)
        assert split.sq_divisor == 9
        split = split_occurs_even_m(12, 247)
        assert (split.s, split.a, split.prime) == (128, 119, 3)

    def test_even_m_unit_difference(self):
        """s - a = 1 is squarefree, so a1 = 31 at m = 6 does not split"""
        assert split_occurs_even_m(6, 31) is None

    def test_wrong_parity(self):
        with pytest.raises(ValueError):
            split_occurs_even_m(7, 35)
        with pytest.raises(ValueError):
            split_occurs_odd_m(6, 31)


class TestWitnessRecheck:
    """Witnesses are re-derived from their defining numbers"""

    @pytest.mark.parametrize("m", range(5, 13))
    def test_found_witnesses_recheck(self, m):
        for verdict in predict_weight_set(m).verdicts:
            if verdict.mn is not None:
                assert verdict.mn.recheck(), verdict.weight
            if verdict.split is not None:
                assert verdict.split.recheck(), verdict.weight

    def test_tampered_a2_rejected(self):
        witness = mn_simple_exists(7, 35)
        assert not replace(witness, a2=witness.a2 + 16).recheck()

    def test_tampered_delta_rejected(self):
        witness = mn_simple_exists(7, -41)
        assert not replace(witness, delta_Z=witness.delta_Z + 4).recheck()
        assert not replace(witness, delta_2adic=witness.delta_2adic * 4).recheck()

    def test_tampered_condition_rejected(self):
        witness = _mn_witness(6, 31, 368)
        assert witness.recheck()
        assert not replace(witness, delta_nonsquare=True).recheck()
        assert not replace(witness, in_range=not witness.in_range).recheck()

    def test_wrong_prime_rejected(self):
        split = split_occurs_odd_m(7, 35)
        assert split.recheck()
        assert not replace(split, prime=5).recheck()
        assert not replace(split, prime=9).recheck()
        even = split_occurs_even_m(10, 119)
        assert even.recheck()
        assert not replace(even, prime=5).recheck()

    def test_squarefree_difference_rejected_for_even_m(self):
        # s - a = 64 - 61 = 3: divisible by 3 but not by 9
        assert not SplitWitness(m=10, a1=125, s=64, a=61, prime=3).recheck()

    def test_non_supersingular_s_rejected(self):
        assert not SplitWitness(m=7, a1=35, s=8, a=27, prime=19).recheck()
        assert not SplitWitness(m=7, a1=35, s=16, a=20, prime=2).recheck()

    def test_classifier_refuses_forged_witness(self, monkeypatch):
        forged = SplitWitness(m=7, a1=35, s=16, a=19, prime=7)
        monkeypatch.setattr(classify, "split_occurs_odd_m", lambda m, a1: forged)
        with pytest.raises(InternalConsistencyError):
            predict_weight_set(7)


class TestIntervalLemma:
    """The explicit a2 for weights inside J"""

    @pytest.mark.parametrize("m", [6, 8, 10, 12])
    def test_every_J_weight_has_a_simple_witness(self, m):
        q = 1 << m
        bounds = intervals(m)
        for w in range(bounds.j_lo + bounds.j_lo % 2, bounds.j_hi + 1, 2):
            witness = lemma_j_witness(m, q - 1 - 2 * w)
            assert witness is not None, w
            assert witness.passed, w

    def test_odd_m(self):
        assert lemma_j_witness(7, 35) is None

    def test_outside_bound(self):
        assert lemma_j_witness(6, 31) is None


class TestPrediction:
    """Predicted weight sets"""

    @pytest.mark.parametrize("m", [6, 8])
    def test_no_simple_witness_outside_J(self, m):
        q = 1 << m
        for w in intervals(m).outside_J():
            assert mn_simple_exists(m, q - 1 - 2 * w) is None

    @pytest.mark.parametrize("m", range(5, 13))
    def test_traces_are_3_mod_4(self, m):
        assert all(v.a1 % 4 == 3 for v in predict_weight_set(m).verdicts)

    def test_statuses_m7(self):
        report = predict_weight_set(7)
        assert report.verdict(46).status is WeightStatus.SPLIT
        assert report.verdict(82).status is WeightStatus.SPLIT
        assert report.verdict(84).status is WeightStatus.SIMPLE
        assert report.verdict(42).status is WeightStatus.ABSENT
        assert report.verdict(44).status is WeightStatus.ABSENT
        assert report.verdict(60).status is WeightStatus.IN_J
        assert report.extras() == [46, 82, 84]

    def test_unknown_weight(self):
        with pytest.raises(KeyError):
            predict_weight_set(7).verdict(45)

    def test_to_dataframe(self):
        frame = predict_weight_set(7).to_dataframe()
        assert list(frame.columns) == ["m", "weight", "status", "a1", "a2", "delta", "witness_prime"]
        assert str(frame["a2"].dtype) == "Int64"
        assert frame.loc[frame["weight"] == 84, "a2"].iloc[0] == 672
        assert frame.loc[frame["weight"] == 46, "witness_prime"].iloc[0] == 3

    def test_to_dict(self):
        data = predict_weight_set(6).to_dict()
        assert data["I"] == [16, 47]
        assert data["J"] == [19, 44]
        assert data["extras"] == []
        assert data["provenance"] == "predicted"


class TestAgainstEnumeration:
    """Predictions against exhaustive enumeration of the dual"""

    @pytest.mark.parametrize("m", [6, 7, 8])
    def test_no_mismatches(self, m):
        report = compare_predicted_vs_bruteforce(m)
        assert report.mismatches == []
        assert report.provenance == "both"
        assert all(v.observed == v.occurs for v in report.verdicts)

    def test_no_mismatches_alt_modulus(self, field6_alt):
        assert compare_predicted_vs_bruteforce(6, field6_alt).mismatches == []


class TestTables:
    """Reproduction of the published weight tables"""

    def test_all_rows_match(self):
        rows = reproduce_tables()
        assert [row.m for row in rows] == list(range(6, 13))
        assert all(row.matches for row in rows)

    @pytest.mark.parametrize("m", sorted(EXPECTED_TABLE_ROWS))
    def test_extras(self, m):
        (row,) = reproduce_tables([m])
        assert row.extras == EXPECTED_TABLE_ROWS[m][2]

    def test_row_without_expectation(self):
        (row,) = reproduce_tables([13])
        assert row.expected is None
        assert not row.matches

    def test_row_to_dict(self):
        (row,) = reproduce_tables([7])
        assert row.to_dict() == {"q": "2^7", "m": 7, "I": [42, 85], "J": [47, 80],
                                 "extras": [46, 82, 84], "matches": True}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
