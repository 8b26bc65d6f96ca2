"""
Tests for GF(2^m) arithmetic
"""

import pickle

import numpy as np
import pytest

from cyclicweights.errors import ConfigurationError, FieldDivisionError, FieldMismatchError
from cyclicweights.gf2m import (
    FieldElem,
    FieldSpec,
    alpha_pow,
    default_modulus,
    fe_inv,
    fe_trace,
    get_field,
    is_primitive_modulus,
    solve_artin_schreier,
)


def _parity(v: int) -> int:
    return bin(v).count("1") % 2


class TestModuli:
    """Primitive moduli and field construction"""

    def test_default_moduli(self):
        assert default_modulus(3) == 0b1011
        assert default_modulus(4) == 0b10011
        assert default_modulus(5) == 0b100101
        assert default_modulus(6) == 0x43

    def test_is_primitive_modulus(self):
        assert is_primitive_modulus(0b11001, 4)
        assert is_primitive_modulus(0x61, 6)
        assert not is_primitive_modulus(0b10001, 4)  # x^4 + 1
        assert not is_primitive_modulus(0b11111, 4)  # irreducible, x has order 5
        assert not is_primitive_modulus(0x41, 6)
        assert not is_primitive_modulus(0x43, 5)     # wrong degree

    def test_non_primitive_modulus_rejected(self):
        with pytest.raises(ConfigurationError):
            FieldSpec(6, 0x41)
        with pytest.raises(ConfigurationError):
            FieldSpec(4, 0b11111)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ConfigurationError):
            FieldSpec(4, 0b1011)

    @pytest.mark.parametrize("m", [2, 21])
    def test_degree_out_of_range(self, m):
        with pytest.raises(ConfigurationError):
            get_field(m)

    def test_get_field_is_cached(self):
        assert get_field(5) is get_field(5)
        assert get_field(6) != get_field(6, 0x61)

    def test_pickle_round_trip(self, field6_alt):
        restored = pickle.loads(pickle.dumps(field6_alt))
        assert restored == field6_alt
        assert restored.modulus == 0x61

    def test_modulus_hash_depends_on_modulus(self, field6, field6_alt):
        assert field6.modulus_hash != field6_alt.modulus_hash
        assert field6.modulus_hex == "0x43"


class TestArithmetic:
    """Multiplication, inversion and powers"""

    def test_table_mul_matches_clmul(self, field4):
        values = np.arange(field4.q)
        table = field4.mul(values[:, None], values[None, :])
        for a in range(field4.q):
            for b in range(field4.q):
                assert table[a, b] == field4.mul_clmul(a, b)

    def test_mul_associative(self, field6, rng):
        a, b, c = (rng.integers(0, field6.q, 500) for _ in range(3))
        assert np.array_equal(field6.mul(field6.mul(a, b), c), field6.mul(a, field6.mul(b, c)))

    def test_inverse(self, field5):
        x = field5.nonzero_elements()
        assert np.all(field5.mul(x, field5.inv(x)) == 1)

    def test_inverse_of_zero(self, field5):
        with pytest.raises(FieldDivisionError):
            field5.inv(np.array([1, 0]))
        with pytest.raises(FieldDivisionError):
            fe_inv(field5.zero)
        with pytest.raises(ZeroDivisionError):
            field5.one / field5.zero

    def test_negative_power_of_zero(self, field5):
        with pytest.raises(FieldDivisionError):
            field5.power(0, -1)

    def test_alpha_powers(self, field6):
        assert alpha_pow(-1, field6) * field6.alpha == field6.one
        assert alpha_pow(field6.order, field6) == field6.one
        assert field6.alpha ** 6 == field6.element(0b11)  # x^6 = x + 1

    def test_sqrt(self, field6):
        values = np.arange(field6.q)
        assert np.array_equal(field6.square(field6.sqrt(values)), values)

    def test_elements_from_different_fields(self, field6, field6_alt):
        with pytest.raises(FieldMismatchError):
            field6.element(3) + field6_alt.element(3)
        with pytest.raises(FieldMismatchError):
            field6.element(3) * field6_alt.element(3)

    def test_element_out_of_range(self, field4):
        with pytest.raises(ValueError):
            FieldElem(16, field4)


class TestTrace:
    """Absolute trace to F2"""

    @pytest.mark.parametrize("m", [3, 4, 5, 6, 7])
    def test_table_matches_definition(self, m):
        spec = get_field(m)
        for a in range(spec.q):
            assert spec.trace_table[a] == spec.trace_definitional(a)

    @pytest.mark.parametrize("m", [3, 4, 5, 6, 9])
    def test_trace_is_balanced(self, m):
        spec = get_field(m)
        assert int(spec.trace_table.sum()) == spec.q // 2

    def test_trace_of_one(self, field5, field6):
        assert fe_trace(field5.one) == 1
        assert fe_trace(field6.one) == 0

    def test_trace_dual_index(self, field6_alt, rng):
        spec = field6_alt
        index = spec.trace_dual_index
        assert sorted(index.tolist()) == list(range(spec.q))
        x = np.arange(spec.q)
        for b in rng.integers(0, spec.q, 10):
            expected = [_parity(int(index[b]) & int(v)) for v in x]
            assert spec.trace(spec.mul(int(b), x)).tolist() == expected


class TestArtinSchreier:
    """Roots of z^2 + p z + r"""

    def test_roots_satisfy_equation(self, field5):
        p = field5.element(7)
        for r_bits in range(field5.q):
            r = field5.element(r_bits)
            for z in solve_artin_schreier(p, r):
                assert z * z + p * z + r == field5.zero

    def test_half_the_constants_are_solvable(self, field6):
        p = field6.element(5)
        solvable = [r for r in range(field6.q) if solve_artin_schreier(p, field6.element(r))]
        assert len(solvable) == field6.q // 2
        assert all(len(solve_artin_schreier(p, field6.element(r))) == 2 for r in solvable)

    def test_zero_linear_term(self, field6):
        r = field6.element(9)
        (root,) = solve_artin_schreier(field6.zero, r)
        assert root * root == r

    @pytest.mark.parametrize("m", [4, 5])
    def test_matches_exhaustive_root_search(self, m):
        spec = get_field(m)
        z = np.arange(spec.q)
        for p_bits in range(1, spec.q):
            values = spec.square(z) ^ spec.mul(p_bits, z)
            for r_bits in range(spec.q):
                expected = {int(v) for v in z[values == r_bits]}
                found = solve_artin_schreier(spec.element(p_bits), spec.element(r_bits))
                assert {root.bits for root in found} == expected
                assert len(expected) in (0, 2)


class TestFieldAxioms:
    """Ring laws, inverses and the trace over every supported small field"""

    @pytest.mark.parametrize("m", range(3, 13))
    def test_ring_laws(self, m, rng):
        spec = get_field(m)
        a, b, c = (rng.integers(0, spec.q, 1000) for _ in range(3))
        assert np.array_equal(spec.mul(a, b), spec.mul(b, a))
        assert np.array_equal(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)))
        assert np.array_equal(spec.mul(a, b ^ c), spec.mul(a, b) ^ spec.mul(a, c))
        for x, y in zip(a[:50], b[:50]):
            assert spec.mul_scalar(int(x), int(y)) == spec.mul_clmul(int(x), int(y))

    @pytest.mark.parametrize("m", range(3, 9))
    def test_inverse_is_an_involution(self, m):
        spec = get_field(m)
        x = spec.nonzero_elements()
        assert np.array_equal(spec.inv(spec.inv(x)), x)
        for bits in range(1, spec.q):
            a = spec.element(bits)
            assert fe_inv(fe_inv(a)) == a
            assert a * fe_inv(a) == spec.one

    @pytest.mark.parametrize("m", range(3, 9))
    def test_trace_is_linear(self, m):
        spec = get_field(m)
        x = np.arange(spec.q)
        trace = spec.trace(x)
        for a in range(spec.q):
            assert np.array_equal(spec.trace(a ^ x), trace[a] ^ trace)

    @pytest.mark.parametrize("m", [8, 9, 10])
    def test_trace_table_matches_definition_large(self, m):
        spec = get_field(m)
        expected = [spec.trace_definitional(a) for a in range(spec.q)]
        assert spec.trace_table.tolist() == expected

    @pytest.mark.parametrize("m", range(3, 11))
    def test_alpha_generates_the_multiplicative_group(self, m):
        spec = get_field(m)
        reached = {alpha_pow(i, spec).bits for i in range(spec.order)}
        assert reached == set(range(1, spec.q))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
