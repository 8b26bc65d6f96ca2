"""
Tests for the exact integer gates in numtheory
"""

import pytest

from cyclicweights.classify import EXPECTED_TABLE_ROWS
from cyclicweights.numtheory import (
    ceil_sqrt,
    intervals,
    is_perfect_square,
    is_squarefree,
    isqrt,
    prime_factors,
    sign_p_plus_q_sqrt,
    square_prime_divisor,
    sum_with_sqrt_at_least_fourth_root,
    two_adic_square,
)


class TestSquareRoots:
    """Floor and ceiling square roots, perfect squares"""

    def test_isqrt(self):
        assert isqrt(0) == 0
        assert isqrt(15) == 3
        assert isqrt(16) == 4
        assert isqrt(220 ** 2 * 64) == 1760

    def test_isqrt_negative(self):
        with pytest.raises(ValueError):
            isqrt(-1)

    def test_ceil_sqrt(self):
        assert ceil_sqrt(0) == 0
        assert ceil_sqrt(15) == 4
        assert ceil_sqrt(16) == 4
        assert ceil_sqrt(17) == 5

    def test_is_perfect_square(self):
        assert is_perfect_square(0)
        assert is_perfect_square(49)
        assert not is_perfect_square(50)
        assert not is_perfect_square(-4)


class TestTwoAdicSquares:
    """Squares in the 2-adic integers"""

    def test_examples(self):
        assert two_adic_square(68)      # 4 * 17, 17 = 1 mod 8
        assert two_adic_square(0)
        assert not two_adic_square(-7)
        assert not two_adic_square(-1)
        assert not two_adic_square(2)
        assert not two_adic_square(12)  # 4 * 3

    def test_negative_values_rejected(self):
        assert not any(two_adic_square(n) for n in range(-2000, 0))
        assert not two_adic_square(-68)
        assert not two_adic_square(-(1 << 40) * 17)

    def test_integer_squares_are_2adic_squares(self):
        assert all(two_adic_square(n * n) for n in range(-10 ** 4, 10 ** 4 + 1))

    @pytest.mark.parametrize("m", [6, 8, 10])
    def test_q_times_unit_5_mod_8(self, m):
        """q(1 + 4a1) is never a 2-adic square for even m and odd a1"""
        q = 1 << m
        assert not any(two_adic_square(q * (1 + 4 * a1)) for a1 in range(-4 * q - 1, 4 * q, 2))


class TestFactorisation:
    """Prime factors and squarefree tests"""

    def test_prime_factors(self):
        assert prime_factors(360) == [2, 3, 5]
        assert prime_factors(97) == [97]
        assert prime_factors(-45) == [3, 5]
        assert prime_factors(1) == []

    def test_square_prime_divisor(self):
        assert square_prime_divisor(9) == 3
        assert square_prime_divisor(12) == 2
        assert square_prime_divisor(50) == 5
        assert square_prime_divisor(0) == 2
        assert square_prime_divisor(15) is None
        assert square_prime_divisor(-1) is None

    def test_is_squarefree(self):
        assert not is_squarefree(9)
        assert is_squarefree(-7)
        assert is_squarefree(1)
        assert not is_squarefree(0)


class TestRadicalComparisons:
    """Exact signs of expressions with square roots"""

    def test_sign_p_plus_q_sqrt(self):
        assert sign_p_plus_q_sqrt(1, -1, 2) == -1
        assert sign_p_plus_q_sqrt(-3, 1, 9) == 0
        assert sign_p_plus_q_sqrt(3, -1, 4) == 1
        assert sign_p_plus_q_sqrt(0, 2, 5) == 1
        assert sign_p_plus_q_sqrt(-1, 0, 7) == -1

    def test_fourth_root_boundary(self):
        # 0 + sqrt(16) = 4 = 256^(1/4)
        assert sum_with_sqrt_at_least_fourth_root(0, 16, 256)
        assert not sum_with_sqrt_at_least_fourth_root(0, 16, 257)

    def test_negative_left_side(self):
        assert not sum_with_sqrt_at_least_fourth_root(-5, 16, 0)


class TestIntervals:
    """The weight intervals I and J"""

    @pytest.mark.parametrize("m", sorted(EXPECTED_TABLE_ROWS))
    def test_table_endpoints(self, m):
        expected_I, expected_J, _ = EXPECTED_TABLE_ROWS[m]
        bounds = intervals(m)
        assert bounds.I == expected_I
        assert bounds.J == expected_J

    @pytest.mark.parametrize("m", [6, 8, 10, 12, 14])
    def test_even_J_lower_end(self, m):
        """J starts k above I, k least with (2k + 1)^4 >= 16q"""
        q = 1 << m
        k = 0
        while (2 * k + 1) ** 4 < 16 * q:
            k += 1
        bounds = intervals(m)
        assert bounds.j_lo == bounds.i_lo + k

    @pytest.mark.parametrize("m", range(5, 15))
    def test_J_inside_I(self, m):
        bounds = intervals(m)
        assert bounds.i_lo <= bounds.j_lo <= bounds.j_hi <= bounds.i_hi

    def test_weights_outside_J(self):
        bounds = intervals(6)
        assert bounds.even_weights() == list(range(16, 47, 2))
        assert bounds.outside_J() == [16, 18, 46]
        assert bounds.in_I(47) and not bounds.in_I(48)
        assert bounds.in_J(19) and not bounds.in_J(18)

    def test_small_m_rejected(self):
        with pytest.raises(ValueError):
            intervals(4)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
