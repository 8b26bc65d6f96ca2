"""
Exact integer gates: square roots, perfect and 2-adic squares,
squarefree testing and the weight intervals I and J.

No floating point is used anywhere in this module. Comparisons against
sqrt(q) and fourth roots are done by isolating radicals and squaring.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple


def isqrt(n: int) -> int:
    """Floor square root of a non-negative integer"""
    if n < 0:
        raise ValueError(f"isqrt of negative number: {n}")
    return math.isqrt(n)


def ceil_sqrt(n: int) -> int:
    """Smallest integer r with r*r >= n"""
    if n <= 0:
        return 0
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def is_perfect_square(n: int) -> bool:
    """True iff n = t^2 for some integer t. Negative numbers never are."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise ValueError("2-adic valuation of 0 is infinite")
    return (n & -n).bit_length() - 1


def two_adic_square(n: int) -> bool:
    """
    Square test in the 2-adic integers.

    n = 2^r * u with u odd is a square iff r is even and u = 1 (mod 8).
    Zero is a square; negative n is not.
    """
    if n == 0:
        return True
    if n < 0:
        return False
    r = two_adic_valuation(n)
    u = n >> r
    return r % 2 == 0 and u % 8 == 1


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of |n| by trial division"""
    n = abs(n)
    factors: List[int] = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def square_prime_divisor(n: int) -> Optional[int]:
    """
    Smallest prime p with p^2 | n, or None when n is squarefree.

    Every prime square divides 0, so 0 reports 2.
    """
    n = abs(n)
    if n == 0:
        return 2
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return p
        if n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return None


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides n (sign ignored, 0 is not squarefree)"""
    return square_prime_divisor(n) is None


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def sign_p_plus_q_sqrt(p: int, q: int, a: int) -> int:
    """Exact sign of p + q*sqrt(a) for integers p, q and a >= 0"""
    if q == 0 or a == 0:
        return _sign(p)
    sq = _sign(q)
    if p == 0 or _sign(p) == sq:
        return sq
    lhs, rhs = p * p, q * q * a
    if lhs > rhs:
        return _sign(p)
    if lhs < rhs:
        return sq
    return 0


def sum_with_sqrt_at_least_fourth_root(t: int, a: int, b: int) -> bool:
    """
    Decide t + sqrt(a) >= b^(1/4) exactly (a, b >= 0).

    The left side must be non-negative; squaring once gives
    t^2 + a + 2t*sqrt(a) >= sqrt(b), which is squared again after
    checking that its left side is non-negative.
    """
    if sign_p_plus_q_sqrt(t, 1, a) < 0:
        return False
    p, q = t * t + a, 2 * t
    if sign_p_plus_q_sqrt(p, q, a) < 0:
        return False
    return sign_p_plus_q_sqrt(p * p + q * q * a - b, 2 * p * q, a) >= 0


@dataclass(frozen=True)
class Intervals:
    """
    The weight intervals I and J for q = 2^m.

    I is an integer interval. J is a real interval with irrational
    endpoints in general; j_lo and j_hi are the smallest and largest
    integers inside it.
    """

    m: int
    i_lo: int
    i_hi: int
    j_lo: int
    j_hi: int

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def I(self) -> Tuple[int, int]:  # noqa: E743
        return (self.i_lo, self.i_hi)

    @property
    def J(self) -> Tuple[int, int]:
        return (self.j_lo, self.j_hi)

    def in_I(self, weight: int) -> bool:
        return self.i_lo <= weight <= self.i_hi

    def in_J(self, weight: int) -> bool:
        return self.j_lo <= weight <= self.j_hi

    def even_weights(self) -> List[int]:
        start = self.i_lo + (self.i_lo % 2)
        return list(range(start, self.i_hi + 1, 2))

    def outside_J(self) -> List[int]:
        """Even integers of I that are not in J"""
        return [w for w in self.even_weights() if not self.in_J(w)]


def _fourth_root_radicand(m: int) -> int:
    q = 1 << m
    return q if m % 2 == 0 else 8 * q


def _above_J_lower(weight: int, m: int) -> bool:
    # w >= q/2 - 2sqrt(q) + R^(1/4) - 1/2  <=>  t + sqrt(16q) >= (16R)^(1/4)
    q = 1 << m
    t = 2 * weight - q + 1
    return sum_with_sqrt_at_least_fourth_root(t, 16 * q, 16 * _fourth_root_radicand(m))


def _below_J_upper(weight: int, m: int) -> bool:
    q = 1 << m
    t = 2 * weight - q + 1
    return sum_with_sqrt_at_least_fourth_root(-t, 16 * q, 16 * _fourth_root_radicand(m))


def intervals(m: int) -> Intervals:
    """
    Compute I and the integer hull of J for q = 2^m.

    m even: I = [q/2 - 2sqrt(q), q/2 + 2sqrt(q) - 1],
            J = [q/2 - 2sqrt(q) + q^(1/4) - 1/2, q/2 + 2sqrt(q) - q^(1/4) - 1/2]
    m odd:  I = [q/2 - floor(2sqrt(q)), q/2 + floor(2sqrt(q)) - 1],
            J as above with (8q)^(1/4) in place of q^(1/4)

    Args:
        m: Extension degree, at least 5

    Returns:
        Intervals with exact integer endpoints
    """
    if m < 5:
        raise ValueError(f"intervals are defined for m >= 5, got m={m}")
    q = 1 << m
    two_sqrt_q = isqrt(4 * q)  # exact when m is even
    i_lo = q // 2 - two_sqrt_q
    i_hi = q // 2 + two_sqrt_q - 1

    j_lo = i_lo
    while not _above_J_lower(j_lo, m):
        j_lo += 1
    j_hi = i_hi
    while not _below_J_upper(j_hi, m):
        j_hi -= 1

    return Intervals(m=m, i_lo=i_lo, i_hi=i_hi, j_lo=j_lo, j_hi=j_hi)
