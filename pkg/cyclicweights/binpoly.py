"""
Polynomials over F2, cyclotomic cosets and the minimal/generator
polynomials of the binary cyclic codes of length 2^m - 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import ConfigurationError, InternalConsistencyError
from .gf2m import FieldElem, FieldSpec, clmul

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinPoly:
    """
    Polynomial over F2 packed into an int: bit i is the coefficient of x^i.

    The zero polynomial has degree None.
    """

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("BinPoly bits must be non-negative")

    @classmethod
    def zero(cls) -> "BinPoly":
        return cls(0)

    @classmethod
    def one(cls) -> "BinPoly":
        return cls(1)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "BinPoly":
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[int]) -> "BinPoly":
        """Coefficients listed from x^0 upwards"""
        bits = 0
        for i, c in enumerate(coefficients):
            if c not in (0, 1):
                raise InternalConsistencyError(f"coefficient {c!r} of x^{i} is not in F2")
            bits |= c << i
        return cls(bits)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def degree(self) -> Optional[int]:
        return None if self.bits == 0 else self.bits.bit_length() - 1

    def coefficients(self) -> List[int]:
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    def exponents(self) -> List[int]:
        return [i for i in range(self.bits.bit_length()) if (self.bits >> i) & 1]

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def reciprocal(self) -> "BinPoly":
        """x^deg * p(1/x)"""
        if self.is_zero:
            return self
        deg = self.degree
        return BinPoly.from_exponents(deg - e for e in self.exponents())

    def evaluate(self, x: FieldElem) -> FieldElem:
        spec = x.spec
        acc = 0
        for c in reversed(self.coefficients()):
            acc = spec.mul_scalar(acc, x.bits) ^ c
        return FieldElem(acc, spec)

    def __add__(self, other: "BinPoly") -> "BinPoly":
        return BinPoly(self.bits ^ other.bits)

    def __mul__(self, other: "BinPoly") -> "BinPoly":
        return poly_mul(self, other)

    def __floordiv__(self, other: "BinPoly") -> "BinPoly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "BinPoly") -> "BinPoly":
        return poly_divmod(self, other)[1]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def poly_mul(p: BinPoly, q: BinPoly) -> BinPoly:
    return BinPoly(clmul(p.bits, q.bits))


def poly_divmod(p: BinPoly, d: BinPoly) -> Tuple[BinPoly, BinPoly]:
    """Quotient and remainder of p by d over F2"""
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    quotient = 0
    remainder = p.bits
    deg_d = d.degree
    while remainder and remainder.bit_length() - 1 >= deg_d:
        shift = remainder.bit_length() - 1 - deg_d
        quotient |= 1 << shift
        remainder ^= d.bits << shift
    return BinPoly(quotient), BinPoly(remainder)


def x_pow_minus_one(n: int) -> BinPoly:
    return BinPoly((1 << n) | 1)


# --- cyclotomic cosets ------------------------------------------------------

@dataclass(frozen=True)
class CosetSet:
    """Orbit of an exponent under doubling modulo 2^m - 1"""

    representative: int
    members: Tuple[int, ...]
    n: int

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, exponent: int) -> bool:
        return exponent % self.n in self.members


@lru_cache(maxsize=4096)
def cyclotomic_coset(i: int, m: int) -> CosetSet:
    """
    Cyclotomic coset of i modulo n = 2^m - 1.

    Args:
        i: Any integer exponent, normalised mod n
        m: Extension degree

    Returns:
        CosetSet with sorted members and the minimal member as representative
    """
    n = (1 << m) - 1
    start = i % n
    orbit = {start}
    j = (2 * start) % n
    while j != start:
        orbit.add(j)
        j = (2 * j) % n
    members = tuple(sorted(orbit))
    if m % len(members):
        raise InternalConsistencyError(f"coset of {i} has size {len(members)} not dividing m={m}")
    return CosetSet(representative=members[0], members=members, n=n)


def minimal_poly(i: int, spec: FieldSpec) -> BinPoly:
    """
    Minimal polynomial of alpha^i over F2, expanded as the product of
    (x - alpha^j) over the cyclotomic coset of i.

    Raises:
        InternalConsistencyError: if the expansion leaves a coefficient outside F2
    """
    coset = cyclotomic_coset(i, spec.m)
    coeffs = [1]
    for j in coset.members:
        root = int(spec.exp[j % spec.order])
        shifted = [0] + coeffs
        for k, c in enumerate(coeffs):
            shifted[k] ^= spec.mul_scalar(c, root)
        coeffs = shifted
    bad = [c for c in coeffs if c not in (0, 1)]
    if bad:
        raise InternalConsistencyError(
            f"minimal polynomial of alpha^{i} in GF(2^{spec.m}) has non-binary coefficients {bad}"
        )
    return BinPoly.from_coefficients(coeffs)


# --- code families ----------------------------------------------------------

class CodeFamily(str, Enum):
    """Binary cyclic codes of length 2^m - 1 by their defining zeros"""

    HAMMING = "hamming"
    B = "B"
    M = "M"
    C = "C"

    @property
    def zeros(self) -> Tuple[int, ...]:
        return _FAMILY_ZEROS[self]


_FAMILY_ZEROS: Dict[CodeFamily, Tuple[int, ...]] = {
    CodeFamily.HAMMING: (1,),
    CodeFamily.B: (1, 3),
    CodeFamily.M: (1, -1),
    CodeFamily.C: (1, -1, 3),
}

_FAMILY_ALIASES = {
    "hamming": CodeFamily.HAMMING,
    "b": CodeFamily.B,
    "bch": CodeFamily.B,
    "m": CodeFamily.M,
    "melas": CodeFamily.M,
    "c": CodeFamily.C,
}


def get_family(name) -> CodeFamily:
    if isinstance(name, CodeFamily):
        return name
    key = str(name).strip().lower()
    if key not in _FAMILY_ALIASES:
        supported = ", ".join(sorted(_FAMILY_ALIASES.keys()))
        raise ValueError(f"Unsupported code family '{name}'. Supported: {supported}")
    return _FAMILY_ALIASES[key]


def defining_cosets(family, m: int) -> List[CosetSet]:
    """Distinct cyclotomic cosets of the family's zeros, in zero order"""
    seen: Dict[int, CosetSet] = {}
    for i in get_family(family).zeros:
        coset = cyclotomic_coset(i, m)
        seen.setdefault(coset.representative, coset)
    return list(seen.values())


def generator_poly(family, spec: FieldSpec) -> BinPoly:
    """
    Product of the distinct minimal polynomials of the family's zeros.

    Args:
        family: CodeFamily or its name (hamming, B, M, C)
        spec: Field the zeros live in

    Returns:
        Generator polynomial dividing x^n - 1, n = 2^m - 1
    """
    if spec.m <= 2:
        raise ConfigurationError(f"generator polynomials need m > 2, got m={spec.m}")
    g = BinPoly.one()
    for coset in defining_cosets(family, spec.m):
        g = g * minimal_poly(coset.representative, spec)
    remainder = x_pow_minus_one(spec.order) % g
    if not remainder.is_zero:
        raise InternalConsistencyError(f"generator of {get_family(family).value} does not divide x^n - 1")
    logger.debug("generator of %s at m=%d has degree %d", get_family(family).value, spec.m, g.degree)
    return g


def zero_exponents(family, m: int, include_one: bool = False) -> frozenset:
    """All root exponents of the generator (union of defining cosets)"""
    exponents = set()
    for coset in defining_cosets(family, m):
        exponents.update(coset.members)
    if include_one:
        exponents.add(0)
    return frozenset(exponents)
