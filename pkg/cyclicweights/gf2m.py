"""
Arithmetic in GF(2^m), 3 <= m <= 20, polynomial basis.

Elements are m-bit integers (bit i is the coefficient of x^i). A FieldSpec
owns log/antilog tables built from a primitive modulus, so the class of x
is the generator alpha. Scalar operations work on FieldElem; the *array*
methods of FieldSpec work elementwise on numpy integer arrays and are what
the enumerations use.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import FrozenSet, Optional, Tuple, Union

import numpy as np

from .errors import ConfigurationError, FieldDivisionError, FieldMismatchError
from .numtheory import prime_factors

logger = logging.getLogger(__name__)

MIN_DEGREE = 3
MAX_DEGREE = 20

ArrayLike = Union[int, np.ndarray]


# --- carry-less polynomial arithmetic on ints -------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit patterns"""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_reduce(a: int, modulus: int) -> int:
    """Remainder of a modulo modulus, both as F2[x] bit patterns"""
    deg = modulus.bit_length() - 1
    while a.bit_length() - 1 >= deg:
        a ^= modulus << (a.bit_length() - 1 - deg)
    return a


def _powmod(base: int, exponent: int, modulus: int) -> int:
    result = 1
    base = poly_reduce(base, modulus)
    while exponent:
        if exponent & 1:
            result = poly_reduce(clmul(result, base), modulus)
        base = poly_reduce(clmul(base, base), modulus)
        exponent >>= 1
    return result


def is_primitive_modulus(modulus: int, m: int) -> bool:
    """
    True iff modulus has degree m and x has multiplicative order 2^m - 1
    in F2[x]/(modulus). A reducible polynomial has fewer than 2^m - 1
    units, so this also certifies irreducibility.
    """
    if modulus.bit_length() - 1 != m or not modulus & 1:
        return False
    order = (1 << m) - 1
    if _powmod(0b10, order, modulus) != 1:
        return False
    return all(_powmod(0b10, order // p, modulus) != 1 for p in prime_factors(order))


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Lexicographically least primitive polynomial of degree m"""
    _check_degree(m)
    for candidate in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_primitive_modulus(candidate, m):
            return candidate
    raise ConfigurationError(f"No primitive polynomial of degree {m} found")  # pragma: no cover


def _check_degree(m: int) -> None:
    if not MIN_DEGREE <= m <= MAX_DEGREE:
        raise ConfigurationError(
            f"Extension degree m={m} outside supported range {MIN_DEGREE}..{MAX_DEGREE}"
        )


# --- field specification ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    """
    GF(2^m) defined by a primitive modulus.

    Immutable after construction; tables are plain numpy arrays that are
    never written to, so a FieldSpec can be shared read-only across threads.
    """

    m: int
    modulus: int
    exp: np.ndarray = field(init=False, repr=False)
    log: np.ndarray = field(init=False, repr=False)
    trace_table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_degree(self.m)
        if self.modulus.bit_length() - 1 != self.m:
            raise ConfigurationError(
                f"Modulus {self.modulus:#x} has degree {self.modulus.bit_length() - 1}, expected {self.m}"
            )
        q = 1 << self.m
        order = q - 1

        # antilog table doubled so exp[log a + log b] needs no reduction
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        value = 1
        for i in range(order):
            if i > 0 and value == 1:
                raise ConfigurationError(
                    f"Modulus {self.modulus:#x} is not primitive: x has order {i} < {order}"
                )
            exp[i] = value
            log[value] = i
            value <<= 1
            if value & q:
                value ^= self.modulus
        if value != 1:
            raise ConfigurationError(f"Modulus {self.modulus:#x} is not primitive")
        exp[order:] = exp[:order]
        exp.setflags(write=False)
        log.setflags(write=False)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "log", log)

        # Tr is F2-linear: record Tr of each basis vector, then parity of a & mask
        mask = 0
        for j in range(self.m):
            if self.trace_definitional(1 << j):
                mask |= 1 << j
        values = np.arange(q, dtype=np.int64) & mask
        trace_table = _parity(values).astype(np.uint8)
        trace_table.setflags(write=False)
        object.__setattr__(self, "trace_table", trace_table)
        object.__setattr__(self, "_trace_mask", mask)
        logger.debug("Built GF(2^%d) with modulus %#x", self.m, self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.m == other.m and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __reduce__(self):
        return (get_field, (self.m, self.modulus))

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Order of the multiplicative group, q - 1"""
        return (1 << self.m) - 1

    @property
    def modulus_hex(self) -> str:
        return f"{self.modulus:#x}"

    @property
    def modulus_hash(self) -> str:
        return hashlib.sha256(f"{self.m}:{self.modulus_hex}".encode()).hexdigest()[:16]

    # scalar helpers

    def element(self, bits: int) -> "FieldElem":
        return FieldElem(int(bits), self)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)

    @property
    def alpha(self) -> "FieldElem":
        return FieldElem(2, self)

    def mul_scalar(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def mul_clmul(self, a: int, b: int) -> int:
        """Product by carry-less multiplication and reduction (no tables)"""
        return poly_reduce(clmul(a, b), self.modulus)

    def trace_definitional(self, a: int) -> int:
        """Tr(a) = a + a^2 + ... + a^(2^(m-1)) by m - 1 squarings"""
        total = a
        power = a
        for _ in range(self.m - 1):
            power = self.mul_clmul(power, power)
            total ^= power
        if total not in (0, 1):
            raise ArithmeticError(f"trace of {a:#x} left F2: {total:#x}")
        return total

    # array operations

    def mul(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        product = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, product)

    def square(self, a: ArrayLike) -> np.ndarray:
        return self.mul(a, a)

    def inv(self, a: ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldDivisionError()
        return self.exp[(self.order - self.log[a]) % self.order]

    def div(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def power(self, a: ArrayLike, e: int) -> np.ndarray:
        """a^e elementwise; e may be negative for nonzero a"""
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0 and np.any(a == 0):
            raise FieldDivisionError()
        powered = self.exp[(self.log[a] * e) % self.order]
        return np.where(a == 0, 0, powered)

    def sqrt(self, a: ArrayLike) -> np.ndarray:
        """Unique square root, a^(q/2)"""
        return self.power(a, self.q // 2)

    def trace(self, a: ArrayLike) -> np.ndarray:
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def alpha_powers(self, exponents: ArrayLike) -> np.ndarray:
        return self.exp[np.asarray(exponents, dtype=np.int64) % self.order]

    def nonzero_elements(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    @cached_property
    def artin_schreier_table(self) -> np.ndarray:
        """
        For c with Tr(c) = 0, one root u of u^2 + u = c (the other is u + 1);
        -1 where Tr(c) = 1.
        """
        u = np.arange(self.q, dtype=np.int64)
        images = self.square(u) ^ u
        table = np.full(self.q, -1, dtype=np.int64)
        table[images] = u
        table.setflags(write=False)
        return table

    @cached_property
    def trace_dual_index(self) -> np.ndarray:
        """
        Map b -> v with Tr(b*x) = parity(v & x) for every x.

        Bit j of v is Tr(b * x^j); the map is a bijection because the
        trace form is non-degenerate.
        """
        b = np.arange(self.q, dtype=np.int64)
        index = np.zeros(self.q, dtype=np.int64)
        for j in range(self.m):
            index |= self.trace(self.mul(b, 1 << j)).astype(np.int64) << j
        index.setflags(write=False)
        return index

    def solve_quadratic(self, p: np.ndarray, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Vectorised roots of z^2 + p z + r = 0 for nonzero p.

        Returns:
            (z, solvable): one root z per entry (the other is z + p) and a
            boolean mask; z is meaningless where solvable is False
        """
        p = np.asarray(p, dtype=np.int64)
        c = self.div(r, self.square(p))
        u = self.artin_schreier_table[c]
        solvable = u >= 0
        return self.mul(p, np.where(solvable, u, 0)), solvable


def _parity(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    shift = 32
    while shift:
        v ^= v >> shift
        shift //= 2
    return v & 1


@lru_cache(maxsize=None)
def get_field(m: int, modulus: Optional[int] = None) -> FieldSpec:
    """
    Cached FieldSpec for degree m, using the default modulus unless one
    is given. Raises ConfigurationError for an invalid modulus.
    """
    if modulus is None:
        modulus = default_modulus(m)
    return FieldSpec(m, modulus)


# --- elements ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldElem:
    """Element of GF(2^m) as an m-bit coefficient vector"""

    bits: int
    spec: FieldSpec = field(repr=False)

    def __post_init__(self):
        if not 0 <= self.bits < self.spec.q:
            raise ValueError(f"bits {self.bits:#x} out of range for GF(2^{self.spec.m})")

    def __repr__(self) -> str:
        return f"FieldElem({self.bits:#x}, m={self.spec.m})"

    def __int__(self) -> int:
        return self.bits

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: "FieldElem") -> "FieldElem":
        return fe_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return fe_mul(self, other)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return fe_mul(self, fe_inv(other))

    def __pow__(self, exponent: int) -> "FieldElem":
        return FieldElem(int(self.spec.power(self.bits, exponent)), self.spec)

    def hex(self) -> str:
        return f"{self.bits:#x}"


def _same_field(a: FieldElem, b: FieldElem) -> FieldSpec:
    if a.spec != b.spec:
        raise FieldMismatchError(
            f"Operands from different fields: GF(2^{a.spec.m})/{a.spec.modulus_hex} "
            f"and GF(2^{b.spec.m})/{b.spec.modulus_hex}"
        )
    return a.spec


def fe_add(a: FieldElem, b: FieldElem) -> FieldElem:
    spec = _same_field(a, b)
    return FieldElem(a.bits ^ b.bits, spec)


def fe_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    spec = _same_field(a, b)
    return FieldElem(spec.mul_scalar(a.bits, b.bits), spec)


def fe_inv(a: FieldElem) -> FieldElem:
    if a.bits == 0:
        raise FieldDivisionError()
    spec = a.spec
    return FieldElem(int(spec.exp[spec.order - spec.log[a.bits]]), spec)


def alpha_pow(i: int, spec: FieldSpec) -> FieldElem:
    """alpha^(i mod (q - 1)); negative exponents allowed"""
    return FieldElem(int(spec.exp[i % spec.order]), spec)


def fe_trace(a: FieldElem) -> int:
    """Absolute trace to F2"""
    return int(a.spec.trace_table[a.bits])


def solve_artin_schreier(p: FieldElem, r: FieldElem) -> FrozenSet[FieldElem]:
    """
    Roots of z^2 + p z + r = 0.

    For p = 0 the unique square root of r. For p != 0, substituting
    z = p u gives u^2 + u = r / p^2, which has two roots iff Tr(r / p^2) = 0.
    """
    spec = _same_field(p, r)
    if p.bits == 0:
        return frozenset({FieldElem(int(spec.sqrt(r.bits)), spec)})
    z, solvable = spec.solve_quadratic(np.array([p.bits]), np.array([r.bits]))
    if not solvable[0]:
        return frozenset()
    root = int(z[0])
    return frozenset({FieldElem(root, spec), FieldElem(root ^ p.bits, spec)})
