"""
The curve X = {f = 0, g = 0} whose rational points are weight-5 words of C,
the plane curve h = a*g + c*f, and the genus-2 curves
y^2 + y = a/x + b*x + c*x^3 + d whose point counts give dual weights.
"""

from __future__ import annotations

import itertools
import logging
import re
import time
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from multiprocessing import Pool
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .binpoly import BinPoly, CodeFamily, generator_poly
from .config import DEFAULT_LIMITS, EnumerationLimits
from .errors import DegenerateCurveError, InternalConsistencyError
from .gf2m import FieldElem, FieldSpec, get_field
from .numtheory import isqrt

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]
_VARIABLES = "xyz"

AP_CONSTANT = 220


# --- symbolic polynomials ---------------------------------------------------

@dataclass(frozen=True)
class TriPoly:
    """
    Polynomial over F2 in x, y, z as a set of exponent triples.

    Addition is symmetric difference, so equal monomials cancel.
    """

    terms: FrozenSet[Monomial]

    @classmethod
    def parse(cls, text: str) -> "TriPoly":
        """Parse sums of monomials such as "1 + x^2*y + x*z" """
        terms: Counter = Counter()
        for chunk in text.replace(" ", "").split("+"):
            exponent = [0, 0, 0]
            if chunk != "1":
                for factor in chunk.split("*"):
                    match = re.fullmatch(r"([xyz])(?:\^(\d+))?", factor)
                    if not match:
                        raise ValueError(f"Cannot parse monomial factor '{factor}' in '{text}'")
                    exponent[_VARIABLES.index(match.group(1))] += int(match.group(2) or 1)
            terms[tuple(exponent)] += 1
        return cls(frozenset(t for t, n in terms.items() if n % 2))

    @classmethod
    def constant(cls, value: int = 1) -> "TriPoly":
        return cls(frozenset({(0, 0, 0)}) if value % 2 else frozenset())

    def __add__(self, other: "TriPoly") -> "TriPoly":
        return TriPoly(self.terms ^ other.terms)

    def __mul__(self, other: "TriPoly") -> "TriPoly":
        counts: Counter = Counter()
        for s in self.terms:
            for t in other.terms:
                counts[(s[0] + t[0], s[1] + t[1], s[2] + t[2])] += 1
        return TriPoly(frozenset(t for t, n in counts.items() if n % 2))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, var: str) -> int:
        i = _VARIABLES.index(var)
        return max((t[i] for t in self.terms), default=-1)

    def derivative(self, var: str) -> "TriPoly":
        """Formal partial derivative; d/dv v^e = e v^(e-1) vanishes for even e"""
        i = _VARIABLES.index(var)
        terms = set()
        for t in self.terms:
            if t[i] % 2:
                reduced = list(t)
                reduced[i] -= 1
                terms.add(tuple(reduced))
        return TriPoly(frozenset(terms))

    def coefficient(self, var: str, power: int) -> "TriPoly":
        """Coefficient of var^power, a polynomial in the other variables"""
        i = _VARIABLES.index(var)
        terms = set()
        for t in self.terms:
            if t[i] == power:
                reduced = list(t)
                reduced[i] = 0
                terms.add(tuple(reduced))
        return TriPoly(frozenset(terms))

    def permute(self, order: Tuple[int, int, int]) -> "TriPoly":
        """Substitute variable order[i] for variable i"""
        terms = set()
        for t in self.terms:
            permuted = [0, 0, 0]
            for i, e in enumerate(t):
                permuted[order[i]] = e
            terms.add(tuple(permuted))
        return TriPoly(frozenset(terms))

    def evaluate(self, spec: FieldSpec, x, y=0, z=0) -> np.ndarray:
        """Evaluate at field values (ints or numpy arrays, broadcast)"""
        x, y, z = (np.asarray(v, dtype=np.int64) for v in (x, y, z))
        shape = np.broadcast_shapes(x.shape, y.shape, z.shape)
        total = np.zeros(shape, dtype=np.int64)
        powers: Dict[Tuple[int, int], np.ndarray] = {}

        def power(i: int, e: int) -> np.ndarray:
            if (i, e) not in powers:
                powers[(i, e)] = spec.power((x, y, z)[i], e)
            return powers[(i, e)]

        for t in sorted(self.terms):
            term = np.ones(shape, dtype=np.int64)
            for i, e in enumerate(t):
                if e:
                    term = spec.mul(term, power(i, e))
            total ^= term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in sorted(self.terms, key=lambda t: (-sum(t), t)):
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(_VARIABLES, t) if e]
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)


F_POLY = TriPoly.parse(
    "x + y + z + x^2 + y^2 + z^2 + x^2*y + x^2*z + x*y^2 + y^2*z + x*z^2 + y*z^2"
)
G_POLY = TriPoly.parse(
    "x^2*y + x^2*z + x*y^2 + y^2*z + x*z^2 + y*z^2 + x*y*z + x*y + x*z + y*z"
    " + x^2*y*z + x*y^2*z + x*y*z^2"
)
H_POLY = TriPoly.parse(
    "x^3*y^2 + x^3*y + x^3 + x^2*y^3 + x^2 + x*y^3 + x*y + y^3 + y^2"
)
A_POLY = TriPoly.parse("1 + x + y")
C_POLY = TriPoly.parse("x*y + x + y")


def _check_same(*elems: FieldElem) -> FieldSpec:
    spec = elems[0].spec
    for e in elems[1:]:
        if e.spec != spec:
            raise ValueError("coordinates from different fields")
    return spec


def eval_f(x: FieldElem, y: FieldElem, z: FieldElem) -> FieldElem:
    spec = _check_same(x, y, z)
    return spec.element(int(F_POLY.evaluate(spec, x.bits, y.bits, z.bits)))


def eval_g(x: FieldElem, y: FieldElem, z: FieldElem) -> FieldElem:
    spec = _check_same(x, y, z)
    return spec.element(int(G_POLY.evaluate(spec, x.bits, y.bits, z.bits)))


def eval_h(x: FieldElem, y: FieldElem) -> FieldElem:
    spec = _check_same(x, y)
    return spec.element(int(H_POLY.evaluate(spec, x.bits, y.bits)))


def verify_fgh_identity(h: TriPoly = H_POLY) -> bool:
    """Symbolic check of a*g + c*f = h"""
    return A_POLY * G_POLY + C_POLY * F_POLY == h


def verify_fgh_identity_pointwise(spec: FieldSpec, h: TriPoly = H_POLY) -> bool:
    """The same identity evaluated on all of GF(2^m)^3"""
    values = np.arange(spec.q, dtype=np.int64)
    x, y, z = np.meshgrid(values, values, values, indexing="ij")
    lhs = (spec.mul(A_POLY.evaluate(spec, x, y, z), G_POLY.evaluate(spec, x, y, z))
           ^ spec.mul(C_POLY.evaluate(spec, x, y, z), F_POLY.evaluate(spec, x, y, z)))
    return bool(np.array_equal(lhs, h.evaluate(spec, x, y, z)))


def derive_b_d() -> Tuple[TriPoly, TriPoly]:
    """
    Write f = a z^2 + a^2 z + b and g = c z^2 + a c z + d.

    Returns:
        (b, d) as polynomials in x, y

    Raises:
        InternalConsistencyError: f or g is not of that shape
    """
    expected = {
        ("f", 2): A_POLY, ("f", 1): A_POLY * A_POLY,
        ("g", 2): C_POLY, ("g", 1): A_POLY * C_POLY,
    }
    for name, poly in (("f", F_POLY), ("g", G_POLY)):
        if poly.degree_in("z") != 2:
            raise InternalConsistencyError(f"{name} has z-degree {poly.degree_in('z')}, expected 2")
        for power in (2, 1):
            if poly.coefficient("z", power) != expected[(name, power)]:
                raise InternalConsistencyError(
                    f"coefficient of z^{power} in {name} is {poly.coefficient('z', power)}, "
                    f"expected {expected[(name, power)]}"
                )
    return F_POLY.coefficient("z", 0), G_POLY.coefficient("z", 0)


# --- points of X ------------------------------------------------------------

@dataclass(frozen=True)
class XPoint:
    x: FieldElem
    y: FieldElem
    z: FieldElem

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.x.bits, self.y.bits, self.z.bits)

    def to_hex(self) -> List[str]:
        return [self.x.hex(), self.y.hex(), self.z.hex()]


DEGENERATE_POINTS: Tuple[Tuple[int, int, int], ...] = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))


def good_mask(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """0, 1, x, y, z and w = 1 + x + y + z pairwise distinct"""
    w = 1 ^ x ^ y ^ z
    coords = [x, y, z, w]
    mask = np.ones(np.shape(x), dtype=bool)
    for v in coords:
        mask &= (v != 0) & (v != 1)
    for u, v in itertools.combinations(coords, 2):
        mask &= u != v
    return mask


@dataclass
class XPointSet:
    """
    Rational points of X over GF(2^m), sorted by (x, y, z).

    Attributes:
        spec: Field
        coords: int64 array of shape (N, 3)
    """

    spec: FieldSpec
    coords: np.ndarray

    @property
    def count(self) -> int:
        return len(self.coords)

    @cached_property
    def good(self) -> np.ndarray:
        return good_mask(self.coords[:, 0], self.coords[:, 1], self.coords[:, 2])

    @property
    def good_count(self) -> int:
        return int(self.good.sum())

    @property
    def points(self) -> List[XPoint]:
        return [self._point(row) for row in self.coords]

    def good_points(self) -> List[XPoint]:
        return [self._point(row) for row in self.coords[self.good]]

    def contains(self, point: Tuple[int, int, int]) -> bool:
        return bool(np.any(np.all(self.coords == np.asarray(point), axis=1)))

    def _point(self, row) -> XPoint:
        return XPoint(*(self.spec.element(int(v)) for v in row))

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.spec.m,
            "modulus_hex": self.spec.modulus_hex,
            "modulus_hash": self.spec.modulus_hash,
            "N": self.count,
            "good_count": self.good_count,
            "points": [[f"{int(v):#x}" for v in row] for row in self.coords],
        }


def _sorted_coords(parts: Iterable[np.ndarray]) -> np.ndarray:
    parts = [p for p in parts if len(p)]
    if not parts:
        return np.zeros((0, 3), dtype=np.int64)
    coords = np.concatenate(parts)
    order = np.lexsort((coords[:, 2], coords[:, 1], coords[:, 0]))
    return coords[order]


def _x_points_chunk(m: int, modulus: int, x_lo: int, x_hi: int) -> np.ndarray:
    """Points with x in [x_lo, x_hi) and a(x, y) != 0"""
    spec = get_field(m, modulus)
    b_poly, _ = derive_b_d()
    xs = np.arange(x_lo, x_hi, dtype=np.int64)[:, None]
    ys = np.arange(spec.q, dtype=np.int64)[None, :]
    x, y = np.broadcast_arrays(xs, ys)
    a = 1 ^ x ^ y
    live = a != 0
    x, y, a = x[live], y[live], a[live]
    # f / a = z^2 + a z + b / a
    r = spec.div(b_poly.evaluate(spec, x, y), a)
    z0, solvable = spec.solve_quadratic(a, r)
    x, y, a, z0 = x[solvable], y[solvable], a[solvable], z0[solvable]
    found = []
    for z in (z0, z0 ^ a):
        on_g = G_POLY.evaluate(spec, x, y, z) == 0
        found.append(np.stack([x[on_g], y[on_g], z[on_g]], axis=1))
    return np.concatenate(found)


def _x_points_chunk_task(args) -> np.ndarray:
    return _x_points_chunk(*args)


def _x_points_on_a_zero(spec: FieldSpec) -> np.ndarray:
    """
    Points with y = 1 + x, where f reduces to b(x, 1 + x) = x(1 + x); only
    x in {0, 1} survive and g is then scanned over every z.
    """
    xs = np.arange(spec.q, dtype=np.int64)
    b_poly, _ = derive_b_d()
    candidates = xs[b_poly.evaluate(spec, xs, 1 ^ xs) == 0]
    z = np.arange(spec.q, dtype=np.int64)
    found = []
    for x in (int(v) for v in candidates):
        y = 1 ^ x
        zs = z[F_POLY.evaluate(spec, x, y, z) == 0]
        zs = zs[G_POLY.evaluate(spec, x, y, zs) == 0]
        if len(zs):
            found.append(np.stack([np.full(len(zs), x), np.full(len(zs), y), zs], axis=1))
    return _sorted_coords(found)


def x_points(spec: FieldSpec, *, allow_expensive: bool = False, workers: int = 1,
             limits: EnumerationLimits = DEFAULT_LIMITS) -> XPointSet:
    """
    All GF(2^m)-points of X.

    For each (x, y) with a(x, y) != 0, f = 0 is a quadratic in z solved
    through the trace table; the line a = 0 is scanned separately.

    Raises:
        BudgetExceededError: m above the x_points budget
    """
    limits.enforce("x_points", spec.m, spec.q * spec.q, limits.x_points_default_m,
                   limits.x_points_max_m, allow_expensive)
    start = time.perf_counter()
    rows = max(1, (1 << 20) // spec.q)
    tasks = [(spec.m, spec.modulus, lo, min(lo + rows, spec.q)) for lo in range(0, spec.q, rows)]
    if workers > 1 and len(tasks) > 1:
        with Pool(workers) as pool:
            parts = pool.map(_x_points_chunk_task, tasks)
    else:
        parts = [_x_points_chunk_task(task) for task in tasks]
    parts.append(_x_points_on_a_zero(spec))
    result = XPointSet(spec, _sorted_coords(parts))
    logger.info("X over GF(2^%d): %d points, %d good, %.2fs",
                spec.m, result.count, result.good_count, time.perf_counter() - start)
    return result


def x_points_bruteforce(spec: FieldSpec, limits: EnumerationLimits = DEFAULT_LIMITS) -> XPointSet:
    """Scan all of GF(2^m)^3"""
    limits.enforce("x_points_bruteforce", spec.m, spec.q ** 3, limits.x_bruteforce_max_m)
    values = np.arange(spec.q, dtype=np.int64)
    x, y, z = (v.ravel() for v in np.meshgrid(values, values, values, indexing="ij"))
    on_x = (F_POLY.evaluate(spec, x, y, z) == 0) & (G_POLY.evaluate(spec, x, y, z) == 0)
    return XPointSet(spec, _sorted_coords([np.stack([x[on_x], y[on_x], z[on_x]], axis=1)]))


@dataclass(frozen=True)
class Weight5Codeword:
    """
    Weight-5 word of C with a 1 in position 0.

    Attributes:
        labels: The field elements 1, x, y, z, w labelling the support
        positions: Discrete logarithms of the labels
    """

    labels: Tuple[FieldElem, ...]
    positions: Tuple[int, ...]

    @property
    def polynomial(self) -> BinPoly:
        return BinPoly.from_exponents(self.positions)

    @property
    def weight(self) -> int:
        return len(self.positions)


def weight5_codeword_from_point(p: XPoint) -> Weight5Codeword:
    """
    Raises:
        ValueError: the point is one of the degenerate ones
        InternalConsistencyError: the word fails a parity check
    """
    spec = _check_same(p.x, p.y, p.z)
    x, y, z = (np.array([v.bits]) for v in (p.x, p.y, p.z))
    if not good_mask(x, y, z)[0]:
        raise ValueError(f"point {p.to_hex()} does not give five distinct nonzero coordinates")
    labels = np.array([1, p.x.bits, p.y.bits, p.z.bits, 1 ^ p.x.bits ^ p.y.bits ^ p.z.bits], dtype=np.int64)
    for exponent in (1, 3, -1):
        check = np.bitwise_xor.reduce(spec.power(labels, exponent))
        if check != 0:
            raise InternalConsistencyError(
                f"point {p.to_hex()} fails the alpha^{exponent} parity check"
            )
    positions = tuple(sorted(int(spec.log[v]) for v in labels))
    return Weight5Codeword(tuple(spec.element(int(v)) for v in labels), positions)


def in_code_C(word: BinPoly, spec: FieldSpec) -> bool:
    return (word % generator_poly(CodeFamily.C, spec)).is_zero


# --- singular points --------------------------------------------------------

def x_singular_points(spec: FieldSpec, limits: EnumerationLimits = DEFAULT_LIMITS,
                      points: Optional[XPointSet] = None) -> List[XPoint]:
    """Points of X where the Jacobian of (f, g) has rank below 2"""
    limits.enforce("x_singular_points", spec.m, spec.q * spec.q, limits.singular_max_m)
    if points is None:
        points = x_points(spec, limits=limits)
    x, y, z = points.coords[:, 0], points.coords[:, 1], points.coords[:, 2]
    grad_f = [F_POLY.derivative(v).evaluate(spec, x, y, z) for v in _VARIABLES]
    grad_g = [G_POLY.derivative(v).evaluate(spec, x, y, z) for v in _VARIABLES]
    singular = np.ones(len(x), dtype=bool)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        minor = spec.mul(grad_f[i], grad_g[j]) ^ spec.mul(grad_f[j], grad_g[i])
        singular &= minor == 0
    return [points._point(row) for row in points.coords[singular]]


def singular_vs_degenerate(spec: FieldSpec, limits: EnumerationLimits = DEFAULT_LIMITS) -> Dict[str, object]:
    """Report how the singular points sit relative to the four degenerate points"""
    singular = {p.as_tuple() for p in x_singular_points(spec, limits)}
    degenerate = set(DEGENERATE_POINTS)
    return {
        "m": spec.m,
        "singular": sorted(singular),
        "degenerate": sorted(degenerate),
        "equal": singular == degenerate,
        "singular_within_degenerate": singular <= degenerate,
    }


# --- Weil bound -------------------------------------------------------------

@dataclass(frozen=True)
class WeilCheck:
    """
    |N - (q + 1)| <= 220 sqrt(q), decided exactly by squaring.

    bound is floor(220 sqrt(q)) and margin is bound - |N - q - 1|.
    """

    m: int
    N: int
    deviation: int
    bound: int
    ok: bool

    @property
    def margin(self) -> int:
        return self.bound - abs(self.deviation)

    def to_dict(self) -> Dict[str, object]:
        return {"m": self.m, "N": self.N, "deviation": self.deviation, "bound": self.bound,
                "margin": self.margin, "ok": self.ok}


def weil_bound_holds(m: int, N: int) -> bool:
    q = 1 << m
    return (N - q - 1) ** 2 <= AP_CONSTANT ** 2 * q


def weil_ap_check(spec: FieldSpec, points: Optional[XPointSet] = None, **kwargs) -> WeilCheck:
    if points is None:
        points = x_points(spec, **kwargs)
    q = spec.q
    return WeilCheck(spec.m, points.count, points.count - q - 1,
                     isqrt(AP_CONSTANT ** 2 * q), weil_bound_holds(spec.m, points.count))


def weil_lower_bound_exceeds(m: int, count: int) -> bool:
    """True iff q + 1 - 220 sqrt(q) > count, exactly"""
    q = 1 << m
    gap = q + 1 - count
    return gap > 0 and gap * gap > AP_CONSTANT ** 2 * q


def weil_threshold_m(max_m: int = 64) -> int:
    """Least m from which the bound forces more than the four degenerate points"""
    for m in range(1, max_m + 1):
        if all(weil_lower_bound_exceeds(k, len(DEGENERATE_POINTS)) for k in range(m, max_m + 1)):
            return m
    raise InternalConsistencyError("no threshold found")  # pragma: no cover


# --- the plane curve h ------------------------------------------------------

@dataclass(frozen=True)
class LinearFactor:
    """A(y) x + B(y) with coefficients listed from y^0 up, in GF(64) bits"""

    a_coeffs: Tuple[int, ...]
    b_coeffs: Tuple[int, ...]


def _subfield_elements(spec: FieldSpec, degree: int) -> np.ndarray:
    """Elements of GF(2^degree) inside spec, zero first"""
    step = spec.order // ((1 << degree) - 1)
    return np.concatenate([[0], spec.alpha_powers(np.arange(0, spec.order, step))]).astype(np.int64)


def _trim(coeffs: Tuple[int, ...]) -> Tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def h_linear_factor_search(h: TriPoly = H_POLY) -> Optional[LinearFactor]:
    """
    Search for a factor A(y) x + B(y) of h over GF(8) with A monic,
    deg A <= 2 and deg B <= 3.

    A x + B divides h iff sum_k h_k(y) B^k A^(D-k) vanishes, D the x-degree
    of h; that polynomial in y has degree at most 12 and is tested at all
    64 points of GF(64), which contains GF(8).
    """
    spec = get_field(6)
    f8 = _subfield_elements(spec, 3)
    ys = np.arange(spec.q, dtype=np.int64)
    D = h.degree_in("x")
    h_vals = [h.coefficient("x", k).evaluate(spec, 0, ys) for k in range(D + 1)]
    y_pows = [spec.power(ys, e) for e in range(4)]

    # every B with coefficients in GF(8), evaluated at all y
    b_coeffs = np.array(list(itertools.product(f8, repeat=4)), dtype=np.int64)
    b_vals = np.zeros((len(b_coeffs), spec.q), dtype=np.int64)
    for e in range(4):
        b_vals ^= spec.mul(b_coeffs[:, e:e + 1], y_pows[e][None, :])
    b_pows = [np.ones_like(b_vals)]
    for _ in range(D):
        b_pows.append(spec.mul(b_pows[-1], b_vals))

    monic_a = [(1,)] + [(c0, 1) for c0 in f8] + [(c0, c1, 1) for c0 in f8 for c1 in f8]
    for a in monic_a:
        a_val = np.zeros(spec.q, dtype=np.int64)
        for e, coeff in enumerate(a):
            a_val ^= spec.mul(coeff, y_pows[e])
        total = np.zeros_like(b_vals)
        for k in range(D + 1):
            weight = spec.mul(h_vals[k], spec.power(a_val, D - k))
            total ^= spec.mul(b_pows[k], weight[None, :])
        hits = np.flatnonzero(~total.any(axis=1))
        if len(hits):
            factor = LinearFactor(_trim(tuple(int(c) for c in a)),
                                  _trim(tuple(int(c) for c in b_coeffs[hits[0]])))
            logger.info("Found linear factor %s", factor)
            return factor
    logger.debug("No linear factor over GF(8) among %d monic A and %d B",
                 len(monic_a), len(b_coeffs))
    return None


def linear_factor_search_space() -> Dict[str, int]:
    """Raw (A, B) pairs and the monic-normalised count actually tested"""
    return {"raw_pairs": 8 ** 3 * 8 ** 4, "monic_pairs": (1 + 8 + 64) * 8 ** 4}


def h_gf4_smooth_check(h: TriPoly = H_POLY) -> bool:
    """
    For both primitive cube roots w of unity: h(w, w^2) = 0 with partials
    h_x = w and h_y = w^2 there, and b(w, w^2) = 1.
    """
    spec = get_field(4)
    b_poly, _ = derive_b_d()
    hx, hy = h.derivative("x"), h.derivative("y")
    for w in (int(spec.exp[spec.order // 3]), int(spec.exp[2 * spec.order // 3])):
        w2 = int(spec.mul_scalar(w, w))
        if int(h.evaluate(spec, w, w2)) != 0:
            return False
        if int(hx.evaluate(spec, w, w2)) != w or int(hy.evaluate(spec, w, w2)) != w2:
            return False
        if int(b_poly.evaluate(spec, w, w2)) != 1:
            return False
    return True


# --- genus-2 curves ---------------------------------------------------------

@dataclass(frozen=True)
class Genus2CurveParams:
    """y^2 + y = a/x + b x + c x^3 + d"""

    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: Optional[FieldElem] = None

    def __post_init__(self):
        if self.d is None:
            object.__setattr__(self, "d", self.a.spec.zero)
        _check_same(self.a, self.b, self.c, self.d)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @property
    def is_degenerate(self) -> bool:
        return self.a.bits == 0 or self.c.bits == 0


@dataclass(frozen=True)
class PointCountRecord:
    """
    Z: x != 0 with Tr(a/x + b x + c x^3 + d) = 0; N = 2Z + 2; a1 = N - q - 1.
    """

    m: int
    params: Genus2CurveParams
    Z: int
    N: int
    a1: int
    degenerate: bool = False

    @property
    def weight(self) -> int:
        return (1 << self.m) - self.N // 2

    def to_dict(self) -> Dict[str, object]:
        p = self.params
        return {"m": self.m, "a": p.a.hex(), "b": p.b.hex(), "c": p.c.hex(), "d": p.d.hex(),
                "Z": self.Z, "N": self.N, "a1": self.a1, "degenerate": self.degenerate}


def genus2_point_count(params: Genus2CurveParams, spec: FieldSpec) -> PointCountRecord:
    if params.spec != spec:
        raise ValueError("curve parameters are not in the requested field")
    x = spec.nonzero_elements()
    args = (spec.mul(params.a.bits, spec.inv(x)) ^ spec.mul(params.b.bits, x)
            ^ spec.mul(params.c.bits, spec.power(x, 3)) ^ params.d.bits)
    Z = int(spec.order - spec.trace(args).sum(dtype=np.int64))
    N = 2 * Z + 2
    if params.is_degenerate:
        logger.debug("Counting degenerate parameters %s", params)
    return PointCountRecord(spec.m, params, Z, N, N - spec.q - 1, params.is_degenerate)


def lemma_char_parity(params: Genus2CurveParams, spec: FieldSpec) -> Tuple[int, int]:
    """
    (N mod 4, Tr(d)) for a genus-2 curve; the two agree in the sense that
    N = 0 mod 4 exactly when Tr(d) = 0.

    Raises:
        DegenerateCurveError: a = 0 or c = 0
    """
    if params.is_degenerate:
        raise DegenerateCurveError(f"a and c must be nonzero, got a={params.a.hex()}, c={params.c.hex()}")
    if spec.q <= 4:
        raise ValueError("needs q > 4")
    record = genus2_point_count(params, spec)
    return record.N % 4, int(spec.trace(params.d.bits))
