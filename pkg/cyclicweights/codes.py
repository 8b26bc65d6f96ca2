"""
The cyclic codes B, M, C and their duals: BCH bound, weight enumeration
through the trace representation of the dual, a direct enumeration oracle,
the MacWilliams transform and exact minimum distances.

The dual of the code with zeros {1, -1, 3} is

    { (Tr(a/x + b*x + c*x^3))_{x != 0} : a, b, c in GF(2^m) }

and dropping coefficients gives the duals of the smaller families
(Hamming: b; B: b, c; M: a, b).
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .binpoly import BinPoly, CodeFamily, generator_poly, get_family, x_pow_minus_one, zero_exponents
from .config import DEFAULT_LIMITS, EnumerationLimits
from .errors import InternalConsistencyError
from .gf2m import FieldElem, FieldSpec, get_field

logger = logging.getLogger(__name__)

CACHE_VERSION = 1

# d(C) as reported from computer algebra runs at small m
REPORTED_MIN_DISTANCES = {5: 5, 6: 7, 7: 7, 8: 5, 9: 5}

# coefficients present in each family's dual: (a active, c active); b is always active
_ACTIVE_COEFFICIENTS = {
    CodeFamily.HAMMING: (False, False),
    CodeFamily.B: (False, True),
    CodeFamily.M: (True, False),
    CodeFamily.C: (True, True),
}


@dataclass(frozen=True)
class CyclicCode:
    """Binary cyclic code of length 2^m - 1 given by its defining zeros"""

    spec: FieldSpec
    family: CodeFamily
    generator: BinPoly
    zeros: FrozenSet[int]

    @classmethod
    def build(cls, family, spec: FieldSpec) -> "CyclicCode":
        family = get_family(family)
        generator = generator_poly(family, spec)
        code = cls(spec, family, generator, zero_exponents(family, spec.m))
        if code.dimension < 1:
            raise InternalConsistencyError(f"{family.value} has dimension {code.dimension} at m={spec.m}")
        return code

    @property
    def n(self) -> int:
        return self.spec.order

    @property
    def dimension(self) -> int:
        return self.n - self.generator.degree

    @property
    def dual_dimension(self) -> int:
        return self.generator.degree

    def contains(self, word: BinPoly) -> bool:
        return (word % self.generator).is_zero

    def check_polynomial(self) -> BinPoly:
        quotient, remainder = divmod_exact(x_pow_minus_one(self.n), self.generator)
        return quotient


def divmod_exact(p: BinPoly, d: BinPoly) -> Tuple[BinPoly, BinPoly]:
    q, r = p // d, p % d
    if not r.is_zero:
        raise InternalConsistencyError(f"{d} does not divide {p}")
    return q, r


@dataclass(frozen=True)
class DualTriple:
    a: FieldElem
    b: FieldElem
    c: FieldElem


@dataclass
class WeightDistribution:
    """
    Exact weight distribution: weight -> number of codewords.

    Zero counts are never stored, so two distributions compare equal
    iff they agree at every weight.
    """

    counts: Dict[int, int]
    n: int

    def __post_init__(self):
        self.counts = {int(w): int(c) for w, c in sorted(self.counts.items()) if c}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def weights(self) -> FrozenSet[int]:
        """Nonzero weights that occur"""
        return frozenset(w for w in self.counts if w)

    def min_positive_weight(self) -> Optional[int]:
        positive = self.weights()
        return min(positive) if positive else None

    def merge(self, other: "WeightDistribution") -> "WeightDistribution":
        if other.n != self.n:
            raise ValueError(f"cannot merge distributions of lengths {self.n} and {other.n}")
        merged = dict(self.counts)
        for w, c in other.counts.items():
            merged[w] = merged.get(w, 0) + c
        return WeightDistribution(merged, self.n)

    def scaled_down(self, factor: int) -> "WeightDistribution":
        if any(c % factor for c in self.counts.values()):
            raise InternalConsistencyError(f"distribution counts not divisible by {factor}")
        return WeightDistribution({w: c // factor for w, c in self.counts.items()}, self.n)

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "total": self.total, "counts": {str(w): c for w, c in self.counts.items()}}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "WeightDistribution":
        return cls({int(w): int(c) for w, c in data["counts"].items()}, int(data["n"]))


# --- BCH bound --------------------------------------------------------------

def bch_bound(zeros_closed: Iterable[int], n: int) -> int:
    """
    1 + length of the longest cyclic run of consecutive exponents mod n.

    Args:
        zeros_closed: Full set of root exponents (a union of cyclotomic cosets)
        n: Code length

    Returns:
        Lower bound on the weight of any nonzero codeword
    """
    zeros = {z % n for z in zeros_closed}
    if len(zeros) >= n:
        return n + 1
    longest = 0
    for start in zeros:
        if (start - 1) % n in zeros:
            continue
        length = 0
        while (start + length) % n in zeros:
            length += 1
        longest = max(longest, length)
    return longest + 1


# --- single dual codewords --------------------------------------------------

def _trace_sum_arguments(spec: FieldSpec, a: int, b: int, c: int) -> np.ndarray:
    x = spec.nonzero_elements()
    return spec.mul(a, spec.inv(x)) ^ spec.mul(b, x) ^ spec.mul(c, spec.power(x, 3))


def dual_word_weight(t: DualTriple, spec: FieldSpec) -> int:
    """#{x != 0 : Tr(a/x + b x + c x^3) = 1}"""
    for elem in (t.a, t.b, t.c):
        if elem.spec != spec:
            raise ValueError(f"triple element {elem!r} not in GF(2^{spec.m})/{spec.modulus_hex}")
    values = _trace_sum_arguments(spec, t.a.bits, t.b.bits, t.c.bits)
    return int(spec.trace(values).sum(dtype=np.int64))


def dual_word_bits(t: DualTriple, spec: FieldSpec) -> np.ndarray:
    """The codeword itself, coordinate i = Tr(a/x + b x + c x^3) at x = alpha^i"""
    x = spec.alpha_powers(np.arange(spec.order))
    args = spec.mul(t.a.bits, spec.inv(x)) ^ spec.mul(t.b.bits, x) ^ spec.mul(t.c.bits, spec.power(x, 3))
    return spec.trace(args)


# --- Walsh-Hadamard enumeration ---------------------------------------------

def walsh_hadamard(values) -> np.ndarray:
    """
    Unnormalised integer Walsh-Hadamard transform along the last axis.

    W[v] = sum_x values[x] * (-1)^popcount(v & x); the last axis length
    must be a power of two.
    """
    data = np.array(values, dtype=np.int64, copy=True)
    size = data.shape[-1]
    if size & (size - 1):
        raise ValueError(f"transform length must be a power of two, got {size}")
    flat = data.reshape(-1, size)
    h = 1
    while h < size:
        view = flat.reshape(flat.shape[0], size // (2 * h), 2, h)
        lo = view[:, :, 0, :].copy()
        hi = view[:, :, 1, :]
        view[:, :, 0, :] += hi
        view[:, :, 1, :] = lo - hi
        h *= 2
    return flat.reshape(data.shape)


def _sign_rows(spec: FieldSpec, a_values: np.ndarray, c: int) -> np.ndarray:
    """Rows F_a(x) = (-1)^Tr(a/x + c x^3) for x != 0, F_a(0) = 0"""
    x = spec.nonzero_elements()
    cx3 = spec.mul(c, spec.power(x, 3))
    args = spec.mul(a_values[:, None], spec.inv(x)[None, :]) ^ cx3[None, :]
    rows = np.zeros((len(a_values), spec.q), dtype=np.int64)
    rows[:, 1:] = 1 - 2 * spec.trace(args).astype(np.int64)
    return rows


def triple_weights_row(spec: FieldSpec, a: int, c: int) -> np.ndarray:
    """
    Weights of (a, b, c) for every b, indexed by b.

    The character sum over x for Tr(b x) is a Walsh coefficient at the
    trace-dual index of b.
    """
    spectrum = walsh_hadamard(_sign_rows(spec, np.array([a], dtype=np.int64), c))[0]
    return (spec.order - spectrum[spec.trace_dual_index]) // 2


def _walsh_histogram(m: int, modulus: int, a_lo: int, a_hi: int, a_active: bool,
                     c: int, multiplicity: int) -> np.ndarray:
    spec = get_field(m, modulus)
    a_values = np.arange(a_lo, a_hi, dtype=np.int64) if a_active else np.zeros(1, dtype=np.int64)
    spectrum = walsh_hadamard(_sign_rows(spec, a_values, c))
    weights = (spec.order - spectrum) // 2
    return np.bincount(weights.ravel(), minlength=spec.q).astype(np.int64) * multiplicity


def _walsh_task(args) -> np.ndarray:
    return _walsh_histogram(*args)


def _c_classes(spec: FieldSpec, c_active: bool) -> List[Tuple[int, int]]:
    """
    (representative, multiplicity) for c modulo cubes.

    x -> lambda*x sends (a, b, c) to (a/lambda, b*lambda, c*lambda^3) with the
    same weight, so the (a, b)-distribution depends only on c's cube class.
    """
    if not c_active:
        return [(0, 1)]
    if spec.m % 2:
        return [(0, 1), (1, spec.order)]
    return [(0, 1)] + [(int(spec.exp[k]), spec.order // 3) for k in range(3)]


def _walsh_tasks(spec: FieldSpec, a_active: bool, c_active: bool, chunk_rows: int):
    tasks = []
    for c, multiplicity in _c_classes(spec, c_active):
        if not a_active:
            tasks.append((spec.m, spec.modulus, 0, 1, False, c, multiplicity))
            continue
        for lo in range(0, spec.q, chunk_rows):
            tasks.append((spec.m, spec.modulus, lo, min(lo + chunk_rows, spec.q), True, c, multiplicity))
    return tasks


def _plain_histogram(spec: FieldSpec, a_active: bool, c_active: bool) -> np.ndarray:
    x = spec.nonzero_elements()
    all_values = np.arange(spec.q, dtype=np.int64)
    a_values = all_values if a_active else np.zeros(1, dtype=np.int64)
    c_values = all_values if c_active else np.zeros(1, dtype=np.int64)
    a_over_x = spec.mul(a_values[:, None], spec.inv(x)[None, :])
    bx = spec.mul(all_values[:, None], x[None, :])
    x3 = spec.power(x, 3)
    histogram = np.zeros(spec.q, dtype=np.int64)
    for c in c_values:
        cx3 = spec.mul(c, x3)
        for b_row in bx:
            args = a_over_x ^ (b_row ^ cx3)[None, :]
            weights = spec.trace(args).sum(axis=1, dtype=np.int64)
            histogram += np.bincount(weights, minlength=spec.q)
    return histogram


def _estimate_cost(spec: FieldSpec, a_active: bool, c_active: bool, method: str) -> int:
    n_a = spec.q if a_active else 1
    if method == "plain":
        return n_a * spec.q * (spec.q if c_active else 1) * spec.order
    n_c = len(_c_classes(spec, c_active))
    return n_c * n_a * spec.q * spec.m


def family_dual_distribution(family, spec: FieldSpec, *, method: str = "walsh", workers: int = 1,
                             allow_expensive: bool = False,
                             limits: EnumerationLimits = DEFAULT_LIMITS,
                             cache: Optional["WeightCache"] = None) -> WeightDistribution:
    """
    Weight distribution of the dual of a code family over its full trace
    parametrisation (q^k triples, k = number of active coefficients).

    Args:
        family: hamming, B, M or C
        spec: Field
        method: "walsh" (one transform per (a, c) row, c reduced modulo cubes)
            or "plain" (c, then b, then a, x innermost)
        workers: Worker processes for the walsh method
        allow_expensive: Lift the default m cap
        limits: Enumeration budgets
        cache: Optional WeightCache consulted before and filled after

    Raises:
        BudgetExceededError: m above the budget for the chosen method
    """
    family = get_family(family)
    a_active, c_active = _ACTIVE_COEFFICIENTS[family]
    cost = _estimate_cost(spec, a_active, c_active, method)
    if method == "plain":
        limits.enforce("plain dual enumeration", spec.m, cost, limits.plain_dual_max_m)
    elif method == "walsh":
        limits.enforce("dual enumeration", spec.m, cost, limits.dual_default_m,
                       limits.dual_max_m, allow_expensive)
    else:
        raise ValueError(f"Unsupported enumeration method '{method}'. Supported: plain, walsh")

    cache_key = f"dual-{family.value}"
    if cache is not None:
        cached = cache.load_distribution(spec, cache_key)
        if cached is not None:
            logger.info("Cache hit for %s at m=%d", cache_key, spec.m)
            return cached

    logger.info("Enumerating %s-dual at m=%d via %s (estimated cost %s)",
                family.value, spec.m, method, f"{cost:,}")
    start = time.perf_counter()
    if method == "plain":
        histogram = _plain_histogram(spec, a_active, c_active)
    else:
        chunk_rows = max(1, min(spec.q, (1 << 22) // spec.q))
        tasks = _walsh_tasks(spec, a_active, c_active, chunk_rows)
        if workers > 1 and len(tasks) > 1:
            with Pool(workers) as pool:
                parts = pool.map(_walsh_task, tasks)
        else:
            parts = [_walsh_task(task) for task in tasks]
        histogram = np.sum(parts, axis=0)
    dist = WeightDistribution({w: int(c) for w, c in enumerate(histogram)}, spec.order)
    logger.info("Finished %s-dual at m=%d in %.2fs: %d distinct weights",
                family.value, spec.m, time.perf_counter() - start, len(dist.counts))

    if cache is not None:
        cache.store_distribution(spec, cache_key, dist)
    return dist


def dual_weight_distribution(spec: FieldSpec, **kwargs) -> WeightDistribution:
    """
    Exact distribution over all q^3 triples (a, b, c).

    For m >= 4 the triples parametrise the dual of C injectively and
    counts[0] = 1; keyword arguments as for family_dual_distribution.
    """
    return family_dual_distribution(CodeFamily.C, spec, **kwargs)


def dual_weight_set(spec: FieldSpec, **kwargs) -> FrozenSet[int]:
    """Nonzero weights of the dual of C"""
    return dual_weight_distribution(spec, **kwargs).weights()


def melas_weight_set(spec: FieldSpec) -> FrozenSet[int]:
    """Weights of Tr(a/x + b x) with a != 0, i.e. the nonzero part of the Melas dual"""
    a_values = spec.nonzero_elements()
    spectrum = walsh_hadamard(_sign_rows(spec, a_values, 0))
    return frozenset(int(w) for w in np.unique((spec.order - spectrum) // 2))


# --- direct oracle ----------------------------------------------------------

_POPCOUNT_BYTE = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _popcount64(words: np.ndarray) -> np.ndarray:
    return _POPCOUNT_BYTE[words.view(np.uint8).reshape(-1, 8)].sum(axis=1)


def direct_dual_weights_oracle(spec: FieldSpec,
                               limits: EnumerationLimits = DEFAULT_LIMITS) -> WeightDistribution:
    """
    Enumerate the dual of C from its own generator, the reciprocal of the
    check polynomial (x^n - 1) / g(x), independently of the trace formula.
    """
    code = CyclicCode.build(CodeFamily.C, spec)
    k = code.dual_dimension
    limits.enforce("direct dual oracle", spec.m, (1 << k) * spec.order, limits.oracle_max_m)

    dual_generator = code.check_polynomial().reciprocal()
    words = np.zeros(1, dtype=np.uint64)
    for i in range(k):
        row = np.uint64(dual_generator.bits << i)
        words = np.concatenate([words, words ^ row])
    weights = _popcount64(words)
    counts = np.bincount(weights, minlength=spec.q)
    return WeightDistribution({w: int(c) for w, c in enumerate(counts)}, spec.order)


# --- MacWilliams ------------------------------------------------------------

def _krawtchouk_row(n: int, i: int) -> List[int]:
    """K_j(i) for j = 0..n by the three-term recurrence, exact integers"""
    row = [1, n - 2 * i]
    for j in range(1, n):
        numerator = (n - 2 * i) * row[j] - (n - j + 1) * row[j - 1]
        value, rem = divmod(numerator, j + 1)
        if rem:
            raise InternalConsistencyError(f"Krawtchouk recurrence not integral at n={n}, i={i}, j={j}")
        row.append(value)
    return row[: n + 1]


def macwilliams_transform(dist: WeightDistribution, n: int, dual_dim: int) -> WeightDistribution:
    """
    Weight distribution of the dual of a code with distribution dist.

    Args:
        dist: Distribution of a linear code of length n and dimension dual_dim
        n: Length
        dual_dim: Dimension of the code described by dist

    Returns:
        Distribution of the orthogonal code, total 2^(n - dual_dim)

    Raises:
        ValueError: dist total is not 2^dual_dim
        InternalConsistencyError: a non-integral or negative output count
    """
    if dist.total != 1 << dual_dim:
        raise ValueError(f"distribution total {dist.total} is not 2^{dual_dim}")
    sums = [0] * (n + 1)
    for i, count in dist.counts.items():
        for j, k in enumerate(_krawtchouk_row(n, i)):
            sums[j] += count * k
    counts = {}
    for j, s in enumerate(sums):
        value, rem = divmod(s, 1 << dual_dim)
        if rem or value < 0:
            raise InternalConsistencyError(
                f"MacWilliams produced {s}/2^{dual_dim} at weight {j}; input distribution is corrupt"
            )
        counts[j] = value
    result = WeightDistribution(counts, n)
    if result.total != 1 << (n - dual_dim):
        raise InternalConsistencyError(f"MacWilliams output total {result.total} != 2^{n - dual_dim}")
    return result


def _code_distribution(dist: WeightDistribution, dual_dim: int) -> WeightDistribution:
    """Collapse a parametrised enumeration to one count per codeword"""
    expected = 1 << dual_dim
    if dist.total == expected:
        return dist
    if dist.total % expected:
        raise InternalConsistencyError(f"enumeration total {dist.total} is not a multiple of 2^{dual_dim}")
    return dist.scaled_down(dist.total // expected)


# --- minimum distance -------------------------------------------------------

def min_distance_family(family, spec: FieldSpec, **kwargs) -> int:
    """Exact minimum distance via MacWilliams on the enumerated dual"""
    code = CyclicCode.build(family, spec)
    dual = _code_distribution(family_dual_distribution(family, spec, **kwargs), code.dual_dimension)
    return macwilliams_transform(dual, code.n, code.dual_dimension).min_positive_weight()


@dataclass(frozen=True)
class MinDistanceResult:
    """
    d(C) with provenance. d is None when only a lower bound is known.
    """

    m: int
    d: Optional[int]
    method: str
    lower_bound: int
    good_count: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        data = {"m": self.m, "d": self.d, "method": self.method}
        if self.d is None:
            data["lower_bound"] = self.lower_bound
        if self.good_count is not None:
            data["good_count"] = self.good_count
        return data


def min_distance_C(spec: FieldSpec, *, workers: int = 1, allow_expensive: bool = False,
                   limits: EnumerationLimits = DEFAULT_LIMITS,
                   cache: Optional["WeightCache"] = None) -> MinDistanceResult:
    """
    Minimum distance of C = B cap M.

    The BCH bound gives d >= 5 and C has no words of weight 6, so d is 5
    exactly when the curve X has a good rational point. For m <= 8 the
    MacWilliams value is computed and cross-checked against the point
    criterion; from the Weil threshold on the point count bound forces
    good points without enumeration.
    """
    from .curves import weil_threshold_m, x_points

    if spec.m < 5:
        raise ValueError(f"min_distance_C needs m >= 5, got m={spec.m}")
    code = CyclicCode.build(CodeFamily.C, spec)
    lower = bch_bound(code.zeros, code.n)

    if spec.m >= weil_threshold_m():
        return MinDistanceResult(spec.m, 5, "weil-ap-bound", lower)

    points = x_points(spec, allow_expensive=allow_expensive, limits=limits)
    if spec.m <= limits.dual_default_m:
        dual = dual_weight_distribution(spec, workers=workers, limits=limits, cache=cache)
        dist = macwilliams_transform(_code_distribution(dual, code.dual_dimension),
                                     code.n, code.dual_dimension)
        d = dist.min_positive_weight()
        if (d == 5) != (points.good_count > 0):
            raise InternalConsistencyError(
                f"MacWilliams gives d={d} but X has {points.good_count} good points at m={spec.m}"
            )
        return MinDistanceResult(spec.m, d, "macwilliams+xpoints", lower, points.good_count)

    if points.good_count > 0:
        return MinDistanceResult(spec.m, 5, "xpoints+bch", lower, points.good_count)
    return MinDistanceResult(spec.m, None, "xpoints+bch", 7, points.good_count)


# --- cache ------------------------------------------------------------------

class WeightCache:
    """
    JSON-lines cache of distributions and single-triple weights.

    One file per field; the first line is a header naming the field so a
    cache written under another modulus is never read. Every write goes
    through a temporary file and os.replace.
    """

    def __init__(self, cache_dir):
        self.cache_dir = Path(cache_dir).expanduser()

    def path_for(self, spec: FieldSpec) -> Path:
        return self.cache_dir / f"weights-m{spec.m}-{spec.modulus_hash}.jsonl"

    @staticmethod
    def header_for(spec: FieldSpec) -> Dict[str, object]:
        return {"version": CACHE_VERSION, "m": spec.m, "modulus_hex": spec.modulus_hex,
                "modulus_hash": spec.modulus_hash}

    def _read(self, spec: FieldSpec) -> Optional[List[Dict[str, object]]]:
        path = self.path_for(spec)
        if not path.exists():
            return []
        try:
            lines = path.read_text().splitlines()
            header = json.loads(lines[0]) if lines else None
            records = [json.loads(line) for line in lines[1:] if line.strip()]
        except (OSError, json.JSONDecodeError) as exc:
            logger.warning("Ignoring unreadable cache %s: %s", path, exc)
            return None
        if header != self.header_for(spec):
            logger.warning("Ignoring cache %s: header %s does not match field", path, header)
            return None
        return records

    def _append(self, spec: FieldSpec, record: Dict[str, object]) -> None:
        records = self._read(spec)
        if records is None:
            return
        records.append(record)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(spec)
        fd, tmp_name = tempfile.mkstemp(dir=self.cache_dir, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                for line in [self.header_for(spec)] + records:
                    handle.write(json.dumps(line, sort_keys=True) + "\n")
            os.replace(tmp_name, path)
        except OSError as exc:
            Path(tmp_name).unlink(missing_ok=True)
            raise OSError(f"Failed to write cache {path}: {exc}") from exc

    def load_distribution(self, spec: FieldSpec, key: str) -> Optional[WeightDistribution]:
        for record in reversed(self._read(spec) or []):
            if record.get("kind") == "distribution" and record.get("key") == key:
                return WeightDistribution.from_dict(record)
        return None

    def store_distribution(self, spec: FieldSpec, key: str, dist: WeightDistribution) -> None:
        self._append(spec, {"kind": "distribution", "key": key, **dist.to_dict()})

    def record_weight(self, spec: FieldSpec, triple: DualTriple, weight: int) -> None:
        self._append(spec, {"kind": "weight", "m": spec.m, "a": triple.a.hex(),
                            "b": triple.b.hex(), "c": triple.c.hex(), "weight": weight})

    def lookup_weight(self, spec: FieldSpec, triple: DualTriple) -> Optional[int]:
        key = (triple.a.hex(), triple.b.hex(), triple.c.hex())
        for record in self._read(spec) or []:
            if record.get("kind") == "weight" and (record["a"], record["b"], record["c"]) == key:
                return int(record["weight"])
        return None

    def stats(self) -> Dict[str, object]:
        files = sorted(self.cache_dir.glob("weights-m*.jsonl")) if self.cache_dir.exists() else []
        entries = []
        for path in files:
            with path.open() as handle:
                records = sum(1 for _ in handle) - 1
            entries.append({"file": path.name, "records": max(records, 0),
                            "bytes": path.stat().st_size})
        return {"cache_dir": str(self.cache_dir), "files": len(files), "entries": entries}

    def clear(self) -> int:
        removed = 0
        if self.cache_dir.exists():
            for path in self.cache_dir.glob("weights-m*.jsonl"):
                path.unlink()
                removed += 1
        logger.info("Removed %d cache file(s) from %s", removed, self.cache_dir)
        return removed
