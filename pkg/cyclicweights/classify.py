"""
Which even weights of I occur in the dual of C.

A weight w corresponds to a genus-2, two-rank-1 curve with N = 2(q - w)
points, i.e. Frobenius trace a1 = q - 1 - 2w. Inside J every weight
occurs. Outside J a weight occurs iff a1 is realised by a simple Jacobian
(the Maisner-Nart conditions) or by a Jacobian isogenous to a product of a
supersingular curve (trace s) and an ordinary curve (trace a), a1 = s + a.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import pandas as pd

from .errors import InternalConsistencyError
from .gf2m import FieldSpec, get_field
from .numtheory import (
    Intervals,
    ceil_sqrt,
    intervals,
    is_perfect_square,
    isqrt,
    prime_factors,
    square_prime_divisor,
    two_adic_square,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MNWitness:
    """
    An a2 certifying a simple Jacobian with trace a1.

    Attributes:
        delta_Z: a1^2 - 4 a2 + 8q, must not be a square in Z
        delta_2adic: (a2 + 2q)^2 - 4q a1^2, must not be a square in Z_2
    """

    m: int
    a1: int
    a2: int
    delta_Z: int
    delta_2adic: int
    in_range: bool
    divisible: bool
    delta_nonsquare: bool
    delta_2adic_nonsquare: bool

    @property
    def passed(self) -> bool:
        return self.in_range and self.divisible and self.delta_nonsquare and self.delta_2adic_nonsquare

    def recheck(self) -> bool:
        """
        Re-derive Delta, delta and every condition from (m, a1, a2) alone
        and compare them with the stored values.
        """
        q = 1 << self.m
        a1, a2 = self.a1, self.a2
        if self.delta_Z != a1 * a1 - 4 * a2 + 8 * q:
            return False
        if self.delta_2adic != (a2 + 2 * q) ** 2 - 4 * q * a1 * a1:
            return False
        # 2|a1|sqrt(q) - 2q <= a2 squared out: a2 + 2q >= 0 and 4 a1^2 q <= (a2 + 2q)^2
        in_range = (a1 * a1 <= 16 * q and a2 + 2 * q >= 0
                    and 4 * a1 * a1 * q <= (a2 + 2 * q) ** 2 and 4 * a2 <= a1 * a1 + 8 * q)
        divisible = a2 & ((1 << ((self.m + 1) // 2)) - 1) == 0
        delta_nonsquare = self.delta_Z < 0 or isqrt(self.delta_Z) ** 2 != self.delta_Z
        derived = (in_range, divisible, delta_nonsquare, not two_adic_square(self.delta_2adic))
        return derived == (self.in_range, self.divisible, self.delta_nonsquare, self.delta_2adic_nonsquare)

    def to_dict(self) -> Dict[str, object]:
        return {"a1": self.a1, "a2": self.a2, "Delta": self.delta_Z, "delta": self.delta_2adic,
                "conditions": {"range": self.in_range, "divisible": self.divisible,
                               "Delta_not_square": self.delta_nonsquare,
                               "delta_not_2adic_square": self.delta_2adic_nonsquare}}


@dataclass(frozen=True)
class SplitWitness:
    """
    a1 = s + a with s a supersingular trace and a an odd ordinary trace.

    prime is the odd prime p through which the two elliptic curves are
    glued: p^2 divides s - a when s = +-2 sqrt(q) (m even), p divides s - a
    otherwise.
    """

    m: int
    a1: int
    s: int
    a: int
    prime: int

    @property
    def sq_divisor(self) -> int:
        return self.prime * self.prime

    def supersingular_traces(self) -> Tuple[int, ...]:
        if self.m % 2 == 0:
            return (1 << (self.m // 2 + 1), -(1 << (self.m // 2 + 1)))
        root_2q = 1 << ((self.m + 1) // 2)
        return (0, root_2q, -root_2q)

    def recheck(self) -> bool:
        """Check the decomposition and the gluing prime against s - a"""
        q = 1 << self.m
        diff = self.s - self.a
        if self.s + self.a != self.a1 or self.s not in self.supersingular_traces():
            return False
        if self.a % 2 == 0 or self.a * self.a > 4 * q:
            return False
        if self.prime < 3 or prime_factors(self.prime) != [self.prime]:
            return False
        if self.m % 2 == 0:
            return diff % self.sq_divisor == 0
        return abs(diff) != 1 and diff % self.prime == 0

    def to_dict(self) -> Dict[str, object]:
        return {"a1": self.a1, "s": self.s, "a": self.a, "prime": self.prime}


class WeightStatus(str, Enum):
    IN_J = "in_J_guaranteed"
    SIMPLE = "simple"
    SPLIT = "split"
    ABSENT = "absent"


@dataclass
class WeightVerdict:
    weight: int
    status: WeightStatus
    a1: int
    mn: Optional[MNWitness] = None
    split: Optional[SplitWitness] = None
    observed: Optional[bool] = None

    @property
    def occurs(self) -> bool:
        return self.status is not WeightStatus.ABSENT

    def to_dict(self) -> Dict[str, object]:
        data = {"weight": self.weight, "status": self.status.value, "a1": self.a1}
        if self.mn is not None:
            data["mn"] = self.mn.to_dict()
        if self.split is not None:
            data["split"] = self.split.to_dict()
        if self.observed is not None:
            data["observed"] = self.observed
        return data


@dataclass
class WeightReport:
    """
    Verdict for every even weight of I, with provenance.

    mismatches is filled only when predictions were compared against an
    enumeration; each entry names the weight and what disagreed.
    """

    m: int
    intervals: Intervals
    verdicts: List[WeightVerdict]
    provenance: str = "predicted"
    mismatches: List[Dict[str, object]] = field(default_factory=list)

    def predicted_weights(self) -> FrozenSet[int]:
        return frozenset(v.weight for v in self.verdicts if v.occurs)

    def extras(self) -> List[int]:
        """Occurring weights outside J"""
        return sorted(v.weight for v in self.verdicts
                      if v.occurs and v.status is not WeightStatus.IN_J)

    def verdict(self, weight: int) -> WeightVerdict:
        for v in self.verdicts:
            if v.weight == weight:
                return v
        raise KeyError(f"{weight} is not an even weight of I for m={self.m}")

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "I": list(self.intervals.I),
            "J": list(self.intervals.J),
            "provenance": self.provenance,
            "extras": self.extras(),
            "mismatches": self.mismatches,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }

    def to_dataframe(self) -> pd.DataFrame:
        rows = []
        for v in self.verdicts:
            rows.append({
                "m": self.m,
                "weight": v.weight,
                "status": v.status.value,
                "a1": v.a1,
                "a2": v.mn.a2 if v.mn else None,
                "delta": v.mn.delta_Z if v.mn else None,
                "witness_prime": v.split.prime if v.split else None,
            })
        frame = pd.DataFrame(rows, columns=["m", "weight", "status", "a1", "a2", "delta", "witness_prime"])
        return frame.astype({"a2": "Int64", "delta": "Int64", "witness_prime": "Int64"})


# --- Maisner-Nart -----------------------------------------------------------

def _a2_range(m: int, a1: int) -> Tuple[int, int]:
    """Integer a2 with 2|a1|sqrt(q) - 2q <= a2 <= a1^2/4 + 2q"""
    q = 1 << m
    lower = ceil_sqrt(4 * a1 * a1 * q) - 2 * q
    upper = (a1 * a1 + 8 * q) // 4
    return lower, upper


def _mn_witness(m: int, a1: int, a2: int) -> MNWitness:
    q = 1 << m
    lower, upper = _a2_range(m, a1)
    delta_Z = a1 * a1 - 4 * a2 + 8 * q
    delta_2adic = (a2 + 2 * q) ** 2 - 4 * q * a1 * a1
    return MNWitness(
        m=m, a1=a1, a2=a2, delta_Z=delta_Z, delta_2adic=delta_2adic,
        in_range=lower <= a2 <= upper and a1 * a1 <= 16 * q,
        divisible=a2 % (1 << ((m + 1) // 2)) == 0,
        delta_nonsquare=not is_perfect_square(delta_Z),
        delta_2adic_nonsquare=not two_adic_square(delta_2adic),
    )


def mn_simple_exists(m: int, a1: int) -> Optional[MNWitness]:
    """
    First a2 (ascending) meeting every Maisner-Nart condition for a1.

    Args:
        m: Extension degree
        a1: Odd Frobenius trace

    Returns:
        MNWitness, or None when no admissible a2 exists

    Raises:
        ValueError: a1 is even
    """
    if a1 % 2 == 0:
        raise ValueError(f"a1 must be odd, got {a1}")
    q = 1 << m
    if a1 * a1 > 16 * q:
        return None
    step = 1 << ((m + 1) // 2)
    lower, upper = _a2_range(m, a1)
    a2 = -(-lower // step) * step
    while a2 <= upper:
        witness = _mn_witness(m, a1, a2)
        if witness.passed:
            return witness
        a2 += step
    return None


def lemma_j_witness(m: int, a1: int) -> Optional[MNWitness]:
    """
    For m even and |a1| <= 4 sqrt(q) - 2 q^(1/4), the explicit admissible
    a2 = 2|a1| sqrt(q) - 2q + sqrt(q) (+ sqrt(q) more when |a1| = 3 sqrt(q) - 1).

    Returns None when m is odd or a1 lies outside that bound.
    """
    if m % 2 or a1 % 2 == 0:
        return None
    q = 1 << m
    root = isqrt(q)
    t = 4 * root - abs(a1)
    # |a1| <= 4 sqrt(q) - 2 q^(1/4)  <=>  t >= 0 and t^2 >= 4 sqrt(q)
    if t < 0 or t * t < 4 * root:
        return None
    a2 = 2 * abs(a1) * root - 2 * q + root
    if abs(a1) == 3 * root - 1:
        a2 += root
    return _mn_witness(m, a1, a2)


# --- split Jacobians --------------------------------------------------------

def split_occurs_even_m(m: int, a1: int) -> Optional[SplitWitness]:
    """
    a1 = s + a with s = +-2^(m/2 + 1), a odd, a^2 <= 4q and s - a not squarefree.

    Raises:
        ValueError: m is odd
    """
    if m % 2:
        raise ValueError(f"split_occurs_even_m needs even m, got {m}")
    q = 1 << m
    for s in (1 << (m // 2 + 1), -(1 << (m // 2 + 1))):
        a = a1 - s
        if a % 2 == 0 or a * a > 4 * q:
            continue
        p = square_prime_divisor(s - a)
        if p is not None:
            return SplitWitness(m=m, a1=a1, s=s, a=a, prime=p)
    return None


def split_occurs_odd_m(m: int, a1: int) -> Optional[SplitWitness]:
    """
    a1 = s + a with s in {0, +-sqrt(2q)}, a odd, a^2 <= 4q and s - a != +-1.

    Raises:
        ValueError: m is even
    """
    if m % 2 == 0:
        raise ValueError(f"split_occurs_odd_m needs odd m, got {m}")
    q = 1 << m
    root_2q = 1 << ((m + 1) // 2)
    for s in (0, root_2q, -root_2q):
        a = a1 - s
        if a % 2 == 0 or a * a > 4 * q or abs(s - a) == 1:
            continue
        return SplitWitness(m=m, a1=a1, s=s, a=a, prime=min(prime_factors(s - a)))
    return None


# --- predictors -------------------------------------------------------------

def _classify_weight(m: int, bounds: Intervals, weight: int) -> WeightVerdict:
    q = 1 << m
    a1 = q - 1 - 2 * weight
    if bounds.in_J(weight):
        return WeightVerdict(weight, WeightStatus.IN_J, a1)
    split = split_occurs_even_m(m, a1) if m % 2 == 0 else split_occurs_odd_m(m, a1)
    mn = mn_simple_exists(m, a1)
    for witness in (mn, split):
        if witness is not None and not witness.recheck():
            raise InternalConsistencyError(f"witness for a1={a1} at m={m} fails its recheck: {witness}")
    if split is not None:
        status = WeightStatus.SPLIT
    elif mn is not None:
        status = WeightStatus.SIMPLE
    else:
        status = WeightStatus.ABSENT
    return WeightVerdict(weight, status, a1, mn=mn, split=split)


def predict_weight_set(m: int) -> WeightReport:
    """
    Verdicts for every even weight of I.

    Args:
        m: Extension degree, at least 5

    Returns:
        WeightReport with provenance "predicted"
    """
    bounds = intervals(m)
    verdicts = [_classify_weight(m, bounds, w) for w in bounds.even_weights()]
    report = WeightReport(m=m, intervals=bounds, verdicts=verdicts)
    logger.info("Predicted m=%d: I=%s J=%s extras=%s", m, bounds.I, bounds.J, report.extras())
    return report


def compare_predicted_vs_bruteforce(m: int, spec: Optional[FieldSpec] = None, **kwargs) -> WeightReport:
    """
    Predict, enumerate the dual of C, and record every disagreement.

    Keyword arguments go to codes.dual_weight_set (workers,
    allow_expensive, limits, cache).

    Raises:
        BudgetExceededError: enumeration refused at this m
    """
    from .codes import dual_weight_set

    spec = spec if spec is not None else get_field(m)
    report = predict_weight_set(m)
    observed = dual_weight_set(spec, **kwargs)
    bounds = report.intervals

    mismatches: List[Dict[str, object]] = []
    for w in sorted(observed):
        if w % 2 or not bounds.in_I(w):
            mismatches.append({"weight": w, "reason": "observed weight is odd or outside I"})
    for v in report.verdicts:
        v.observed = v.weight in observed
        if v.occurs and not v.observed:
            mismatches.append({"weight": v.weight, "reason": f"predicted {v.status.value}, not observed"})
        elif v.observed and not v.occurs:
            mismatches.append({"weight": v.weight, "reason": "observed, predicted absent"})
    report.mismatches = mismatches
    report.provenance = "both"
    if mismatches:
        logger.error("m=%d: %d prediction mismatches", m, len(mismatches))
    else:
        logger.info("m=%d: prediction agrees with enumeration (%d weights)", m, len(observed))
    return report


# --- the published tables ---------------------------------------------------

EXPECTED_TABLE_ROWS: Dict[int, Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, ...]]] = {
    6: ((16, 47), (19, 44), ()),
    7: ((42, 85), (47, 80), (46, 82, 84)),
    8: ((96, 159), (100, 155), ()),
    9: ((211, 300), (219, 292), (216, 218, 294, 296)),
    10: ((448, 575), (454, 569), (452,)),
    11: ((934, 1113), (945, 1102), (938, 942, 944, 1104, 1106)),
    12: ((1920, 2175), (1928, 2167), (1924,)),
}


@dataclass(frozen=True)
class TableRow:
    m: int
    I: Tuple[int, int]  # noqa: E741
    J: Tuple[int, int]
    extras: Tuple[int, ...]
    expected: Optional[Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, ...]]] = None

    @property
    def matches(self) -> bool:
        return self.expected is not None and (self.I, self.J, self.extras) == self.expected

    def to_dict(self) -> Dict[str, object]:
        return {"q": f"2^{self.m}", "m": self.m, "I": list(self.I), "J": list(self.J),
                "extras": list(self.extras), "matches": self.matches}


def reproduce_tables(ms: Iterable[int] = range(6, 13),
                     expected: Optional[Dict[int, Tuple]] = None) -> List[TableRow]:
    """Rows (I, J, occurring weights of I outside J) for each m"""
    expected = EXPECTED_TABLE_ROWS if expected is None else expected
    rows = []
    for m in ms:
        report = predict_weight_set(m)
        rows.append(TableRow(m, report.intervals.I, report.intervals.J,
                             tuple(report.extras()), expected.get(m)))
    return rows
