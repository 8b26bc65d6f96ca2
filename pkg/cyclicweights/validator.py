"""
ClaimValidator: fluent recorder for checks of computed results against
expected values (table rows, parity, intervals, distances, bounds).
"""

import json
import logging
from datetime import datetime
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import pandas as pd

from .classify import TableRow, WeightReport
from .codes import MinDistanceResult
from .curves import WeilCheck

logger = logging.getLogger(__name__)

CustomCheck = Callable[..., Tuple[bool, str, Dict[str, Any]]]


class ClaimValidator:
    """
    Collects pass/fail records the way a data validator collects column
    expectations; each expect_* call records one row and returns self.
    """

    def __init__(self, name: str = "cyclicweights checks", m: Optional[int] = None):
        """
        Args:
            name: Name for this validation context
            m: Extension degree the checks refer to, if a single one
        """
        self.name = name
        self.m = m
        self.validation_results = pd.DataFrame(columns=[
            "rule", "context", "critical", "passed", "message"
        ])
        self.metadata = {
            "created_at": datetime.now().isoformat(),
            "name": name,
            "m": m,
            "total_validations": 0,
            "passed": 0,
            "failed": 0,
            "warnings": 0,
        }

    def expect_table_row(self, row: TableRow, critical: bool = True) -> "ClaimValidator":
        """
        Check one reproduced table row against its expected values.

        Args:
            row: Row produced by reproduce_tables
            critical: Whether a mismatch fails the run
        """
        if row.expected is None:
            return self._record_failure("table_row", f"m={row.m}", critical,
                                        f"No expected row for q=2^{row.m}")
        exp_I, exp_J, exp_extras = row.expected
        result = {
            "rule": "table_row",
            "context": f"m={row.m}",
            "critical": critical,
            "passed": row.matches,
            "I": list(row.I),
            "J": list(row.J),
            "extras": list(row.extras),
            "expected_extras": list(exp_extras),
            "message": (f"q=2^{row.m}: I={list(row.I)} J={list(row.J)} extras={list(row.extras)}"
                        if row.matches else
                        f"q=2^{row.m}: got I={list(row.I)} J={list(row.J)} extras={list(row.extras)}, "
                        f"expected I={list(exp_I)} J={list(exp_J)} extras={list(exp_extras)}"),
        }
        self._record_result(result)
        return self

    def expect_even_weights(self, weights: Iterable[int], context: str = "",
                            critical: bool = True) -> "ClaimValidator":
        odd = sorted(w for w in weights if w % 2)
        result = {
            "rule": "even_weights",
            "context": context,
            "critical": critical,
            "passed": not odd,
            "odd_weights": odd[:10],
            "message": "All weights even" if not odd else f"{len(odd)} odd weight(s): {odd[:10]}",
        }
        self._record_result(result)
        return self

    def expect_weights_in_interval(self, weights: Iterable[int], lo: int, hi: int,
                                   context: str = "", critical: bool = True) -> "ClaimValidator":
        outside = sorted(w for w in weights if not lo <= w <= hi)
        result = {
            "rule": "weights_in_interval",
            "context": context,
            "critical": critical,
            "passed": not outside,
            "interval": [lo, hi],
            "outside": outside[:10],
            "message": (f"All weights within [{lo}, {hi}]" if not outside
                        else f"{len(outside)} weight(s) outside [{lo}, {hi}]: {outside[:10]}"),
        }
        self._record_result(result)
        return self

    def expect_empty_mismatch(self, report: WeightReport, critical: bool = True) -> "ClaimValidator":
        result = {
            "rule": "empty_mismatch",
            "context": f"m={report.m}",
            "critical": critical,
            "passed": not report.mismatches,
            "mismatch_count": len(report.mismatches),
            "message": (f"Prediction matches enumeration at m={report.m}" if not report.mismatches
                        else f"{len(report.mismatches)} mismatch(es) at m={report.m}: {report.mismatches[:5]}"),
        }
        self._record_result(result)
        return self

    def expect_weil_bound(self, check: WeilCheck, critical: bool = True) -> "ClaimValidator":
        result = {
            "rule": "weil_bound",
            "context": f"m={check.m}",
            "critical": critical,
            "passed": check.ok,
            "N": check.N,
            "margin": check.margin,
            "message": f"|N - (q + 1)| = {abs(check.deviation)} against bound {check.bound}",
        }
        self._record_result(result)
        return self

    def expect_min_distance(self, found: MinDistanceResult, expected: Optional[int],
                            critical: bool = True) -> "ClaimValidator":
        """
        Args:
            found: Result of min_distance_C
            expected: Expected d, or None when only "at least 7" is expected
        """
        passed = found.d == expected
        result = {
            "rule": "min_distance",
            "context": f"m={found.m}",
            "critical": critical,
            "passed": passed,
            "d": found.d,
            "method": found.method,
            "message": f"d(C) at m={found.m}: {found.d if found.d is not None else f'>= {found.lower_bound}'}"
                       f" via {found.method}" + ("" if passed else f", expected {expected}"),
        }
        self._record_result(result)
        return self

    def expect_custom(self, rule_name: str, check: CustomCheck, *args,
                      critical: bool = True, **kwargs) -> "ClaimValidator":
        """
        Record the outcome of a function returning (passed, message, details).

        Exceptions from the check are recorded as failures.
        """
        try:
            passed, message, details = check(*args, **kwargs)
            result = {"rule": rule_name, "context": "custom", "critical": critical,
                      "passed": bool(passed), "message": message, **details}
        except Exception as exc:
            result = {"rule": rule_name, "context": "custom", "critical": critical,
                      "passed": False, "message": f"Validation error: {exc}"}
        self._record_result(result)
        return self

    def _record_failure(self, rule: str, context: str, critical: bool, message: str) -> "ClaimValidator":
        self._record_result({
            "rule": rule,
            "context": context,
            "critical": critical,
            "passed": False,
            "message": message,
        })
        return self

    def _record_result(self, result: Dict[str, Any]) -> None:
        """
        Record validation result and update metadata.
        """
        row = pd.DataFrame([result])
        if self.validation_results.empty:
            self.validation_results = row
        else:
            self.validation_results = pd.concat([self.validation_results, row], ignore_index=True)
        self.metadata["total_validations"] += 1

        if result["passed"]:
            self.metadata["passed"] += 1
            logger.info("Check passed: %s", result["message"])
        elif result.get("critical", True):
            self.metadata["failed"] += 1
            logger.error("Check failed: %s", result["message"])
        else:
            self.metadata["warnings"] += 1
            logger.warning("Check warning: %s", result["message"])

    def _records(self) -> List[Dict[str, Any]]:
        records = self.validation_results.to_dict(orient="records")
        return [{k: v for k, v in r.items() if not _is_missing(v)} for r in records]

    def get_results(self) -> Dict[str, Any]:
        total = self.metadata["total_validations"]
        return {
            "metadata": dict(self.metadata),
            "summary": {
                "total": total,
                "passed": self.metadata["passed"],
                "failed": self.metadata["failed"],
                "warnings": self.metadata["warnings"],
                "success_rate": round(100 * self.metadata["passed"] / total, 2) if total else 0,
            },
            "results": self._records(),
        }

    def get_failed_validations(self) -> List[Dict[str, Any]]:
        return [r for r in self._records() if not r["passed"]]

    def is_valid(self) -> bool:
        """True iff no critical check failed"""
        return self.metadata["failed"] == 0

    def to_dataframe(self) -> pd.DataFrame:
        return self.validation_results.copy()

    def to_json(self, indent: Optional[int] = 2) -> str:
        from .reporters import NumpyEncoder

        return json.dumps(self.get_results(), cls=NumpyEncoder, indent=indent)


def _is_missing(value: Any) -> bool:
    if isinstance(value, (list, dict, tuple)):
        return False
    try:
        return bool(pd.isna(value))
    except (TypeError, ValueError):
        return False
