"""
Command-line interface.

Exit codes: 0 success, 2 a check failed, 3 budget refusal, 4 bad configuration,
5 an internal consistency check failed.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from . import __version__
from .binpoly import CodeFamily
from .classify import (
    compare_predicted_vs_bruteforce,
    lemma_j_witness,
    mn_simple_exists,
    predict_weight_set,
    reproduce_tables,
    split_occurs_even_m,
    split_occurs_odd_m,
)
from .codes import (
    REPORTED_MIN_DISTANCES,
    WeightCache,
    dual_weight_distribution,
    min_distance_C,
    min_distance_family,
)
from .config import RunConfig, parse_modulus
from .curves import DEGENERATE_POINTS, singular_vs_degenerate, weil_ap_check, x_points
from .errors import BudgetExceededError, ConfigurationError, InternalConsistencyError
from .gf2m import get_field
from .numtheory import intervals
from .reporters import render
from .validator import ClaimValidator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_BUDGET = 3
EXIT_CONFIG = 4
EXIT_INTERNAL = 5

Result = Tuple[Dict[str, object], Optional[pd.DataFrame], ClaimValidator]


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting options given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--m", type=int, help="Extension degree (3..20)")
    common.add_argument("--modulus", help="Primitive polynomial as hex, e.g. 0x43")
    common.add_argument("--threads", type=int, help="Worker processes")
    common.add_argument("--cache-dir", help="Cache directory")
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "markdown"),
                        help="Output format (default json)")
    common.add_argument("--allow-expensive", action="store_true",
                        help="Lift default enumeration caps")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="cyclicweights",
        description="Weights and minimum distance of the binary cyclic codes B, M and C = B cap M",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("tables", parents=[common], help="Reproduce the weight tables for q = 2^6..2^12")
    sub.add_parser("mindist", parents=[common], help="Minimum distance of C")

    dual = sub.add_parser("dual-weights", parents=[common], help="Weights of the dual of C")
    mode = dual.add_mutually_exclusive_group()
    mode.add_argument("--brute", action="store_const", dest="mode", const="brute")
    mode.add_argument("--predict", action="store_const", dest="mode", const="predict")
    mode.add_argument("--compare", action="store_const", dest="mode", const="compare")

    mn = sub.add_parser("mn-check", parents=[common], help="Simple/split Jacobian witnesses for a trace")
    mn.add_argument("--a1", type=int, required=True, help="Odd Frobenius trace")

    x = sub.add_parser("x", parents=[common], help="Points of the curve X")
    x.add_argument("action", choices=("points", "singular", "weil"))

    cache = sub.add_parser("cache", parents=[common], help="Manage the weight cache")
    cache.add_argument("action", choices=("clear", "stats"))

    sub.add_parser("families", parents=[common], help="Minimum distances of Hamming, B, M and C")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """CLI flags override CYCLICWEIGHTS_* variables, which override defaults"""
    config = RunConfig(command=args.command).with_environment()
    flags = vars(args)
    if "m" in flags:
        config.m = flags["m"]
    if "modulus" in flags:
        config.modulus_override = parse_modulus(flags["modulus"])
    if "threads" in flags:
        config.thread_count = flags["threads"]
    if "cache_dir" in flags:
        config.cache_dir = Path(flags["cache_dir"]).expanduser()
    if "output_format" in flags:
        config.output_format = flags["output_format"]
    if flags.get("allow_expensive"):
        config.budget_opt_in = True
    return config.validate()


def _require_m(config: RunConfig) -> int:
    if config.m is None:
        raise ConfigurationError(f"'{config.command}' needs --m (or CYCLICWEIGHTS_M)")
    return config.m


def _enumeration_kwargs(config: RunConfig) -> Dict[str, object]:
    return {"workers": config.thread_count, "allow_expensive": config.budget_opt_in,
            "limits": config.limits, "cache": WeightCache(config.cache_dir)}


# --- commands ---------------------------------------------------------------

def cmd_tables(config: RunConfig) -> Result:
    validator = ClaimValidator("weight tables")
    rows = reproduce_tables()
    for row in rows:
        validator.expect_table_row(row)
    frame = pd.DataFrame([{
        "q": f"2^{row.m}",
        "I": f"[{row.I[0]},{row.I[1]}]",
        "J": f"[{row.J[0]},{row.J[1]}]",
        "weights in I\\J": ",".join(str(w) for w in row.extras) or "none",
    } for row in rows])
    return {"rows": [row.to_dict() for row in rows]}, frame, validator


def cmd_mindist(config: RunConfig) -> Result:
    m = _require_m(config)
    spec = get_field(m, config.modulus_override)
    kwargs = _enumeration_kwargs(config)
    result = min_distance_C(spec, workers=kwargs["workers"], allow_expensive=kwargs["allow_expensive"],
                            limits=config.limits, cache=kwargs["cache"])
    validator = ClaimValidator("minimum distance", m)
    if m in REPORTED_MIN_DISTANCES:
        validator.expect_min_distance(result, REPORTED_MIN_DISTANCES[m])
    return result.to_dict(), pd.DataFrame([result.to_dict()]), validator


def cmd_dual_weights(config: RunConfig, mode: Optional[str]) -> Result:
    m = _require_m(config)
    mode = mode or "predict"
    validator = ClaimValidator(f"dual weights ({mode})", m)
    if mode == "predict":
        report = predict_weight_set(m)
        return report.to_dict(), report.to_dataframe(), validator
    spec = get_field(m, config.modulus_override)
    if mode == "compare":
        report = compare_predicted_vs_bruteforce(m, spec, **_enumeration_kwargs(config))
        validator.expect_empty_mismatch(report)
        return report.to_dict(), report.to_dataframe(), validator

    dist = dual_weight_distribution(spec, **_enumeration_kwargs(config))
    weights = sorted(dist.weights())
    validator.expect_even_weights(weights, context=f"m={m}")
    if m >= 5:
        bounds = intervals(m)
        validator.expect_weights_in_interval(weights, *bounds.I, context=f"m={m}")
    payload = {"m": m, "modulus_hex": spec.modulus_hex, "weights": weights, "distribution": dist.to_dict()}
    frame = pd.DataFrame({"m": m, "weight": list(dist.counts), "count": list(dist.counts.values())})
    return payload, frame, validator


def cmd_mn_check(config: RunConfig, a1: int) -> Result:
    m = _require_m(config)
    if a1 % 2 == 0:
        raise ConfigurationError(f"--a1 must be odd, got {a1}")
    q = 1 << m
    mn = mn_simple_exists(m, a1)
    split = split_occurs_even_m(m, a1) if m % 2 == 0 else split_occurs_odd_m(m, a1)
    payload = {
        "m": m,
        "a1": a1,
        "weight": (q - 1 - a1) // 2,
        "simple": mn.to_dict() if mn else None,
        "split": split.to_dict() if split else None,
    }
    if m % 2 == 0:
        explicit = lemma_j_witness(m, a1)
        payload["interval_lemma"] = explicit.to_dict() if explicit else None
    frame = pd.DataFrame([{"m": m, "a1": a1, "weight": payload["weight"],
                           "a2": mn.a2 if mn else None, "delta": mn.delta_Z if mn else None,
                           "witness_prime": split.prime if split else None}])
    return payload, frame, ClaimValidator("mn-check", m)


def cmd_x(config: RunConfig, action: str) -> Result:
    m = _require_m(config)
    spec = get_field(m, config.modulus_override)
    validator = ClaimValidator(f"x {action}", m)
    if action == "singular":
        payload = singular_vs_degenerate(spec, config.limits)
        payload.update(modulus_hex=spec.modulus_hex, modulus_hash=spec.modulus_hash)
        payload["singular"] = [[f"{v:#x}" for v in p] for p in payload["singular"]]
        payload["degenerate"] = [[f"{v:#x}" for v in p] for p in payload["degenerate"]]
        count = len(payload["singular"])
        validator.expect_custom("singular_count", lambda: (count <= 4, f"{count} singular point(s)", {}))
        validator.expect_custom("singular_are_degenerate", lambda: (
            payload["equal"], f"singular set equals the degenerate points: {payload['equal']}", {}),
            critical=False)
        return payload, pd.DataFrame(payload["singular"], columns=["x", "y", "z"]), validator

    points = x_points(spec, allow_expensive=config.budget_opt_in, workers=config.thread_count,
                      limits=config.limits)
    missing = [p for p in DEGENERATE_POINTS if not points.contains(p)]
    validator.expect_custom("degenerate_points", lambda: (
        not missing, "four degenerate points present" if not missing else f"missing {missing}", {}))
    if action == "weil":
        check = weil_ap_check(spec, points=points)
        validator.expect_weil_bound(check)
        payload = {**check.to_dict(), "modulus_hex": spec.modulus_hex, "modulus_hash": spec.modulus_hash}
        return payload, pd.DataFrame([check.to_dict()]), validator
    payload = points.to_dict()
    frame = pd.DataFrame(payload["points"], columns=["x", "y", "z"])
    return payload, frame, validator


def cmd_cache(config: RunConfig, action: str) -> Result:
    cache = WeightCache(config.cache_dir)
    if action == "clear":
        payload = {"cache_dir": str(cache.cache_dir), "removed": cache.clear()}
    else:
        payload = cache.stats()
    return payload, None, ClaimValidator("cache")


def cmd_families(config: RunConfig) -> Result:
    m = _require_m(config)
    spec = get_field(m, config.modulus_override)
    kwargs = _enumeration_kwargs(config)
    distances = {family.value: min_distance_family(family, spec, **kwargs) for family in CodeFamily}
    frame = pd.DataFrame([{"m": m, "family": k, "d": v} for k, v in distances.items()])
    return {"m": m, "families": distances}, frame, ClaimValidator("families", m)


def dispatch(args: argparse.Namespace, config: RunConfig) -> Result:
    command = args.command
    if command == "tables":
        return cmd_tables(config)
    if command == "mindist":
        return cmd_mindist(config)
    if command == "dual-weights":
        return cmd_dual_weights(config, args.mode)
    if command == "mn-check":
        return cmd_mn_check(config, args.a1)
    if command == "x":
        return cmd_x(config, args.action)
    if command == "cache":
        return cmd_cache(config, args.action)
    if command == "families":
        return cmd_families(config)
    raise ConfigurationError(f"Unsupported command '{command}'")  # pragma: no cover


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help and --version exit 0; argparse usage errors are configuration errors
        return EXIT_CONFIG if exc.code else EXIT_OK
    _configure_logging(args)
    try:
        config = config_from_args(args)
        payload, frame, validator = dispatch(args, config)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalConsistencyError as exc:
        logger.error("internal consistency check failed: %s", exc)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        # ConfigurationError and out-of-domain arguments such as m < 5 for intervals
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    checks: List[Dict[str, object]] = validator.get_results()["results"]
    transpose = args.command == "tables"
    sys.stdout.write(render(payload, frame, config.output_format, checks=checks,
                            title="Weights of the dual code" if transpose else None,
                            transpose=transpose))
    if not validator.is_valid():
        for failure in validator.get_failed_validations():
            print(f"mismatch: {failure['message']}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
