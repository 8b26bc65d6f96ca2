"""
Run configuration and enumeration budgets
"""

import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Optional

from .errors import BudgetExceededError, ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "CYCLICWEIGHTS_"
OUTPUT_FORMATS = ("json", "csv", "markdown")
DEFAULT_CACHE_DIR = Path("~/.cache/cyclicweights").expanduser()
OPT_IN_FLAG = "--allow-expensive"


@dataclass(frozen=True)
class EnumerationLimits:
    """
    Largest m each exhaustive operation accepts, by default and with opt-in.

    Operations with no opt-in ceiling refuse anything above their default.
    """

    dual_default_m: int = 8
    dual_max_m: int = 12
    plain_dual_max_m: int = 7
    oracle_max_m: int = 6
    x_points_default_m: int = 12
    x_points_max_m: int = 16
    x_bruteforce_max_m: int = 5
    singular_max_m: int = 12

    def enforce(self, operation: str, m: int, cost: int, default_m: int,
                max_m: Optional[int] = None, allow_expensive: bool = False) -> None:
        """
        Raise BudgetExceededError unless m fits the budget.

        Args:
            operation: Name used in the refusal message
            m: Requested extension degree
            cost: Estimated number of field evaluations
            default_m: Largest m allowed without opt-in
            max_m: Largest m allowed with opt-in (None: no opt-in)
            allow_expensive: Whether the caller opted in
        """
        if m <= default_m:
            return
        if max_m is not None and m <= max_m:
            if allow_expensive:
                logger.warning("Running %s at m=%d (estimated cost %s) on opt-in",
                               operation, m, f"{cost:,}")
                return
            raise BudgetExceededError(operation, m, cost, default_m, OPT_IN_FLAG)
        raise BudgetExceededError(operation, m, cost, max_m if max_m is not None else default_m,
                                  opt_in_flag=None)


DEFAULT_LIMITS = EnumerationLimits()


@dataclass
class RunConfig:
    """
    Settings for one CLI invocation.

    Attributes:
        m: Extension degree, 3..20
        command: Subcommand name
        modulus_override: Primitive polynomial as an int, or None for the default
        thread_count: Worker processes for enumerations
        cache_dir: Directory for JSON-lines caches
        output_format: json, csv or markdown
        budget_opt_in: Lift default enumeration caps
    """

    m: Optional[int] = None
    command: Optional[str] = None
    modulus_override: Optional[int] = None
    thread_count: int = 1
    cache_dir: Path = DEFAULT_CACHE_DIR
    output_format: str = "json"
    budget_opt_in: bool = False
    limits: EnumerationLimits = field(default_factory=EnumerationLimits)

    def validate(self) -> "RunConfig":
        from .gf2m import MAX_DEGREE, MIN_DEGREE, is_primitive_modulus

        if self.m is not None and not MIN_DEGREE <= self.m <= MAX_DEGREE:
            raise ConfigurationError(f"m must be in {MIN_DEGREE}..{MAX_DEGREE}, got {self.m}")
        if self.modulus_override is not None:
            if self.m is None:
                raise ConfigurationError("--modulus requires --m")
            if not is_primitive_modulus(self.modulus_override, self.m):
                raise ConfigurationError(
                    f"Modulus {self.modulus_override:#x} is not a primitive polynomial of degree {self.m}"
                )
        if self.thread_count < 1:
            raise ConfigurationError(f"thread count must be positive, got {self.thread_count}")
        if self.output_format not in OUTPUT_FORMATS:
            supported = ", ".join(OUTPUT_FORMATS)
            raise ConfigurationError(f"Unsupported format '{self.output_format}'. Supported: {supported}")
        return self

    def with_environment(self, environ: Optional[Mapping[str, str]] = None) -> "RunConfig":
        """Fill unset values from CYCLICWEIGHTS_* variables"""
        env = os.environ if environ is None else environ
        updates = {}
        try:
            if self.m is None and f"{ENV_PREFIX}M" in env:
                updates["m"] = int(env[f"{ENV_PREFIX}M"])
            if self.modulus_override is None and f"{ENV_PREFIX}MODULUS" in env:
                updates["modulus_override"] = parse_modulus(env[f"{ENV_PREFIX}MODULUS"])
            if f"{ENV_PREFIX}THREADS" in env:
                updates["thread_count"] = int(env[f"{ENV_PREFIX}THREADS"])
        except ValueError as exc:
            raise ConfigurationError(f"Invalid environment override: {exc}") from exc
        if f"{ENV_PREFIX}CACHE_DIR" in env:
            updates["cache_dir"] = Path(env[f"{ENV_PREFIX}CACHE_DIR"]).expanduser()
        if f"{ENV_PREFIX}FORMAT" in env:
            updates["output_format"] = env[f"{ENV_PREFIX}FORMAT"].strip().lower()
        if f"{ENV_PREFIX}ALLOW_EXPENSIVE" in env:
            updates["budget_opt_in"] = env[f"{ENV_PREFIX}ALLOW_EXPENSIVE"].strip().lower() in ("1", "true", "yes")
        return replace(self, **updates)


def parse_modulus(text: str) -> int:
    """Parse a modulus given in hex, with or without 0x"""
    try:
        return int(text, 16)
    except ValueError as exc:
        raise ConfigurationError(f"Modulus '{text}' is not a hex bit pattern") from exc
