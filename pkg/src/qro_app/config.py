from __future__ import annotations

from dataclasses import dataclass
import os

from .errors import ConfigError


@dataclass(frozen=True)
class ToolkitConfig:
    workers: int
    exact_discrepancy_limit: int
    exact_bias_limit: int
    dense_table_limit: int
    full_spectrum_limit: int
    oracle_max_pattern: int
    oracle_state_budget: int
    analysis_state_budget: int
    power_tolerance: float
    power_max_iter: int
    float_tolerance: float
    heuristic_restarts: int


DEFAULT_WORKERS = 1
DEFAULT_EXACT_DISC_LIMIT = 24
DEFAULT_EXACT_BIAS_LIMIT = 14
DEFAULT_DENSE_LIMIT = 4096
DEFAULT_FULL_SPECTRUM_LIMIT = 2048
DEFAULT_ORACLE_MAX_K = 5
DEFAULT_ORACLE_BUDGET = 100_000_000
DEFAULT_ANALYSIS_BUDGET = 2_000_000
DEFAULT_POWER_TOL = 1e-9
DEFAULT_POWER_MAX_ITER = 10_000
DEFAULT_FLOAT_TOL = 1e-6
DEFAULT_RESTARTS = 8


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be a number, got {raw!r}") from exc
    if not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def load_config() -> ToolkitConfig:
    return ToolkitConfig(
        workers=_env_int("QRO_WORKERS", DEFAULT_WORKERS, minimum=1),
        exact_discrepancy_limit=_env_int("QRO_EXACT_DISC_LIMIT", DEFAULT_EXACT_DISC_LIMIT),
        exact_bias_limit=_env_int("QRO_EXACT_BIAS_LIMIT", DEFAULT_EXACT_BIAS_LIMIT),
        dense_table_limit=_env_int("QRO_DENSE_LIMIT", DEFAULT_DENSE_LIMIT, minimum=1),
        full_spectrum_limit=_env_int("QRO_FULL_SPECTRUM_LIMIT", DEFAULT_FULL_SPECTRUM_LIMIT),
        oracle_max_pattern=_env_int("QRO_ORACLE_MAX_K", DEFAULT_ORACLE_MAX_K, minimum=1),
        oracle_state_budget=_env_int("QRO_ORACLE_BUDGET", DEFAULT_ORACLE_BUDGET, minimum=1),
        analysis_state_budget=_env_int("QRO_ANALYSIS_BUDGET", DEFAULT_ANALYSIS_BUDGET, minimum=1),
        power_tolerance=_env_float("QRO_POWER_TOL", DEFAULT_POWER_TOL),
        power_max_iter=_env_int("QRO_POWER_MAX_ITER", DEFAULT_POWER_MAX_ITER, minimum=1),
        float_tolerance=_env_float("QRO_FLOAT_TOL", DEFAULT_FLOAT_TOL),
        heuristic_restarts=_env_int("QRO_RESTARTS", DEFAULT_RESTARTS, minimum=1),
    )
