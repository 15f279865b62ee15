from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import logging
import math
from typing import Callable, Iterable, List, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

MASK64 = (1 << 64) - 1

# Largest magnitude for which float64 products and sums of integers stay exact.
_EXACT_FLOAT_BOUND = 1 << 53


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a decimal such as "0.25" into an exact Fraction."""
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("empty rational")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def exact_matmul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Integer matrix product through float64 BLAS, exact while partial sums stay below 2**53."""
    inner = left.shape[1]
    bound = int(np.abs(left).max(initial=0)) * int(np.abs(right).max(initial=0)) * inner
    if bound >= _EXACT_FLOAT_BOUND:
        logger.debug("exact_matmul falling back to int64 product (bound=%s)", bound)
        return left.astype(np.int64) @ right.astype(np.int64)
    product = left.astype(np.float64) @ right.astype(np.float64)
    return np.rint(product).astype(np.int64)


def to_gray_code(index: int) -> int:
    return (index >> 1) ^ index


def mix64(value: int) -> int:
    """SplitMix64 finalizer; spreads a counter over 64 bits."""
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def restart_seed(seed: int, restart: int) -> int:
    return (seed ^ mix64(restart)) & MASK64


def check_seed(seed: int) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def philox_raw(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """``count`` raw 64-bit words from Philox4x64 keyed by (seed, stream), counter from zero."""
    check_seed(seed)
    if count <= 0:
        return np.zeros(0, dtype=np.uint64)
    bit_generator = np.random.Philox(key=seed + (stream << 64))
    return np.asarray(bit_generator.random_raw(size=count), dtype=np.uint64)


def philox_bits(seed: int, count: int, stream: int = 0) -> np.ndarray:
    return (philox_raw(seed, count, stream) >> np.uint64(63)).astype(bool)


def float_leq(left: float, right: float, rel_tol: float) -> bool:
    return left <= right or math.isclose(left, right, rel_tol=rel_tol, abs_tol=1e-12)


def map_in_workers(fn: Callable[[T], R], items: Iterable[T], workers: int) -> List[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
