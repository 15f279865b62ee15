"""Directed discrepancy max e⃗(A,B) - e⃗(B,A) and bias_ν, exact and heuristic.

For a fixed B the objective Σ_{x∈A} f_B(x), f_B(x) = Σ_{y∈B} M_xy, is
separable in A, so the best A is {x : f_B(x) > 0} and only the 2ⁿ choices of B
need enumerating.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import logging

import numpy as np

from .config import ToolkitConfig, load_config
from .errors import TooLargeForExactError
from .graph import PartiallyOrientedGraph
from .types import VertexSubsetPair
from .utils import exact_matmul, map_in_workers, philox_bits, philox_raw, restart_seed, to_gray_code

logger = logging.getLogger(__name__)

# Low vertices whose subsets are enumerated as one vectorized block.
LOW_BLOCK_BITS = 10
# Pair-profile blocks hold at most this many (A, B) pairs.
PROFILE_BLOCK_PAIRS = 1 << 20


@dataclass(frozen=True)
class DiscrepancyResult:
    value: int
    witness: VertexSubsetPair
    exact: bool

    @property
    def n(self) -> int:
        return self.witness.n

    @property
    def gamma(self) -> Fraction:
        return Fraction(self.value, self.n ** 2) if self.n else Fraction(0)


@dataclass(frozen=True)
class NuLevel:
    """The bias level ν, either the rational ``value`` or, with ``root``, 1 - √value."""

    value: Fraction
    root: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise ValueError(f"bias level parameter must lie in [0, 1], got {self.value}")

    @classmethod
    def one_minus_sqrt(cls, value: Fraction) -> "NuLevel":
        return cls(Fraction(value), root=True)

    def admits(self, forward: int, backward: int) -> bool:
        """Whether a pair with these arc counts is ν-biased: e⃗(B,A) <= ν e⃗(A,B)."""
        num, den = self.value.numerator, self.value.denominator
        if not self.root:
            return backward * den <= num * forward
        slack = forward - backward
        return slack >= 0 and slack * slack * den >= num * forward * forward

    def __str__(self) -> str:
        return f"1-sqrt({self.value})" if self.root else str(self.value)


@dataclass(frozen=True)
class BiasResult:
    nu: NuLevel
    value: int
    witness: VertexSubsetPair
    exact: bool


@dataclass(frozen=True)
class PairProfile:
    """Every attainable (e⃗(A,B), e⃗(B,A)) with its canonical witness.

    Witnesses are stored as ``B_mask << n | A_mask``, the smallest such index
    attaining the pair of counts.
    """

    n: int
    witnesses: dict[tuple[int, int], int] = field(compare=False)

    def witness_pair(self, index: int) -> VertexSubsetPair:
        return VertexSubsetPair.from_masks(self.n, index & ((1 << self.n) - 1), index >> self.n)


def _mask_bits(mask: int, width: int) -> np.ndarray:
    return np.array([(mask >> j) & 1 for j in range(width)], dtype=np.int64)


def _all_subsets(width: int) -> np.ndarray:
    masks = np.arange(1 << width, dtype=np.int64)
    return (masks[:, None] >> np.arange(width, dtype=np.int64)) & 1


def _witness_for_b(skew: np.ndarray, b: np.ndarray) -> tuple[VertexSubsetPair, int]:
    f = skew @ b
    a = f > 0
    return VertexSubsetPair.from_arrays(a, b.astype(bool)), int(f[a].sum())


def _segments(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(start, min(start + step, total)) for start in range(0, total, step)]


def max_discrepancy_exact(
    graph: PartiallyOrientedGraph,
    *,
    limit: int | None = None,
    workers: int | None = None,
    config: ToolkitConfig | None = None,
) -> DiscrepancyResult:
    """Exact maximum over all (A, B).

    The high vertices' subsets are walked in Gray-code order, updating
    f_high by one column of M per step; for each of them all subsets of the low
    vertices are scored at once. Segments of the Gray walk can run on separate
    workers; ties resolve to the smallest B mask.
    """
    graph.require_oriented("max_discrepancy_exact")
    config = config or load_config()
    limit = config.exact_discrepancy_limit if limit is None else limit
    workers = config.workers if workers is None else workers
    n = graph.n
    if n > limit:
        raise TooLargeForExactError(
            f"exact discrepancy enumerates 2^n subsets and is capped at n <= {limit} (n={n}); "
            "use the heuristic"
        )

    skew = graph.skew_matrix.astype(np.int64)
    low = min(n, LOW_BLOCK_BITS)
    high = n - low
    low_scores = exact_matmul(_all_subsets(low), skew[:, :low].T)
    high_columns = skew[:, low:]

    def scan(segment: tuple[int, int]) -> tuple[int, int]:
        start, stop = segment
        gray = to_gray_code(start)
        f_high = high_columns @ _mask_bits(gray, high)
        best_value, best_mask = -1, 0
        for index in range(start, stop):
            if index > start:
                following = to_gray_code(index)
                bit = (following ^ gray).bit_length() - 1
                if following >> bit & 1:
                    f_high += high_columns[:, bit]
                else:
                    f_high -= high_columns[:, bit]
                gray = following
            values = np.clip(low_scores + f_high, 0, None).sum(axis=1)
            position = int(np.argmax(values))
            value = int(values[position])
            mask = (gray << low) | position
            if value > best_value or (value == best_value and mask < best_mask):
                best_value, best_mask = value, mask
        return best_value, best_mask

    segments = _segments(1 << high, workers)
    outcomes = map_in_workers(scan, segments, workers)
    best_value, best_mask = max(outcomes, key=lambda item: (item[0], -item[1]))
    witness, value = _witness_for_b(skew, _mask_bits(best_mask, n))
    if value != best_value:
        raise AssertionError(f"witness recomputes to {value}, search reported {best_value}")
    logger.debug(
        "Exact discrepancy n=%s blocks=%s segments=%s -> %s", n, 1 << high, len(segments), value
    )
    return DiscrepancyResult(value=value, witness=witness, exact=True)


def _climb(matrix: np.ndarray, start: np.ndarray) -> np.ndarray:
    b = start.astype(np.int64)
    if b.size == 0:
        return b
    value = int(np.clip(matrix @ b, 0, None).sum())
    while True:
        a = (matrix @ b > 0).astype(np.int64)
        alternate = (a @ matrix > 0).astype(np.int64)
        alternate_value = int(np.clip(matrix @ alternate, 0, None).sum())
        if alternate_value > value:
            b, value = alternate, alternate_value
            continue
        f = matrix @ b
        signs = np.where(b > 0, -1, 1)
        flipped = np.clip(f[:, None] + matrix * signs[None, :], 0, None).sum(axis=0)
        y = int(np.argmax(flipped))
        if int(flipped[y]) > value:
            b[y] = 1 - b[y]
            value = int(flipped[y])
            continue
        return b


def max_discrepancy_heuristic(
    graph: PartiallyOrientedGraph,
    restarts: int | None = None,
    seed: int = 0,
    *,
    workers: int | None = None,
    config: ToolkitConfig | None = None,
) -> DiscrepancyResult:
    """Lower bound by alternating maximization from several starts.

    Restart i starts from a random B drawn with seed ⊕ mix(i); one further
    start from the net sinks is always added. Each start is climbed on M (improving B) and on Mᵀ
    (improving A), which makes the result invariant under reversing every arc.
    """
    graph.require_oriented("max_discrepancy_heuristic")
    config = config or load_config()
    restarts = config.heuristic_restarts if restarts is None else restarts
    workers = config.workers if workers is None else workers
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = graph.n
    skew = graph.skew_matrix.astype(np.int64)

    def run(restart: int) -> DiscrepancyResult:
        # restart -1 is the net-sink start
        random_start = philox_bits(restart_seed(seed, restart), n) if restart >= 0 else None
        best: DiscrepancyResult | None = None
        for transposed in (False, True):
            matrix = skew.T if transposed else skew
            start = random_start if random_start is not None else matrix.sum(axis=0) > 0
            b = _climb(matrix, start)
            a = matrix @ b > 0
            pair = (b.astype(bool), a) if transposed else (a, b.astype(bool))
            witness = VertexSubsetPair.from_arrays(*pair)
            value = int(np.asarray(witness.a, dtype=np.int64) @ skew @ np.asarray(witness.b, dtype=np.int64))
            candidate = DiscrepancyResult(value=value, witness=witness, exact=False)
            best = _better(best, candidate)
        return best

    results = map_in_workers(run, range(-1, restarts), workers)
    best = None
    for result in results:
        best = _better(best, result)
    logger.debug("Heuristic discrepancy n=%s restarts=%s seed=%s -> %s", n, restarts, seed, best.value)
    return best


def _better(current, candidate):
    if current is None:
        return candidate
    if candidate.value != current.value:
        return candidate if candidate.value > current.value else current
    return candidate if candidate.witness.sort_key() < current.witness.sort_key() else current


def pair_profile(
    graph: PartiallyOrientedGraph,
    *,
    limit: int | None = None,
    config: ToolkitConfig | None = None,
) -> PairProfile:
    """Enumerate all 4ⁿ pairs (A, B) in blocks of B, recording each attainable count pair."""
    graph.require_oriented("pair_profile")
    config = config or load_config()
    limit = config.exact_bias_limit if limit is None else limit
    n = graph.n
    if n > limit:
        raise TooLargeForExactError(
            f"exact bias enumerates 4^n pairs and is capped at n <= {limit} (n={n}); "
            "use the heuristic"
        )

    arcs = graph.arc_matrix.astype(np.int64)
    subsets = _all_subsets(n)
    # row B: arcs from each x into B, and from B into each x
    out_of = exact_matmul(subsets, arcs.T)
    into = exact_matmul(subsets, arcs)
    radix = graph.e_oriented + 1
    block = max(1, PROFILE_BLOCK_PAIRS >> n)
    total = 1 << n

    witnesses: dict[tuple[int, int], int] = {}
    for start in range(0, total, block):
        stop = min(start + block, total)
        forward = exact_matmul(out_of[start:stop], subsets.T)
        backward = exact_matmul(into[start:stop], subsets.T)
        codes, first = np.unique((forward * radix + backward).ravel(), return_index=True)
        for code, offset in zip(codes.tolist(), first.tolist()):
            key = divmod(code, radix)
            if key not in witnesses:
                witnesses[key] = (start << n) + offset
    logger.debug("Pair profile n=%s distinct count pairs=%s", n, len(witnesses))
    return PairProfile(n=n, witnesses=witnesses)


def bias_from_profile(profile: PairProfile, nu: NuLevel) -> BiasResult:
    best_key, best_index = (0, 0), 0
    for key, index in profile.witnesses.items():
        if not nu.admits(*key):
            continue
        if key[0] > best_key[0] or (key[0] == best_key[0] and index < best_index):
            best_key, best_index = key, index
    return BiasResult(nu=nu, value=best_key[0], witness=profile.witness_pair(best_index), exact=True)


def pair_bias_level(n: int, forward: int, backward: int) -> Fraction:
    """Smallest ε at which this single pair stops violating bias_{1-ε}(D) <= ε n²."""
    if forward <= 0 or n == 0:
        return Fraction(0)
    return max(Fraction(0), min(Fraction(forward - backward, forward), Fraction(forward, n * n)))


def measured_bias_level(profile: PairProfile) -> Fraction:
    """inf{ε : bias_{1-ε}(D) <= ε n²} over the exact pair profile."""
    return max(
        (pair_bias_level(profile.n, f, r) for f, r in profile.witnesses),
        default=Fraction(0),
    )


def _as_level(nu: NuLevel | Fraction | int | str) -> NuLevel:
    if isinstance(nu, NuLevel):
        return nu
    return NuLevel(Fraction(nu))


def _bias_heuristic(
    graph: PartiallyOrientedGraph,
    nu: NuLevel,
    restarts: int,
    seed: int,
    workers: int,
) -> BiasResult:
    n = graph.n
    arcs = graph.arc_matrix.astype(np.int64)
    arc_list = graph.arcs()
    empty = VertexSubsetPair.from_masks(n, 0, 0)
    if not arc_list:
        return BiasResult(nu=nu, value=0, witness=empty, exact=False)

    def climb(restart: int) -> BiasResult:
        draw = int(philox_raw(restart_seed(seed, restart), 1)[0])
        tail, head = arc_list[draw % len(arc_list)]
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[tail], b[head] = 1, 1
        forward, backward = 1, 0
        while True:
            sign_a = np.where(a > 0, -1, 1)
            sign_b = np.where(b > 0, -1, 1)
            gain_f = np.concatenate([sign_a * (arcs @ b), sign_b * (a @ arcs)])
            gain_r = np.concatenate([sign_a * (arcs.T @ b), sign_b * (arcs @ a)])
            move = None
            for candidate in np.argsort(-gain_f, kind="stable").tolist():
                if gain_f[candidate] <= 0:
                    break
                if nu.admits(forward + int(gain_f[candidate]), backward + int(gain_r[candidate])):
                    move = candidate
                    break
            if move is None:
                # no improving move: grow A ∩ B where neither count changes
                joins = np.concatenate([(a == 0) & (b == 1), (b == 0) & (a == 1)])
                neutral = np.flatnonzero(joins & (gain_f == 0) & (gain_r == 0))
                if neutral.size:
                    move = int(neutral[0])
            if move is None:
                witness = VertexSubsetPair.from_arrays(a, b)
                return BiasResult(nu=nu, value=forward, witness=witness, exact=False)
            if move < n:
                a[move] = 1 - a[move]
            else:
                b[move - n] = 1 - b[move - n]
            forward += int(gain_f[move])
            backward += int(gain_r[move])

    best = None
    for result in map_in_workers(climb, range(restarts), workers):
        best = _better(best, result)
    return best


def bias(
    graph: PartiallyOrientedGraph,
    nu: NuLevel | Fraction | int | str,
    mode: str = "exact",
    seed: int = 0,
    *,
    restarts: int | None = None,
    profile: PairProfile | None = None,
    workers: int | None = None,
    config: ToolkitConfig | None = None,
) -> BiasResult:
    """bias_ν(D): the largest e⃗(A,B) over ν-biased pairs.

    The heuristic flips single vertices in or out of A or B, taking the move
    that raises e⃗(A,B) most while keeping the pair ν-biased, from random
    single-arc starts; it returns a lower bound with a valid witness.
    """
    graph.require_oriented("bias")
    config = config or load_config()
    level = _as_level(nu)
    if mode == "exact":
        if profile is None:
            profile = pair_profile(graph, config=config)
        return bias_from_profile(profile, level)
    if mode == "heuristic":
        restarts = config.heuristic_restarts if restarts is None else restarts
        if restarts < 1:
            raise ValueError("restarts must be >= 1")
        workers = config.workers if workers is None else workers
        return _bias_heuristic(graph, level, restarts, seed, workers)
    raise ValueError(f"unknown bias mode {mode!r}; expected 'exact' or 'heuristic'")
