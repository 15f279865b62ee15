"""Backtracking homomorphism oracle for small partially oriented patterns."""
from __future__ import annotations

from fractions import Fraction
import logging
from typing import Callable

from .config import ToolkitConfig, load_config
from .errors import PatternTooLargeError
from .graph import PartiallyOrientedGraph, underlying

logger = logging.getLogger(__name__)

# How a pattern vertex is tied to an earlier one: image must lie in the
# out-neighbourhood ("out"), in-neighbourhood ("in") or neighbourhood ("any")
# of the earlier vertex's image.
_Constraint = tuple[int, str]


def _search_order(pattern: PartiallyOrientedGraph) -> list[int]:
    remaining = set(range(pattern.n))
    order: list[int] = []
    while remaining:
        placed = set(order)
        # most already-placed neighbours first, then highest degree, then lowest label
        best = min(
            remaining,
            key=lambda v: (-len(pattern.neighbours(v) & placed), -pattern.degree(v), v),
        )
        order.append(best)
        remaining.remove(best)
    return order


def _plan(pattern: PartiallyOrientedGraph, order: list[int]) -> list[list[_Constraint]]:
    position = {v: i for i, v in enumerate(order)}
    plan: list[list[_Constraint]] = [[] for _ in order]
    for edge in pattern.edges:
        first, second = sorted((edge.u, edge.v), key=position.__getitem__)
        arc = edge.arc()
        if arc is None:
            kind = "any"
        elif arc == (first, second):
            kind = "out"
        else:
            kind = "in"
        plan[position[second]].append((position[first], kind))
    return plan


def estimate_states(pattern: PartiallyOrientedGraph, target: PartiallyOrientedGraph) -> int:
    """Upper estimate of partial maps visited; the last vertex is counted, not enumerated."""
    order = _search_order(pattern)
    plan = _plan(pattern, order)
    states = 1
    for constraints in plan[:-1]:
        states *= target.max_degree if constraints else target.n
    return states


def hom_count(
    pattern: PartiallyOrientedGraph,
    target: PartiallyOrientedGraph,
    *,
    config: ToolkitConfig | None = None,
    budget: int | None = None,
) -> int:
    """Number of maps V(H) -> V(D) sending arcs onto same-direction arcs and edges onto edges of D̄.

    Arcs of the pattern must land on genuine arcs of the target; unoriented
    edges of the target never host an arc of the pattern.
    """
    config = config or load_config()
    budget = config.oracle_state_budget if budget is None else budget
    k = pattern.n
    if k > config.oracle_max_pattern:
        raise PatternTooLargeError(
            f"pattern has {k} vertices; the oracle handles k <= {config.oracle_max_pattern}, "
            "use the closed forms instead"
        )
    if k == 0:
        return 1
    estimate = estimate_states(pattern, target)
    if estimate > budget:
        raise PatternTooLargeError(
            f"estimated {estimate} search states exceeds the budget of {budget}; "
            "use the closed forms instead"
        )

    order = _search_order(pattern)
    plan = _plan(pattern, order)
    every_vertex = frozenset(range(target.n))
    lookup: dict[str, Callable[[int], frozenset[int]]] = {
        "out": target.out_neighbours,
        "in": target.in_neighbours,
        "any": target.neighbours,
    }

    def candidates(depth: int, images: list[int]) -> frozenset[int]:
        constraints = plan[depth]
        if not constraints:
            return every_vertex
        earlier, kind = constraints[0]
        allowed = lookup[kind](images[earlier])
        for earlier, kind in constraints[1:]:
            allowed = allowed & lookup[kind](images[earlier])
        return allowed

    def extend(depth: int, images: list[int]) -> int:
        options = candidates(depth, images)
        if depth == k - 1:
            return len(options)
        total = 0
        for image in options:
            images.append(image)
            total += extend(depth + 1, images)
            images.pop()
        return total

    count = extend(0, [])
    logger.debug("hom_count k=%s n=%s estimate=%s -> %s", k, target.n, estimate, count)
    return count


def hom_deviation(
    pattern: PartiallyOrientedGraph,
    target: PartiallyOrientedGraph,
    *,
    config: ToolkitConfig | None = None,
    budget: int | None = None,
    underlying_count: int | None = None,
) -> Fraction:
    """hom(H, D) - 2^{-ē(H)} hom(H̄, D), exactly."""
    if pattern.is_unoriented:
        return Fraction(0)
    count = hom_count(pattern, target, config=config, budget=budget)
    if underlying_count is None:
        underlying_count = hom_count(underlying(pattern), target, config=config, budget=budget)
    return Fraction(count) - Fraction(underlying_count, 2 ** pattern.e_oriented)
