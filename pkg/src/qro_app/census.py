"""Closed-form four-cycle census and the sign census of quadruples.

Every sum runs over all ordered vertex pairs (x, x'), diagonal included, so the
counts are homomorphic copies rather than embedded subgraphs.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Sequence

import numpy as np

from .config import ToolkitConfig
from .errors import CountOverflowError
from .graph import JointDegreeTable, PartiallyOrientedGraph, joint_degree_table
from .utils import exact_matmul

logger = logging.getLogger(__name__)

# n**4 stays below 2**63 for every n up to this bound.
MAX_SAFE_VERTICES = 50_000


@dataclass(frozen=True)
class FourCycleCensus:
    hom_i: int
    hom_ii: int
    hom_iii: int
    hom_iv: int
    hom_c4: int
    # Type III through the squared mixed joint degrees; must equal hom_iii.
    hom_iii_alt: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return self.hom_i, self.hom_ii, self.hom_iii, self.hom_iv, self.hom_c4

    @property
    def decomposition_holds(self) -> bool:
        return self.hom_c4 == self.hom_i + self.hom_ii + self.hom_iii + self.hom_iv


@dataclass(frozen=True)
class SignCensus:
    c_total: int
    c_plus: int
    c_minus: int

    @property
    def signed_total(self) -> int:
        return self.c_plus - self.c_minus


def check_count_range(n: int) -> None:
    if n > MAX_SAFE_VERTICES:
        raise CountOverflowError(
            f"counts up to n^4 overflow 63-bit accumulators for n > {MAX_SAFE_VERTICES} (n={n})"
        )


def _total(values: np.ndarray) -> int:
    return int(np.sum(values, dtype=np.int64))


def four_cycle_census(
    graph: PartiallyOrientedGraph,
    table: JointDegreeTable | None = None,
    *,
    config: ToolkitConfig | None = None,
) -> FourCycleCensus:
    graph.require_oriented("four_cycle_census")
    check_count_range(graph.n)
    if table is None:
        table = joint_degree_table(graph, config=config)
    pp, pm, mp, mm = table.pp, table.pm, table.mp, table.mm
    a, b = table.a, table.b
    census = FourCycleCensus(
        hom_i=2 * _total(pm * mp),
        hom_ii=2 * _total(a * b),
        hom_iii=4 * _total(pp * mm),
        hom_iv=_total(pp * pp) + _total(mm * mm),
        hom_c4=_total((a + b) ** 2),
        hom_iii_alt=2 * (_total(pm * pm) + _total(mp * mp)),
    )
    logger.debug("Four-cycle census n=%s -> %s", graph.n, census.as_tuple())
    return census


# Relation of the side vertex to a cycle endpoint, per edge state.
_TOWARD = {">": "+", "<": "-", "-": "*"}
_AWAY = {">": "-", "<": "+", "-": "*"}


def cycle_hom_count(states: Sequence[str], table: JointDegreeTable) -> int:
    """hom of one labelled four-cycle 0-1-2-3-0 into an oriented D.

    ``states`` gives edges (0,1), (1,2), (2,3), (3,0) in cyclic order as ">"
    (arc i -> i+1), "<" (arc i+1 -> i) or "-" (unoriented). With x0, x2 fixed,
    vertex 1 and vertex 3 are chosen independently, so the count is the pair sum
    of two joint degree products.
    """
    if len(states) != 4 or any(s not in _TOWARD for s in states):
        raise ValueError(f"expected four edge states from '><-', got {states!r}")
    s01, s12, s23, s30 = states
    # vertex 1: edge (0,1) seen from x0, edge (1,2) seen from x2
    side_one = table.table(_TOWARD[s01], _AWAY[s12])
    # vertex 3: edge (3,0) seen from x0, edge (2,3) seen from x2
    side_three = table.table(_AWAY[s30], _TOWARD[s23])
    return _total(side_one * side_three)


def sign_census(graph: PartiallyOrientedGraph) -> SignCensus:
    """Quadruples (x, x', y, y') with non-zero M_xy M_xy' M_x'y M_x'y', split by sign.

    For fixed x, x' the products M_xy M_x'y are +1 on a(x,x') values of y and -1
    on b(x,x') values, so the pair (y, y') contributes a² + b² positive and 2ab
    negative quadruples.
    """
    graph.require_oriented("sign_census")
    check_count_range(graph.n)
    skew = graph.skew_matrix
    magnitude = np.abs(skew)
    common = exact_matmul(magnitude, magnitude.T)
    signed = exact_matmul(skew, skew.T)
    same = (common + signed) // 2
    opposite = (common - signed) // 2
    return SignCensus(
        c_total=_total(common * common),
        c_plus=_total(same * same) + _total(opposite * opposite),
        c_minus=2 * _total(same * opposite),
    )
