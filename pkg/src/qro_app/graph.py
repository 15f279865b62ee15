from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import logging
from typing import Iterable, Sequence

import numpy as np

from .config import ToolkitConfig, load_config
from .errors import (
    DuplicateEdgeError,
    NotFullyOrientedError,
    SelfLoopError,
    TooLargeForExactError,
    VertexOutOfRangeError,
)
from .types import Edge, EdgeState, VertexSubsetPair

logger = logging.getLogger(__name__)


def canonical_edge(x: int, y: int, oriented: bool) -> Edge:
    """Edge record for the arc x->y (``oriented``) or the unoriented edge {x, y}."""
    if not oriented:
        return Edge(min(x, y), max(x, y), EdgeState.UNORIENTED)
    if x < y:
        return Edge(x, y, EdgeState.FORWARD)
    return Edge(y, x, EdgeState.REVERSE)


@dataclass(frozen=True)
class PartiallyOrientedGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        for edge in self.edges:
            if edge.u == edge.v:
                raise SelfLoopError(f"self-loop at vertex {edge.u}")
            if edge.u > edge.v:
                raise ValueError(f"edge record ({edge.u}, {edge.v}) is not canonical (u < v)")
            if edge.u < 0 or edge.v >= self.n:
                raise VertexOutOfRangeError(
                    f"edge ({edge.u}, {edge.v}) outside vertex range 0..{self.n - 1}"
                )
            if (edge.u, edge.v) in seen:
                raise DuplicateEdgeError(f"duplicate edge {{{edge.u}, {edge.v}}}")
            seen.add((edge.u, edge.v))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def from_records(cls, n: int, records: Iterable[Edge]) -> "PartiallyOrientedGraph":
        return cls(n=n, edges=tuple(records))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "PartiallyOrientedGraph":
        return cls(n=n, edges=tuple(canonical_edge(x, y, True) for x, y in arcs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "PartiallyOrientedGraph":
        return cls(n=n, edges=tuple(canonical_edge(x, y, False) for x, y in edges))

    @classmethod
    def empty(cls, n: int) -> "PartiallyOrientedGraph":
        return cls(n=n, edges=())

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def e_oriented(self) -> int:
        """ē(D): number of arcs."""
        return sum(1 for edge in self.edges if edge.is_arc)

    @property
    def is_oriented(self) -> bool:
        return self.e_oriented == self.e

    @property
    def is_unoriented(self) -> bool:
        return self.e_oriented == 0

    def arcs(self) -> list[tuple[int, int]]:
        return [arc for arc in (edge.arc() for edge in self.edges) if arc is not None]

    def require_oriented(self, operation: str) -> None:
        if not self.is_oriented:
            raise NotFullyOrientedError(
                f"{operation} needs a fully oriented graph; "
                f"{self.e - self.e_oriented} of {self.e} edges are unoriented"
            )

    @cached_property
    def _neighbourhoods(self) -> tuple[tuple[frozenset[int], ...], ...]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        inn: list[set[int]] = [set() for _ in range(self.n)]
        both: list[set[int]] = [set() for _ in range(self.n)]
        for edge in self.edges:
            both[edge.u].add(edge.v)
            both[edge.v].add(edge.u)
            arc = edge.arc()
            if arc is not None:
                tail, head = arc
                out[tail].add(head)
                inn[head].add(tail)
        return (
            tuple(frozenset(s) for s in out),
            tuple(frozenset(s) for s in inn),
            tuple(frozenset(s) for s in both),
        )

    def out_neighbours(self, x: int) -> frozenset[int]:
        return self._neighbourhoods[0][x]

    def in_neighbours(self, x: int) -> frozenset[int]:
        return self._neighbourhoods[1][x]

    def neighbours(self, x: int) -> frozenset[int]:
        return self._neighbourhoods[2][x]

    def degree(self, x: int) -> int:
        return len(self.neighbours(x))

    def out_degree(self, x: int) -> int:
        return len(self.out_neighbours(x))

    def in_degree(self, x: int) -> int:
        return len(self.in_neighbours(x))

    @cached_property
    def max_degree(self) -> int:
        return max((self.degree(x) for x in range(self.n)), default=0)

    @cached_property
    def arc_matrix(self) -> np.ndarray:
        """P with P[x, y] = 1 iff x->y is an arc."""
        matrix = np.zeros((self.n, self.n), dtype=np.int8)
        for tail, head in self.arcs():
            matrix[tail, head] = 1
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def skew_matrix(self) -> np.ndarray:
        """M = P - Pᵀ; entries in {-1, 0, 1}."""
        arcs = self.arc_matrix
        matrix = arcs - arcs.T
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def underlying_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=np.int8)
        for edge in self.edges:
            matrix[edge.u, edge.v] = 1
            matrix[edge.v, edge.u] = 1
        matrix.setflags(write=False)
        return matrix

    def reverse(self) -> "PartiallyOrientedGraph":
        flipped = {
            EdgeState.FORWARD: EdgeState.REVERSE,
            EdgeState.REVERSE: EdgeState.FORWARD,
            EdgeState.UNORIENTED: EdgeState.UNORIENTED,
        }
        return PartiallyOrientedGraph(
            n=self.n, edges=tuple(Edge(e.u, e.v, flipped[e.state]) for e in self.edges)
        )

    def relabel(self, permutation: Sequence[int]) -> "PartiallyOrientedGraph":
        if sorted(permutation) != list(range(self.n)):
            raise ValueError("relabelling must be a permutation of 0..n-1")
        records = []
        for edge in self.edges:
            arc = edge.arc()
            if arc is None:
                records.append(canonical_edge(permutation[edge.u], permutation[edge.v], False))
            else:
                records.append(canonical_edge(permutation[arc[0]], permutation[arc[1]], True))
        return PartiallyOrientedGraph(n=self.n, edges=tuple(records))


def underlying(graph: PartiallyOrientedGraph) -> PartiallyOrientedGraph:
    """D̄: same edges with every orientation forgotten."""
    if graph.is_unoriented:
        return graph
    return PartiallyOrientedGraph(
        n=graph.n,
        edges=tuple(Edge(e.u, e.v, EdgeState.UNORIENTED) for e in graph.edges),
    )


@dataclass(frozen=True)
class JointDegreeTable:
    """d^{στ}(x, y) = |Γ^σ(x) ∩ Γ^τ(y)| for σ, τ in {+, -}, as dense n×n tables."""

    pp: np.ndarray
    pm: np.ndarray
    mp: np.ndarray
    mm: np.ndarray

    @property
    def n(self) -> int:
        return self.pp.shape[0]

    @property
    def a(self) -> np.ndarray:
        return self.pp + self.mm

    @property
    def b(self) -> np.ndarray:
        return self.pm + self.mp

    def table(self, sigma: str, tau: str) -> np.ndarray:
        """Table for σ, τ in {"+", "-", "*"}; "*" sums both signs (any neighbour)."""
        if sigma == "*":
            return self.table("+", tau) + self.table("-", tau)
        if tau == "*":
            return self.table(sigma, "+") + self.table(sigma, "-")
        lookup = {("+", "+"): self.pp, ("+", "-"): self.pm, ("-", "+"): self.mp, ("-", "-"): self.mm}
        try:
            return lookup[(sigma, tau)]
        except KeyError as exc:
            raise ValueError(f"unknown joint degree signs {sigma!r}{tau!r}") from exc


def joint_degree_table(
    graph: PartiallyOrientedGraph,
    *,
    allow_large: bool = False,
    config: ToolkitConfig | None = None,
) -> JointDegreeTable:
    """All four joint degree tables, built wedge by wedge around every middle vertex z.

    For each z the in-neighbours of z are exactly the x with z ∈ Γ⁺(x), and the
    out-neighbours are the x with z ∈ Γ⁻(x), so the four tables receive one
    block increment each per z. Cost is Σ_z d(z)².
    """
    graph.require_oriented("joint_degree_table")
    config = config or load_config()
    n = graph.n
    if n > config.dense_table_limit and not allow_large:
        raise TooLargeForExactError(
            f"dense joint degree tables capped at n <= {config.dense_table_limit} (n={n}); "
            "pass allow_large=True to lift the cap"
        )
    tables = {key: np.zeros((n, n), dtype=np.int64) for key in ("pp", "pm", "mp", "mm")}
    wedges = 0
    for z in range(n):
        ins = np.fromiter(sorted(graph.in_neighbours(z)), dtype=np.intp)
        outs = np.fromiter(sorted(graph.out_neighbours(z)), dtype=np.intp)
        if ins.size:
            tables["pp"][np.ix_(ins, ins)] += 1
        if outs.size:
            tables["mm"][np.ix_(outs, outs)] += 1
        if ins.size and outs.size:
            tables["pm"][np.ix_(ins, outs)] += 1
            tables["mp"][np.ix_(outs, ins)] += 1
        wedges += (ins.size + outs.size) ** 2
    logger.debug("Joint degree tables built n=%s wedges=%s", n, wedges)
    return JointDegreeTable(**tables)


@dataclass(frozen=True)
class EdgeCounts:
    edges: int
    forward: int
    backward: int


def edge_counts_between(graph: PartiallyOrientedGraph, pair: VertexSubsetPair) -> EdgeCounts:
    """e(A,B), e⃗(A,B) and e⃗(B,A).

    e(A,B) counts ordered pairs (x, y) with x in A, y in B and xy an edge of D̄,
    so an edge inside A ∩ B contributes 2 and e(A,B) = e⃗(A,B) + e⃗(B,A) on
    oriented graphs.
    """
    if pair.n != graph.n:
        raise ValueError(f"subset masks have length {pair.n}, graph has n={graph.n}")
    a = np.asarray(pair.a, dtype=np.int64)
    b = np.asarray(pair.b, dtype=np.int64)
    arcs = graph.arc_matrix.astype(np.int64)
    both = graph.underlying_matrix.astype(np.int64)
    return EdgeCounts(
        edges=int(a @ both @ b),
        forward=int(a @ arcs @ b),
        backward=int(b @ arcs @ a),
    )
