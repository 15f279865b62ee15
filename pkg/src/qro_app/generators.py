"""Seeded instance generators.

All randomness comes from numpy's Philox4x64 counter generator keyed by
``seed + (stream << 64)`` with the counter starting at zero, so identical
inputs give identical graphs on every platform. Stream 0 orients edges (the top
bit of one word per unoriented edge, in canonical edge order: 0 keeps u->v, 1
gives v->u); stream 1 decides edge inclusion for the gnp model.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import logging
from pathlib import Path

from .data import read_graph
from .graph import PartiallyOrientedGraph, canonical_edge
from .types import Edge, EdgeState
from .utils import check_seed, philox_bits, philox_raw

logger = logging.getLogger(__name__)

ORIENTATION_STREAM = 0
INCLUSION_STREAM = 1

MODELS = ("orient-given-graph", "gnp-oriented", "tournament", "blowup")


def complete_graph(n: int) -> PartiallyOrientedGraph:
    return PartiallyOrientedGraph.from_edges(n, combinations(range(n), 2))


def directed_cycle(n: int) -> PartiallyOrientedGraph:
    if n < 3:
        raise ValueError("a directed cycle needs at least 3 vertices")
    return PartiallyOrientedGraph.from_arcs(n, ((x, (x + 1) % n) for x in range(n)))


def transitive_tournament(n: int) -> PartiallyOrientedGraph:
    return PartiallyOrientedGraph.from_arcs(n, combinations(range(n), 2))


def random_orientation(graph: PartiallyOrientedGraph, seed: int) -> PartiallyOrientedGraph:
    check_seed(seed)
    loose = [edge for edge in graph.edges if not edge.is_arc]
    bits = philox_bits(seed, len(loose), ORIENTATION_STREAM).tolist()
    choice = {(edge.u, edge.v): bit for edge, bit in zip(loose, bits)}
    records = []
    for edge in graph.edges:
        if edge.is_arc:
            records.append(edge)
        else:
            state = EdgeState.REVERSE if choice[(edge.u, edge.v)] else EdgeState.FORWARD
            records.append(Edge(edge.u, edge.v, state))
    logger.debug("Oriented %s of %s edges with seed %s", len(loose), graph.e, seed)
    return PartiallyOrientedGraph(n=graph.n, edges=tuple(records))


def random_tournament(n: int, seed: int) -> PartiallyOrientedGraph:
    if n < 1:
        raise ValueError("a tournament needs at least one vertex")
    return random_orientation(complete_graph(n), seed)


def gnp_oriented(n: int, p: Fraction, seed: int) -> PartiallyOrientedGraph:
    """Each pair u < v kept with probability p exactly (raw·den < num·2⁶⁴), then oriented at random."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    check_seed(seed)
    pairs = list(combinations(range(n), 2))
    draws = philox_raw(seed, len(pairs), INCLUSION_STREAM).tolist()
    threshold = p.numerator << 64
    kept = [pair for pair, raw in zip(pairs, draws) if raw * p.denominator < threshold]
    logger.debug("gnp n=%s p=%s kept %s of %s pairs", n, p, len(kept), len(pairs))
    return random_orientation(PartiallyOrientedGraph.from_edges(n, kept), seed)


def blowup(graph: PartiallyOrientedGraph, m: int) -> PartiallyOrientedGraph:
    """Vertex x becomes clones x·m .. x·m+m-1; each edge becomes a complete m×m bundle in the same state."""
    if m < 1:
        raise ValueError(f"clone count must be >= 1, got {m}")
    records = []
    for edge in graph.edges:
        arc = edge.arc()
        tail, head = arc if arc is not None else (edge.u, edge.v)
        for i in range(m):
            for j in range(m):
                records.append(canonical_edge(tail * m + i, head * m + j, arc is not None))
    return PartiallyOrientedGraph(n=graph.n * m, edges=tuple(records))


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    seed: int = 0
    n: int | None = None
    p: Fraction | None = None
    base: Path | PartiallyOrientedGraph | None = None
    m: int | None = None

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {', '.join(MODELS)}")
        check_seed(self.seed)
        if self.p is not None and not 0 <= self.p <= 1:
            raise ValueError(f"edge probability must lie in [0, 1], got {self.p}")
        if self.m is not None and self.m < 1:
            raise ValueError(f"clone count must be >= 1, got {self.m}")

    def base_graph(self) -> PartiallyOrientedGraph:
        if self.base is None:
            raise ValueError(f"model {self.model!r} needs a base graph")
        if isinstance(self.base, PartiallyOrientedGraph):
            return self.base
        return read_graph(Path(self.base))


def _require(value, name: str, model: str):
    if value is None:
        raise ValueError(f"model {model!r} needs --{name}")
    return value


def generate(spec: GeneratorSpec) -> PartiallyOrientedGraph:
    if spec.model == "orient-given-graph":
        graph = random_orientation(spec.base_graph(), spec.seed)
    elif spec.model == "gnp-oriented":
        graph = gnp_oriented(_require(spec.n, "n", spec.model), _require(spec.p, "p", spec.model), spec.seed)
    elif spec.model == "tournament":
        graph = random_tournament(_require(spec.n, "n", spec.model), spec.seed)
    else:
        graph = blowup(spec.base_graph(), _require(spec.m, "m", spec.model))
    logger.info("Generated %s graph n=%s e=%s", spec.model, graph.n, graph.e)
    return graph
