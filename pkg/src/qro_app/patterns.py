"""The canonical pattern library: oriented four-cycles by type, plus small partial patterns.

A pattern on vertices 0..k-1 is written as a state string over its edges in a
fixed order: ">" is the arc i -> j for edge (i, j), "<" the arc j -> i, "-" an
unoriented edge. Four-cycles list edges (0,1), (1,2), (2,3), (3,0).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
import logging
from typing import Iterable

import networkx as nx

from .graph import PartiallyOrientedGraph, canonical_edge

logger = logging.getLogger(__name__)

CYCLE_EDGES = ((0, 1), (1, 2), (2, 3), (3, 0))
TRIANGLE_EDGES = ((0, 1), (1, 2), (2, 0))
PATH_EDGES = ((0, 1), (1, 2))
EDGE_EDGES = ((0, 1),)

FOUR_CYCLE_TYPES = ("I", "II", "III", "IV")
# I cyclic, II three consecutive arcs one way, III two-and-two, IV two sources and two sinks
TYPE_REPRESENTATIVES = {"I": ">>>>", "II": ">>><", "III": ">><<", "IV": "><><"}


@dataclass(frozen=True)
class NamedPattern:
    name: str
    family: str
    states: str
    graph: PartiallyOrientedGraph
    four_cycle_type: str | None = None

    @property
    def k(self) -> int:
        return self.graph.n


def pattern_from_states(
    k: int, edges: tuple[tuple[int, int], ...], states: str
) -> PartiallyOrientedGraph:
    if len(states) != len(edges):
        raise ValueError(f"expected {len(edges)} edge states, got {states!r}")
    records = []
    for (i, j), state in zip(edges, states):
        if state == ">":
            records.append(canonical_edge(i, j, True))
        elif state == "<":
            records.append(canonical_edge(j, i, True))
        elif state == "-":
            records.append(canonical_edge(i, j, False))
        else:
            raise ValueError(f"unknown edge state {state!r}")
    return PartiallyOrientedGraph(n=k, edges=tuple(records))


def _digraph(graph: PartiallyOrientedGraph) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(graph.n))
    digraph.add_edges_from(graph.arcs())
    return digraph


def classify_four_cycle(states: str) -> str:
    """Type of a fully oriented four-cycle, by isomorphism against the representatives."""
    if len(states) != 4 or set(states) - {">", "<"}:
        raise ValueError(f"expected a fully oriented four-cycle state string, got {states!r}")
    candidate = _digraph(pattern_from_states(4, CYCLE_EDGES, states))
    for name, representative in TYPE_REPRESENTATIVES.items():
        if nx.is_isomorphic(candidate, _digraph(pattern_from_states(4, CYCLE_EDGES, representative))):
            return name
    raise AssertionError(f"orientation {states} matches no four-cycle type")


def _family(
    family: str, k: int, edges: tuple[tuple[int, int], ...], alphabet: str
) -> tuple[NamedPattern, ...]:
    patterns = []
    for combo in product(alphabet, repeat=len(edges)):
        states = "".join(combo)
        patterns.append(
            NamedPattern(
                name=f"{family}[{states}]",
                family=family,
                states=states,
                graph=pattern_from_states(k, edges, states),
            )
        )
    return tuple(patterns)


@dataclass(frozen=True)
class PatternLibrary:
    four_cycles: dict[str, tuple[NamedPattern, ...]]
    unoriented_c4: NamedPattern
    edges: tuple[NamedPattern, ...]
    paths: tuple[NamedPattern, ...]
    triangles: tuple[NamedPattern, ...]

    def oriented_four_cycles(self) -> tuple[NamedPattern, ...]:
        return tuple(
            pattern
            for name in FOUR_CYCLE_TYPES
            for pattern in sorted(self.four_cycles[name], key=lambda p: p.states)
        )

    def type_sizes(self) -> tuple[int, ...]:
        return tuple(len(self.four_cycles[name]) for name in FOUR_CYCLE_TYPES)

    def proportions(self) -> tuple[Fraction, ...]:
        total = sum(self.type_sizes())
        return tuple(Fraction(size, total) for size in self.type_sizes())

    def all_patterns(self) -> tuple[NamedPattern, ...]:
        return (
            self.oriented_four_cycles()
            + (self.unoriented_c4,)
            + self.triangles
            + self.paths
            + self.edges
        )

    def by_name(self, name: str) -> NamedPattern:
        for pattern in self.all_patterns():
            if pattern.name == name:
                return pattern
        raise KeyError(name)


@lru_cache(maxsize=1)
def pattern_library() -> PatternLibrary:
    four_cycles: dict[str, list[NamedPattern]] = {name: [] for name in FOUR_CYCLE_TYPES}
    for combo in product("><", repeat=4):
        states = "".join(combo)
        kind = classify_four_cycle(states)
        four_cycles[kind].append(
            NamedPattern(
                name=f"c4[{states}]",
                family="c4",
                states=states,
                graph=pattern_from_states(4, CYCLE_EDGES, states),
                four_cycle_type=kind,
            )
        )
    library = PatternLibrary(
        four_cycles={name: tuple(members) for name, members in four_cycles.items()},
        unoriented_c4=NamedPattern(
            name="c4[----]",
            family="c4",
            states="----",
            graph=pattern_from_states(4, CYCLE_EDGES, "----"),
        ),
        edges=_family("edge", 2, EDGE_EDGES, "><-"),
        paths=_family("path", 3, PATH_EDGES, "><-"),
        triangles=_family("tri", 3, TRIANGLE_EDGES, "><-"),
    )
    logger.debug("Pattern library built with four-cycle type sizes %s", library.type_sizes())
    return library


def default_patterns() -> tuple[NamedPattern, ...]:
    return pattern_library().all_patterns()


def file_pattern(name: str, graph: PartiallyOrientedGraph) -> NamedPattern:
    """Wrap a pattern read from disk; four-cycles on 0-1-2-3-0 are recognised so closed forms apply."""
    if graph.n == 4 and graph.e == 4:
        states = []
        for i, j in CYCLE_EDGES:
            match = [edge for edge in graph.edges if {edge.u, edge.v} == {i, j}]
            if not match:
                break
            arc = match[0].arc()
            states.append("-" if arc is None else (">" if arc == (i, j) else "<"))
        else:
            text = "".join(states)
            kind = classify_four_cycle(text) if "-" not in text else None
            return NamedPattern(name=name, family="c4", states=text, graph=graph, four_cycle_type=kind)
    return NamedPattern(name=name, family="file", states="", graph=graph)


def with_defaults(extra: Iterable[NamedPattern]) -> tuple[NamedPattern, ...]:
    """The default library followed by ``extra``; a name already taken keeps its first pattern."""
    merged = {pattern.name: pattern for pattern in default_patterns()}
    for pattern in extra:
        if pattern.name in merged:
            logger.warning("Pattern %s already in the library; file copy ignored", pattern.name)
            continue
        merged[pattern.name] = pattern
    return tuple(merged.values())
