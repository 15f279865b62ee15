from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from qro_app.config import load_config
from qro_app.data import load, read_graph, save, write_graph
from qro_app.errors import (
    ConfigError,
    DuplicateEdgeError,
    NotFullyOrientedError,
    ParseError,
    SelfLoopError,
    TooLargeForExactError,
    VertexOutOfRangeError,
)
from qro_app.generators import gnp_oriented, random_tournament
from qro_app.graph import PartiallyOrientedGraph, edge_counts_between, joint_degree_table, underlying
from qro_app.types import EdgeState, VertexSubsetPair

seeds = [0x59824C5A, 0x9DCA707A, 0xE0218AA8, 0x81DA8035, 0x63B16DEB, 0x7DC89245]


def test_joint_degrees_of_transitive_triangle(tt3):
    table = joint_degree_table(tt3)
    assert table.pp[0, 1] == 1
    assert table.mm[1, 2] == 1
    assert table.pm[0, 0] == 0


def test_joint_degrees_of_empty_graph_are_zero():
    table = joint_degree_table(PartiallyOrientedGraph.empty(3))
    for name in ("pp", "pm", "mp", "mm"):
        assert not getattr(table, name).any()


@pytest.mark.parametrize("seed", seeds)
def test_joint_degrees_match_definition(seed):
    graph = gnp_oriented(14, Fraction(1, 2), seed)
    table = joint_degree_table(graph)
    sides = {"+": graph.out_neighbours, "-": graph.in_neighbours}
    for sigma, tau in product("+-", repeat=2):
        expected = np.array(
            [[len(sides[sigma](x) & sides[tau](y)) for y in range(graph.n)] for x in range(graph.n)]
        )
        assert np.array_equal(table.table(sigma, tau), expected)


@pytest.mark.parametrize("seed", seeds)
def test_degree_sums(seed):
    graph = random_tournament(9, seed)
    for x in range(graph.n):
        assert graph.out_degree(x) + graph.in_degree(x) == graph.degree(x)
    assert sum(graph.out_degree(x) for x in range(graph.n)) == graph.e_oriented
    assert sum(graph.in_degree(x) for x in range(graph.n)) == graph.e_oriented


def test_dense_table_cap(monkeypatch, tt3):
    monkeypatch.setenv("QRO_DENSE_LIMIT", "2")
    config = load_config()
    with pytest.raises(TooLargeForExactError):
        joint_degree_table(tt3, config=config)
    assert joint_degree_table(tt3, allow_large=True, config=config).n == 3


def test_joint_degrees_need_full_orientation():
    mixed = load("poag 1\nn 3\na 0 1\nu 1 2\n")
    with pytest.raises(NotFullyOrientedError):
        joint_degree_table(mixed)


def test_edge_counts_between(tt3, c4):
    counts = edge_counts_between(tt3, VertexSubsetPair.from_sets(3, {0, 1}, {1, 2}))
    assert (counts.forward, counts.backward, counts.edges) == (3, 0, 3)

    counts = edge_counts_between(c4, VertexSubsetPair.from_sets(4, {0, 1}, {1, 2}))
    assert (counts.forward, counts.backward) == (2, 0)

    counts = edge_counts_between(c4, VertexSubsetPair.from_sets(4, set(), {0, 1, 2, 3}))
    assert (counts.edges, counts.forward, counts.backward) == (0, 0, 0)


def test_edge_inside_both_sides_counts_twice(single_arc):
    counts = edge_counts_between(single_arc, VertexSubsetPair.from_sets(2, {0, 1}, {0, 1}))
    assert counts.edges == 2
    assert counts.forward == counts.backward == 1


@pytest.mark.parametrize("seed", seeds)
def test_discrepancy_is_antisymmetric_under_swap(seed):
    graph = random_tournament(8, seed)
    rng = np.random.default_rng(seed)
    pair = VertexSubsetPair.from_arrays(rng.random(8) < 0.5, rng.random(8) < 0.5)
    counts = edge_counts_between(graph, pair)
    swapped = edge_counts_between(graph, pair.swapped())
    assert counts.forward - counts.backward == -(swapped.forward - swapped.backward)
    assert counts.forward + counts.backward == counts.edges


def test_underlying(single_arc, c4):
    assert underlying(single_arc) == PartiallyOrientedGraph.from_edges(2, [(0, 1)])
    assert underlying(c4).is_unoriented
    assert underlying(c4).e == 4
    plain = underlying(c4)
    assert underlying(plain) == plain


def test_reverse_and_relabel(c4):
    assert c4.reverse().reverse() == c4
    assert np.array_equal(c4.reverse().skew_matrix, -c4.skew_matrix)
    rotated = c4.relabel([1, 2, 3, 0])
    assert rotated == c4
    with pytest.raises(ValueError):
        c4.relabel([0, 0, 1, 2])


def test_edge_records_are_canonical():
    graph = PartiallyOrientedGraph.from_arcs(3, [(2, 0)])
    assert graph.edges[0].u == 0
    assert graph.edges[0].state is EdgeState.REVERSE
    assert graph.arcs() == [(2, 0)]


def test_invalid_records():
    with pytest.raises(SelfLoopError):
        PartiallyOrientedGraph.from_arcs(3, [(1, 1)])
    with pytest.raises(DuplicateEdgeError):
        PartiallyOrientedGraph.from_arcs(3, [(0, 1), (1, 0)])
    with pytest.raises(VertexOutOfRangeError):
        PartiallyOrientedGraph.from_arcs(3, [(0, 3)])


@pytest.mark.parametrize("seed", seeds)
def test_save_load_round_trip(seed, tmp_path):
    graph = gnp_oriented(10, Fraction(1, 3), seed)
    assert load(save(graph)) == graph
    path = write_graph(graph, tmp_path / "nested" / "g.poag")
    assert read_graph(path) == graph
    assert path.read_bytes() == save(graph).encode("utf-8")


def test_save_keeps_unoriented_edges():
    text = "poag 1\n# comment\n\nn 3\nu 2 1\na 2 0  # arc\n"
    graph = load(text)
    assert save(graph) == "poag 1\nn 3\na 2 0\nu 1 2\n"


@pytest.mark.parametrize(
    "text,error,line",
    [
        ("poag 2\nn 2\n", ParseError, 1),
        ("poag 1\nm 2\n", ParseError, 2),
        ("poag 1\nn 3\na 0 1\na 1 0\n", DuplicateEdgeError, 4),
        ("poag 1\nn 3\na 1 1\n", SelfLoopError, 3),
        ("poag 1\nn 3\nu 0 5\n", VertexOutOfRangeError, 3),
        ("poag 1\nn 3\nx 0 1\n", ParseError, 3),
        ("poag 1\nn 3\na 0 -1\n", ParseError, 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, error, line):
    with pytest.raises(error) as excinfo:
        load(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_bad_config_value(monkeypatch):
    monkeypatch.setenv("QRO_WORKERS", "many")
    with pytest.raises(ConfigError, match="QRO_WORKERS"):
        load_config()
