from fractions import Fraction

import pytest

from qro_app.census import cycle_hom_count, four_cycle_census, sign_census
from qro_app.errors import PatternTooLargeError
from qro_app.generators import blowup, directed_cycle, gnp_oriented, random_tournament
from qro_app.graph import PartiallyOrientedGraph, joint_degree_table, underlying
from qro_app.homomorphism import hom_count, hom_deviation
from qro_app.patterns import pattern_from_states, pattern_library, TRIANGLE_EDGES
from qro_app.spectral import quadruple_sum, spectrum

seeds = [0x59824C5A, 0x9DCA707A, 0xE0218AA8, 0x81DA8035, 0x63B16DEB, 0x7DC89245, 0x1AB46AFA, 0x5CC6D93E]


def test_census_of_small_graphs(tt3, c4, single_arc):
    assert four_cycle_census(tt3).as_tuple() == (0, 0, 4, 14, 18)
    assert four_cycle_census(c4).as_tuple() == (8, 0, 16, 8, 32)
    assert four_cycle_census(single_arc).as_tuple() == (0, 0, 0, 2, 2)


def test_blowup_scales_census(c4):
    census = four_cycle_census(blowup(c4, 2))
    assert census.as_tuple() == (128, 0, 256, 128, 512)
    assert census.as_tuple() == tuple(16 * value for value in four_cycle_census(c4).as_tuple())
    assert census.hom_iii_alt == 16 * four_cycle_census(c4).hom_iii_alt


@pytest.mark.parametrize("seed", seeds)
def test_census_identities_on_random_graphs(seed):
    graph = gnp_oriented(11, Fraction(2, 3), seed)
    census = four_cycle_census(graph)
    i, ii, iii, iv, c4 = census.as_tuple()
    assert census.decomposition_holds
    assert census.hom_iii == census.hom_iii_alt
    assert 8 * iv >= c4
    assert 2 * ii <= c4
    assert 2 * iv >= iii
    assert iii >= 2 * i
    assert 2 * iv + iii >= ii
    assert iv >= i
    assert 4 * iv >= ii


@pytest.mark.parametrize("seed", seeds[:4])
def test_closed_forms_match_oracle(seed):
    graph = random_tournament(7, seed)
    table = joint_degree_table(graph)
    census = four_cycle_census(graph, table)
    library = pattern_library()
    per_type = {}
    for kind, members in library.four_cycles.items():
        per_type[kind] = 0
        for pattern in members:
            count = cycle_hom_count(pattern.states, table)
            assert count == hom_count(pattern.graph, graph)
            per_type[kind] += count
    assert (per_type["I"], per_type["II"], per_type["III"], per_type["IV"]) == census.as_tuple()[:4]
    assert cycle_hom_count("----", table) == census.hom_c4
    assert hom_count(library.unoriented_c4.graph, graph) == census.hom_c4


def test_cycle_hom_count_rejects_bad_states(c4):
    with pytest.raises(ValueError):
        cycle_hom_count(">>x>", joint_degree_table(c4))


def test_sign_census(c4):
    sign = sign_census(c4)
    assert (sign.c_total, sign.c_plus, sign.c_minus) == (32, 32, 0)


@pytest.mark.parametrize("seed", seeds)
def test_quadruple_sum_identity(seed):
    graph = random_tournament(10, seed)
    census = four_cycle_census(graph)
    sign = sign_census(graph)
    total = quadruple_sum(graph)
    assert census.hom_c4 - 2 * census.hom_ii == sign.signed_total == total
    assert sign.c_total == census.hom_c4
    assert total >= 0


def test_quadruple_sum_of_small_graphs(tt3, c4, single_arc):
    assert quadruple_sum(tt3) == 18
    assert quadruple_sum(c4) == 32
    assert quadruple_sum(single_arc) == 2


def test_hom_count_small_cases(tt3, c4):
    library = pattern_library()
    cyclic = library.by_name("c4[>>>>]").graph
    assert hom_count(cyclic, c4) == 4
    assert hom_count(library.unoriented_c4.graph, tt3) == 18
    assert hom_count(PartiallyOrientedGraph.empty(0), c4) == 1
    assert hom_count(PartiallyOrientedGraph.empty(1), c4) == 4


def test_hom_deviation_small_cases(tt3, c4):
    cyclic_triangle = pattern_from_states(3, TRIANGLE_EDGES, ">>>")
    assert hom_count(cyclic_triangle, tt3) == 0
    assert hom_deviation(cyclic_triangle, tt3) == Fraction(-3, 4)

    cyclic = pattern_library().by_name("c4[>>>>]").graph
    assert hom_deviation(cyclic, c4) == 2
    assert abs(hom_deviation(cyclic, c4)) / 4 ** 4 == Fraction(1, 128)

    assert hom_deviation(underlying(cyclic), c4) == 0


def test_arcs_do_not_map_onto_unoriented_edges():
    target = PartiallyOrientedGraph.from_edges(2, [(0, 1)])
    arc = PartiallyOrientedGraph.from_arcs(2, [(0, 1)])
    assert hom_count(arc, target) == 0
    assert hom_count(underlying(arc), target) == 2


def test_oracle_limits(c4):
    big = directed_cycle(6)
    with pytest.raises(PatternTooLargeError):
        hom_count(big, c4)
    with pytest.raises(PatternTooLargeError):
        hom_count(pattern_library().by_name("c4[>>>>]").graph, c4, budget=3)


@pytest.mark.parametrize("seed", seeds[:4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_blowup_multiplies_census(seed, m):
    graph = gnp_oriented(6, Fraction(1, 2), seed)
    census = four_cycle_census(graph)
    scaled = four_cycle_census(blowup(graph, m))
    assert scaled.as_tuple() == tuple(m ** 4 * value for value in census.as_tuple())
    assert scaled.hom_iii_alt == m ** 4 * census.hom_iii_alt


@pytest.mark.parametrize("m", range(1, 9))
def test_directed_cycle_blowups(c4, m):
    graph = blowup(c4, m)
    assert 8 * quadruple_sum(graph) == graph.n ** 4
    assert four_cycle_census(graph).hom_ii == 0


@pytest.mark.slow
def test_census_matches_oracle_on_many_small_graphs():
    library = pattern_library()
    for index in range(200):
        seed = seeds[0] + index
        graph = gnp_oriented(4 + index % 4, Fraction(1 + index % 3, 3), seed)
        census = four_cycle_census(graph)
        per_type = {
            kind: sum(hom_count(pattern.graph, graph) for pattern in members)
            for kind, members in library.four_cycles.items()
        }
        assert (per_type["I"], per_type["II"], per_type["III"], per_type["IV"]) == census.as_tuple()[:4]
        assert hom_count(library.unoriented_c4.graph, graph) == census.hom_c4


@pytest.mark.slow
def test_identity_chain_at_full_size():
    for index in range(100):
        graph = gnp_oriented(64, Fraction(1 + index % 4, 4), seeds[1] + index)
        census = four_cycle_census(graph)
        sign = sign_census(graph)
        total = quadruple_sum(graph)
        assert census.decomposition_holds
        assert census.hom_iii == census.hom_iii_alt
        assert census.hom_c4 - 2 * census.hom_ii == sign.signed_total == total
        magnitudes = spectrum(graph, full=True).magnitudes
        assert sum(m ** 4 for m in magnitudes) == pytest.approx(total, rel=1e-6, abs=1e-6)
        assert sum(m ** 2 for m in magnitudes) == pytest.approx(2 * graph.e, rel=1e-6, abs=1e-6)


@pytest.mark.slow
def test_census_inequalities_at_many_sizes():
    for index in range(1000):
        graph = gnp_oriented(4 + index % 61, Fraction(1 + index % 5, 5), seeds[2] + index)
        i, ii, iii, iv, c4 = four_cycle_census(graph).as_tuple()
        assert 8 * iv >= c4
        assert 2 * ii <= c4
        assert 2 * iv >= iii
        assert iii >= 2 * i
        assert 2 * iv + iii >= ii
        assert iv >= i
        assert 4 * iv >= ii
