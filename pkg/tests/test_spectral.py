from fractions import Fraction
import math

import numpy as np
import pytest

from qro_app.config import load_config
from qro_app.errors import ConvergenceFailure, TooLargeForExactError
from qro_app.generators import gnp_oriented, random_tournament
from qro_app.graph import PartiallyOrientedGraph
from qro_app.spectral import dominant_eigenvalue, quadruple_sum, spectral_identities_check, spectrum

seeds = [0x59824C5A, 0x9DCA707A, 0xE0218AA8, 0x81DA8035, 0x63B16DEB, 0x7DC89245]


def test_full_spectrum_of_small_graphs(tt3, c4):
    magnitudes = spectrum(tt3, full=True).magnitudes
    assert magnitudes == pytest.approx((math.sqrt(3), math.sqrt(3), 0.0), abs=1e-6)

    summary = spectrum(c4, full=True)
    assert summary.magnitudes == pytest.approx((2.0, 2.0, 0.0, 0.0), abs=1e-6)
    assert summary.sum_lambda4 == 32
    assert summary.sum_lambda2_abs == 8


def test_power_iteration_matches_full(c4):
    summary = spectrum(c4)
    assert not summary.full
    assert summary.lambda1 == pytest.approx(2.0, rel=1e-6)
    assert summary.iterations >= 1


def test_empty_graph_spectrum():
    summary = spectrum(PartiallyOrientedGraph.empty(4), full=True)
    assert summary.magnitudes == (0.0, 0.0, 0.0, 0.0)
    assert spectrum(PartiallyOrientedGraph.empty(4)).lambda1 == 0.0


@pytest.mark.parametrize("seed", seeds)
def test_fourth_moment_is_quadruple_sum(seed):
    graph = random_tournament(12, seed)
    summary = spectrum(graph, full=True)
    assert sum(m ** 4 for m in summary.magnitudes) == pytest.approx(quadruple_sum(graph), rel=1e-9)
    assert sum(m ** 2 for m in summary.magnitudes) == pytest.approx(2 * graph.e, rel=1e-9)
    assert summary.lambda1 == pytest.approx(spectrum(graph).lambda1, rel=1e-6)


@pytest.mark.parametrize("seed", seeds)
def test_spectral_identities_hold(seed):
    graph = random_tournament(15, seed)
    assert spectral_identities_check(graph).passed
    assert spectral_identities_check(graph, spectrum(graph)).passed


def test_power_iteration_reports_failure():
    matrix = np.diag([2.0, 1.0])
    with pytest.raises(ConvergenceFailure) as excinfo:
        dominant_eigenvalue(matrix, tolerance=1e-12, max_iter=1)
    assert excinfo.value.iterations == 1
    assert excinfo.value.residual >= 0


def test_full_spectrum_cap(monkeypatch, tt3):
    monkeypatch.setenv("QRO_FULL_SPECTRUM_LIMIT", "2")
    with pytest.raises(TooLargeForExactError):
        spectrum(tt3, full=True, config=load_config())


@pytest.mark.parametrize("seed", seeds)
def test_spectrum_ignores_relabelling_and_reversal(seed):
    graph = random_tournament(10, seed)
    permutation = np.random.default_rng(seed).permutation(graph.n).tolist()
    magnitudes = spectrum(graph, full=True).magnitudes
    assert spectrum(graph.relabel(permutation), full=True).magnitudes == pytest.approx(magnitudes, abs=1e-6)
    assert spectrum(graph.reverse(), full=True).magnitudes == pytest.approx(magnitudes, abs=1e-6)
    assert quadruple_sum(graph.reverse()) == quadruple_sum(graph)
    assert quadruple_sum(graph.relabel(permutation)) == quadruple_sum(graph)


@pytest.mark.parametrize("seed", seeds)
@pytest.mark.parametrize("n", [1, 5, 12])
def test_quadruple_sum_matches_direct_sum(seed, n):
    graph = gnp_oriented(n, Fraction(1, 2), seed)
    matrix = graph.skew_matrix.astype(np.int64)
    assert quadruple_sum(graph) == int(np.einsum("xy,xz,wy,wz->", matrix, matrix, matrix, matrix))


@pytest.mark.parametrize(
    "name, margins",
    [("tt3", (3, 9, 0)), ("c4", (8, 16, 0))],
)
def test_spectral_identity_margins(request, name, margins):
    identities = spectral_identities_check(request.getfixturevalue(name))
    assert identities.passed
    assert [v.margin for v in identities.verdicts] == pytest.approx(list(margins), abs=1e-6)
