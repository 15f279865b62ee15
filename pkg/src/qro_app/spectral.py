"""Skew adjacency spectra.

Everything exact goes through the integer matrix M²; eigen-solvers only report
magnitudes. Since M is real antisymmetric, -M² is symmetric positive
semidefinite with eigenvalues |λ_i|², so no complex arithmetic is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
import math

import numpy as np

from .census import check_count_range
from .config import ToolkitConfig, load_config
from .errors import ConvergenceFailure, TooLargeForExactError
from .graph import PartiallyOrientedGraph
from .types import Verdict
from .utils import exact_matmul, float_leq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkewAdjacency:
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def square(self) -> np.ndarray:
        """M², exactly."""
        return exact_matmul(self.matrix, self.matrix)


@dataclass(frozen=True)
class SpectrumSummary:
    magnitudes: tuple[float, ...]
    sum_lambda4: int
    sum_lambda2_abs: int
    full: bool
    iterations: int = 0

    @property
    def lambda1(self) -> float:
        return self.magnitudes[0] if self.magnitudes else 0.0


def skew_adjacency(graph: PartiallyOrientedGraph) -> SkewAdjacency:
    graph.require_oriented("skew_adjacency")
    return SkewAdjacency(matrix=graph.skew_matrix)


def quadruple_sum(graph: PartiallyOrientedGraph, square: np.ndarray | None = None) -> int:
    """Σ M_xy M_xy' M_x'y M_x'y' = ‖M²‖_F² = trace(M⁴); never negative."""
    graph.require_oriented("quadruple_sum")
    check_count_range(graph.n)
    if square is None:
        square = skew_adjacency(graph).square()
    return int(np.sum(square * square, dtype=np.int64))


def dominant_eigenvalue(
    matrix: np.ndarray,
    *,
    tolerance: float,
    max_iter: int,
    seed: int = 0,
) -> tuple[float, int]:
    """Largest eigenvalue of a symmetric PSD matrix by power iteration.

    Stops once the Rayleigh quotient changes by at most ``tolerance`` relative.
    """
    n = matrix.shape[0]
    if n == 0 or not matrix.any():
        return 0.0, 0

    rng = np.random.default_rng(seed)
    x = rng.normal(size=n)
    x /= np.linalg.norm(x)

    lam = 0.0
    for iteration in range(1, max_iter + 1):
        y = matrix @ x
        y_norm = np.linalg.norm(y)
        if y_norm == 0:
            # start vector fell into the null space
            x = rng.normal(size=n)
            x /= np.linalg.norm(x)
            continue
        lam_new = float(x @ y)
        x = y / y_norm
        if abs(lam_new - lam) <= tolerance * abs(lam_new):
            logger.debug("Power iteration converged after %s iterations", iteration)
            return lam_new, iteration
        lam = lam_new

    residual = float(np.linalg.norm(matrix @ x - lam * x))
    raise ConvergenceFailure("power iteration did not converge", residual=residual, iterations=max_iter)


def spectrum(
    graph: PartiallyOrientedGraph,
    full: bool = False,
    *,
    config: ToolkitConfig | None = None,
) -> SpectrumSummary:
    graph.require_oriented("spectrum")
    config = config or load_config()
    square = skew_adjacency(graph).square()
    gram = -square.astype(np.float64)
    sum_lambda4 = quadruple_sum(graph, square)
    sum_lambda2_abs = 2 * graph.e

    if full:
        if graph.n > config.full_spectrum_limit:
            raise TooLargeForExactError(
                f"full spectrum capped at n <= {config.full_spectrum_limit} (n={graph.n})"
            )
        squares = np.clip(np.linalg.eigvalsh(gram), 0.0, None)
        magnitudes = tuple(float(v) for v in np.sqrt(squares)[::-1])
        return SpectrumSummary(magnitudes, sum_lambda4, sum_lambda2_abs, full=True)

    top, iterations = dominant_eigenvalue(
        gram, tolerance=config.power_tolerance, max_iter=config.power_max_iter
    )
    magnitudes = (math.sqrt(max(top, 0.0)),) if graph.n else ()
    return SpectrumSummary(magnitudes, sum_lambda4, sum_lambda2_abs, full=False, iterations=iterations)


@dataclass(frozen=True)
class SpectralIdentities:
    verdicts: tuple[Verdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)


def spectral_identities_check(
    graph: PartiallyOrientedGraph,
    summary: SpectrumSummary | None = None,
    *,
    config: ToolkitConfig | None = None,
) -> SpectralIdentities:
    """Σ|λ_i|² = 2e(D) ≤ n², λ₁⁴ ≤ Σλ_i⁴ and Σλ_i⁴ ≤ |λ₁|²·2e(D), with margins."""
    config = config or load_config()
    if summary is None:
        summary = spectrum(graph, full=graph.n <= config.full_spectrum_limit, config=config)
    tol = config.float_tolerance
    n = graph.n
    two_e = summary.sum_lambda2_abs
    square = skew_adjacency(graph).square()
    minus_trace = -int(np.trace(square))

    trace_holds = minus_trace == two_e and two_e <= n * n
    detail = f"-trace(M^2)={minus_trace}, 2e={two_e}, n^2={n * n}"
    if summary.full:
        squares = float(sum(m * m for m in summary.magnitudes))
        trace_holds = trace_holds and math.isclose(squares, two_e, rel_tol=tol, abs_tol=1e-9)
        detail += f", sum|lambda|^2={squares:.9g}"

    lam1_sq = summary.lambda1 ** 2
    lam1_fourth = lam1_sq ** 2
    verdicts = (
        Verdict.check("spectral: sum|lambda|^2 = 2e <= n^2", trace_holds, n * n - two_e, detail),
        Verdict.check(
            "spectral: lambda1^4 <= sum lambda^4",
            float_leq(lam1_fourth, summary.sum_lambda4, tol),
            summary.sum_lambda4 - lam1_fourth,
        ),
        Verdict.check(
            "spectral: sum lambda^4 <= |lambda1|^2 * 2e",
            float_leq(summary.sum_lambda4, lam1_sq * two_e, tol),
            lam1_sq * two_e - summary.sum_lambda4,
        ),
    )
    return SpectralIdentities(verdicts)
