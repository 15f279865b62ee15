from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
import logging
from typing import Callable, Sequence

from .census import FourCycleCensus, SignCensus, cycle_hom_count, four_cycle_census, sign_census
from .config import ToolkitConfig, load_config
from .discrepancy import (
    BiasResult,
    DiscrepancyResult,
    NuLevel,
    PairProfile,
    bias_from_profile,
    max_discrepancy_exact,
    max_discrepancy_heuristic,
    measured_bias_level,
    pair_bias_level,
    pair_profile,
)
from .errors import ConvergenceFailure, IncompleteInputsError, PatternTooLargeError
from .graph import JointDegreeTable, PartiallyOrientedGraph, edge_counts_between, joint_degree_table, underlying
from .homomorphism import hom_count
from .patterns import FOUR_CYCLE_TYPES, NamedPattern, default_patterns
from .spectral import SpectrumSummary, quadruple_sum, spectral_identities_check, spectrum
from .types import Verdict, VerdictStatus
from .utils import float_leq

logger = logging.getLogger(__name__)

MODES = ("auto", "exact", "heuristic")


@dataclass(frozen=True)
class EvaluateOptions:
    discrepancy_mode: str = "auto"
    bias_mode: str = "auto"
    exact_limit: int | None = None
    seed: int = 0
    restarts: int | None = None
    patterns: tuple[NamedPattern, ...] | None = None

    def __post_init__(self) -> None:
        for name in ("discrepancy_mode", "bias_mode"):
            if getattr(self, name) not in MODES:
                raise ValueError(f"{name} must be one of {', '.join(MODES)}")


@dataclass(frozen=True)
class PatternRow:
    name: str
    k: int
    edges: int
    arcs: int
    four_cycle_type: str | None
    hom: int | None
    underlying_hom: int | None
    detail: str = ""

    @property
    def available(self) -> bool:
        return self.hom is not None

    @property
    def fully_oriented(self) -> bool:
        return 0 < self.arcs == self.edges

    @property
    def deviation(self) -> Fraction | None:
        """hom(H, D) - 2^{-ē(H)} hom(H̄, D)."""
        if self.hom is None:
            return None
        return Fraction(self.hom) - Fraction(self.underlying_hom, 2 ** self.arcs)

    def normalized(self, n: int) -> Fraction | None:
        if self.hom is None:
            return None
        return abs(self.deviation) / n ** self.k if n else Fraction(0)


@dataclass(frozen=True)
class QuasiRandomnessReport:
    n: int
    e: int
    e_oriented: int
    census: FourCycleCensus
    sign: SignCensus
    quadruple_sum: int
    spectrum: SpectrumSummary | None
    discrepancy: DiscrepancyResult
    epsilon: Fraction
    epsilon_exact: bool
    root_bias: BiasResult | None
    patterns: tuple[PatternRow, ...]
    verdicts: tuple[Verdict, ...] = ()
    notes: tuple[str, ...] = field(default=())
    profile: PairProfile | None = field(default=None, compare=False, repr=False)

    @property
    def _n4(self) -> int:
        return self.n ** 4

    @property
    def alpha(self) -> Fraction:
        if not self.n:
            return Fraction(0)
        return Fraction(abs(8 * self.census.hom_iv - self.census.hom_c4), 8 * self._n4)

    @property
    def delta(self) -> Fraction:
        return Fraction(self.quadruple_sum, self._n4) if self.n else Fraction(0)

    @property
    def gamma(self) -> Fraction:
        return self.discrepancy.gamma

    @property
    def gamma_exact(self) -> bool:
        return self.discrepancy.exact

    @property
    def zeta(self) -> float | None:
        if self.spectrum is None:
            return None
        return self.spectrum.lambda1 / self.n if self.n else 0.0

    def _max_deviation(self, rows: Sequence[PatternRow]) -> Fraction | None:
        values = [row.normalized(self.n) for row in rows if row.available]
        return max(values, default=None)

    @property
    def beta(self) -> Fraction | None:
        """Largest normalized deviation over the fully oriented patterns."""
        return self._max_deviation([row for row in self.patterns if row.fully_oriented])

    @property
    def eta(self) -> Fraction | None:
        return self._max_deviation(self.patterns)

    def type_shares(self) -> dict[str, Fraction]:
        total = self.census.hom_c4
        counts = dict(zip(FOUR_CYCLE_TYPES, self.census.as_tuple()[:4]))
        return {name: Fraction(count, total) if total else Fraction(0) for name, count in counts.items()}

    @property
    def exit_status(self) -> VerdictStatus:
        if any(v.status is VerdictStatus.FAILED for v in self.verdicts):
            return VerdictStatus.FAILED
        if any(v.status is VerdictStatus.SKIPPED for v in self.verdicts):
            return VerdictStatus.SKIPPED
        return VerdictStatus.PASSED


def verify_structural(
    graph: PartiallyOrientedGraph,
    census: FourCycleCensus | None = None,
    sign: SignCensus | None = None,
    trace_m4: int | None = None,
    *,
    config: ToolkitConfig | None = None,
) -> list[Verdict]:
    """Exact census inequalities and identities, each with its integer margin."""
    census = census or four_cycle_census(graph, config=config)
    sign = sign or sign_census(graph)
    trace_m4 = quadruple_sum(graph) if trace_m4 is None else trace_m4
    i, ii, iii, iv, c4 = census.as_tuple()
    from_census = c4 - 2 * ii

    def at_least(name: str, left: int, right: int) -> Verdict:
        return Verdict.check(name, left >= right, left - right)

    def equal(name: str, values: Sequence[int]) -> Verdict:
        spread = max(values) - min(values)
        return Verdict.check(name, spread == 0, spread, " = ".join(str(v) for v in values))

    return [
        equal("census: hom_C4 = I + II + III + IV", [c4, i + ii + iii + iv]),
        equal("census: both hom_III forms agree", [iii, census.hom_iii_alt]),
        at_least("census: 8 hom_IV >= hom_C4", 8 * iv, c4),
        at_least("census: hom_C4 >= 2 hom_II", c4, 2 * ii),
        at_least("census: 2 hom_IV >= hom_III", 2 * iv, iii),
        at_least("census: hom_III >= 2 hom_I", iii, 2 * i),
        at_least("census: 2 hom_IV + hom_III >= hom_II", 2 * iv + iii, ii),
        at_least("census: hom_IV >= hom_I", iv, i),
        at_least("census: 4 hom_IV >= hom_II", 4 * iv, ii),
        equal("identity: sign census total = hom_C4", [sign.c_total, c4]),
        equal(
            "identity: hom_C4 - 2 hom_II = C+ - C- = trace(M^4)",
            [from_census, sign.signed_total, trace_m4],
        ),
        at_least("identity: quadruple sum >= 0", trace_m4, 0),
    ]


def _pattern_rows(
    graph: PartiallyOrientedGraph,
    patterns: Sequence[NamedPattern],
    census: FourCycleCensus,
    table: JointDegreeTable,
    config: ToolkitConfig,
) -> tuple[PatternRow, ...]:
    underlying_counts: dict[PartiallyOrientedGraph, int] = {}
    rows = []
    for pattern in patterns:
        arcs = pattern.graph.e_oriented
        if pattern.family == "c4" and pattern.states:
            rows.append(PatternRow(
                pattern.name, 4, pattern.graph.e, arcs, pattern.four_cycle_type,
                cycle_hom_count(pattern.states, table), census.hom_c4,
            ))
            continue
        try:
            count = hom_count(pattern.graph, graph, config=config, budget=config.analysis_state_budget)
            shape = underlying(pattern.graph)
            if shape not in underlying_counts:
                underlying_counts[shape] = hom_count(
                    shape, graph, config=config, budget=config.analysis_state_budget
                )
            rows.append(PatternRow(
                pattern.name, pattern.k, pattern.graph.e, arcs, pattern.four_cycle_type, count, underlying_counts[shape]
            ))
        except PatternTooLargeError as exc:
            logger.warning("Pattern %s unavailable: %s", pattern.name, exc)
            rows.append(PatternRow(
                pattern.name, pattern.k, pattern.graph.e, arcs, pattern.four_cycle_type, None, None, str(exc)
            ))
    return tuple(rows)


def _run_all(tasks: dict[str, Callable[[], object]], workers: int) -> dict[str, object]:
    if workers <= 1:
        return {name: task() for name, task in tasks.items()}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {name: executor.submit(task) for name, task in tasks.items()}
        return {name: future.result() for name, future in futures.items()}


def measure(
    graph: PartiallyOrientedGraph,
    options: EvaluateOptions | None = None,
    *,
    config: ToolkitConfig | None = None,
) -> QuasiRandomnessReport:
    """All parameters, without verdicts. Infeasible exact modes degrade to heuristics under "auto"."""
    graph.require_oriented("evaluate")
    options = options or EvaluateOptions()
    config = config or load_config()
    if options.exact_limit is not None:
        config = replace(config, exact_discrepancy_limit=options.exact_limit)
    n = graph.n
    notes: list[str] = []

    exact_disc = options.discrepancy_mode == "exact" or (
        options.discrepancy_mode == "auto" and n <= config.exact_discrepancy_limit
    )
    exact_bias = options.bias_mode == "exact" or (
        options.bias_mode == "auto" and n <= config.exact_bias_limit
    )
    if not exact_disc:
        logger.warning("Discrepancy for n=%s is a heuristic lower bound", n)
        notes.append("gamma is a heuristic lower bound")
    if not exact_bias:
        logger.warning("Bias level for n=%s is a heuristic lower bound", n)
        notes.append("epsilon is a heuristic lower bound")

    def discrepancy() -> DiscrepancyResult:
        if exact_disc:
            return max_discrepancy_exact(graph, config=config)
        return max_discrepancy_heuristic(graph, options.restarts, options.seed, config=config)

    def spectral() -> SpectrumSummary | None:
        try:
            return spectrum(graph, full=n <= config.full_spectrum_limit, config=config)
        except ConvergenceFailure as exc:
            logger.warning("Spectrum unavailable: %s", exc)
            return None

    tasks: dict[str, Callable[[], object]] = {
        "table": lambda: joint_degree_table(graph, config=config),
        "sign": lambda: sign_census(graph),
        "quadruple_sum": lambda: quadruple_sum(graph),
        "spectrum": spectral,
        "discrepancy": discrepancy,
    }
    if exact_bias:
        tasks["profile"] = lambda: pair_profile(graph, config=config)
    results = _run_all(tasks, config.workers)

    table: JointDegreeTable = results["table"]
    census = four_cycle_census(graph, table)
    disc: DiscrepancyResult = results["discrepancy"]
    profile: PairProfile | None = results.get("profile")
    if results["spectrum"] is None:
        notes.append("zeta unavailable: power iteration did not converge")

    root_bias = None
    if profile is not None:
        epsilon = measured_bias_level(profile)
        if disc.exact:
            root_bias = bias_from_profile(profile, NuLevel.one_minus_sqrt(disc.gamma))
    else:
        counts = edge_counts_between(graph, disc.witness)
        epsilon = pair_bias_level(n, counts.forward, counts.backward)

    rows = _pattern_rows(graph, options.patterns or default_patterns(), census, table, config)
    missing = [row.name for row in rows if not row.available]
    if missing:
        notes.append(f"{len(missing)} pattern counts unavailable at this size")

    report = QuasiRandomnessReport(
        n=n,
        e=graph.e,
        e_oriented=graph.e_oriented,
        census=census,
        sign=results["sign"],
        quadruple_sum=results["quadruple_sum"],
        spectrum=results["spectrum"],
        discrepancy=disc,
        epsilon=epsilon,
        epsilon_exact=profile is not None,
        root_bias=root_bias,
        patterns=rows,
        notes=tuple(notes),
        profile=profile,
    )
    logger.info(
        "Measured n=%s alpha=%s delta=%s gamma=%s (exact=%s)", n, report.alpha, report.delta, report.gamma, disc.exact
    )
    return report


def _skip(name: str, reason: str) -> Verdict:
    return Verdict.skipped(name, reason)


def verify_implications(
    graph: PartiallyOrientedGraph,
    patterns: Sequence[NamedPattern] | None = None,
    *,
    report: QuasiRandomnessReport | None = None,
    options: EvaluateOptions | None = None,
    strict: bool = False,
    config: ToolkitConfig | None = None,
) -> list[Verdict]:
    """Check each implication between measured parameters.

    Checks that rest on γ are skipped when γ is only a heuristic lower bound;
    with ``strict`` any skipped check raises IncompleteInputsError instead.
    """
    config = config or load_config()
    if report is None:
        options = options or EvaluateOptions()
        if patterns is not None:
            options = replace(options, patterns=tuple(patterns))
        report = measure(graph, options, config=config)
    n = report.n
    n4 = n ** 4
    gamma, delta, alpha = report.gamma, report.delta, report.alpha
    no_gamma = "exact discrepancy unavailable at this size"
    verdicts: list[Verdict] = [
        Verdict.check("implication: delta <= 8 alpha", delta <= 8 * alpha, 8 * alpha - delta),
    ]

    if report.gamma_exact:
        verdicts.append(Verdict.check("implication: gamma^4 <= delta", gamma ** 4 <= delta, delta - gamma ** 4))
    else:
        verdicts.append(_skip("implication: gamma^4 <= delta", no_gamma))

    for row in report.patterns:
        name = f"implication: deviation <= (1 - 2^-arcs) gamma [{row.name}]"
        if not row.available:
            verdicts.append(_skip(name, row.detail or "pattern count unavailable"))
        elif not report.gamma_exact:
            verdicts.append(_skip(name, no_gamma))
        else:
            bound = (1 - Fraction(1, 2 ** row.arcs)) * gamma
            value = row.normalized(n)
            verdicts.append(Verdict.check(name, value <= bound, bound - value))

    beta, eta = report.beta, report.eta
    if beta is None or eta is None:
        verdicts.append(_skip("implication: beta <= eta", "no pattern counts available"))
    else:
        verdicts.append(Verdict.check("implication: beta <= eta", beta <= eta, eta - beta))

    type_iv = [row for row in report.patterns if row.four_cycle_type == "IV" and row.available]
    if len(type_iv) == 2:
        total = sum(abs(row.deviation) for row in type_iv) / n4 if n else Fraction(0)
        verdicts.append(Verdict.check(
            "implication: alpha <= (|dev IVa| + |dev IVb|) / n^4", alpha <= total, total - alpha
        ))
        beta_iv = max(row.normalized(n) for row in type_iv)
        verdicts.append(Verdict.check("implication: alpha <= 2 beta_IV", alpha <= 2 * beta_iv, 2 * beta_iv - alpha))
    else:
        reason = "type IV counts not available"
        verdicts.append(_skip("implication: alpha <= (|dev IVa| + |dev IVb|) / n^4", reason))
        verdicts.append(_skip("implication: alpha <= 2 beta_IV", reason))

    root_name = "implication: bias_{1-sqrt(gamma)}^2 <= gamma n^4"
    if report.root_bias is not None:
        left, right = report.root_bias.value ** 2, gamma * n4
        verdicts.append(Verdict.check(root_name, left <= right, right - left))
    else:
        verdicts.append(_skip(root_name, "needs exact discrepancy and exact bias"))

    pair_name = "implication: e(B,A) >= e(A,B)/2 - (gamma/2) n^2 for every pair"
    if report.profile is None:
        verdicts.append(_skip(pair_name, "exact pair profile unavailable at this size"))
    elif not report.gamma_exact:
        verdicts.append(_skip(pair_name, no_gamma))
    else:
        slack = gamma * n * n / 2
        margin = min(
            (Fraction(r) - Fraction(f + r, 2) + slack for f, r in report.profile.witnesses),
            default=slack,
        )
        verdicts.append(Verdict.check(pair_name, margin >= 0, margin))

    if report.epsilon_exact:
        eps = report.epsilon
        verdicts.append(Verdict.check("implication: gamma <= epsilon", gamma <= eps, eps - gamma))
    else:
        verdicts.append(_skip("implication: gamma <= epsilon", "exact bias level unavailable at this size"))

    zeta = report.zeta
    tol = config.float_tolerance
    if zeta is None:
        verdicts.append(_skip("implication: zeta^4 <= delta", "spectrum unavailable"))
        verdicts.append(_skip("implication: delta <= zeta^2", "spectrum unavailable"))
    else:
        d = float(delta)
        verdicts.append(Verdict.check("implication: zeta^4 <= delta", float_leq(zeta ** 4, d, tol), d - zeta ** 4))
        verdicts.append(Verdict.check("implication: delta <= zeta^2", float_leq(d, zeta ** 2, tol), zeta ** 2 - d))
        verdicts.extend(spectral_identities_check(graph, report.spectrum, config=config).verdicts)

    skipped = [v.name for v in verdicts if v.status is VerdictStatus.SKIPPED]
    if skipped:
        logger.warning("%s implication checks skipped", len(skipped))
        if strict:
            raise IncompleteInputsError(f"inputs incomplete for: {', '.join(skipped)}")
    return verdicts


def evaluate(
    graph: PartiallyOrientedGraph,
    options: EvaluateOptions | None = None,
    *,
    config: ToolkitConfig | None = None,
) -> QuasiRandomnessReport:
    config = config or load_config()
    report = measure(graph, options, config=config)
    verdicts = verify_structural(
        graph, report.census, report.sign, report.quadruple_sum, config=config
    ) + verify_implications(graph, report=report, config=config)
    failed = sum(1 for v in verdicts if v.status is VerdictStatus.FAILED)
    if failed:
        logger.warning("%s of %s verdicts failed", failed, len(verdicts))
    return replace(report, verdicts=tuple(verdicts))
