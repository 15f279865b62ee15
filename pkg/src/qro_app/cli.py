from __future__ import annotations

import argparse
import logging
import os
from pathlib import Path
import sys

from .census import four_cycle_census, sign_census
from .certify import EvaluateOptions, evaluate
from .config import ToolkitConfig, load_config
from .data import read_graph, read_pattern_dir, write_graph
from .discrepancy import BiasResult, NuLevel, bias, max_discrepancy_exact, max_discrepancy_heuristic
from .errors import (
    ConfigError,
    ConvergenceFailure,
    CountOverflowError,
    GraphFormatError,
    IncompleteInputsError,
    NotFullyOrientedError,
    PatternTooLargeError,
    TooLargeForExactError,
)
from .generators import MODELS, GeneratorSpec, generate
from .graph import joint_degree_table, underlying
from .homomorphism import hom_count, hom_deviation
from .patterns import file_pattern, with_defaults
from .report import (
    BiasModel,
    CensusModel,
    DiscrepancyModel,
    HomModel,
    RationalModel,
    SpectrumModel,
    build_report_model,
    render_census,
    render_report,
    render_verdicts,
    to_json,
)
from .spectral import quadruple_sum, spectrum
from .types import VerdictStatus
from .utils import parse_rational

logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = "WARNING"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_INCOMPLETE = 3

_STATUS_EXIT = {
    VerdictStatus.PASSED: EXIT_OK,
    VerdictStatus.FAILED: EXIT_FAILED,
    VerdictStatus.SKIPPED: EXIT_INCOMPLETE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def configure_logging() -> Path | None:
    """Log to stderr (and optionally a file) so stdout stays machine-readable."""
    log_path = os.getenv("QRO_LOG_FILE", "").strip()
    log_level = os.getenv("QRO_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    log_to_console = os.getenv("QRO_LOG_TO_CONSOLE", "true").strip().lower()
    enable_console = log_to_console not in {"0", "false", "no", "off"}

    handlers: list[logging.Handler] = []
    log_file = None
    if log_path:
        log_file = Path(log_path).expanduser().resolve()
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    if enable_console:
        handlers.append(logging.StreamHandler(sys.stderr))
    if not handlers:
        handlers.append(logging.NullHandler())

    logging.basicConfig(
        level=getattr(logging, log_level, logging.WARNING),
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        handlers=handlers,
        force=True,
    )
    logging.getLogger(__name__).info("Logging initialized (level=%s, file=%s)", log_level, log_file)
    return log_file


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _options(args: argparse.Namespace) -> EvaluateOptions:
    patterns = None
    if args.patterns:
        patterns = with_defaults(file_pattern(name, graph) for name, graph in read_pattern_dir(args.patterns))
    return EvaluateOptions(
        exact_limit=args.exact_limit,
        seed=args.seed,
        restarts=args.restarts,
        patterns=patterns,
    )


def _mode(args: argparse.Namespace) -> str:
    if args.exact:
        return "exact"
    if args.heuristic:
        return "heuristic"
    return "auto"


def cmd_analyze(args: argparse.Namespace, config: ToolkitConfig) -> int:
    report = evaluate(read_graph(args.file), _options(args), config=config)
    if args.json:
        _emit(to_json(build_report_model(report, config.float_tolerance)))
    else:
        _emit(render_report(report))
    return _STATUS_EXIT[report.exit_status]


def cmd_verify(args: argparse.Namespace, config: ToolkitConfig) -> int:
    report = evaluate(read_graph(args.file), _options(args), config=config)
    if args.json:
        model = build_report_model(report, config.float_tolerance)
        _emit(to_json(model.model_copy(update={"patterns": []})))
    else:
        _emit(render_verdicts(report.verdicts))
    return _STATUS_EXIT[report.exit_status]


def cmd_census(args: argparse.Namespace, config: ToolkitConfig) -> int:
    graph = read_graph(args.file)
    table = joint_degree_table(graph, allow_large=args.allow_large, config=config)
    census = four_cycle_census(graph, table)
    if args.json:
        _emit(to_json(CensusModel.build(census, sign_census(graph), quadruple_sum(graph))))
    else:
        _emit(render_census(census))
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace, config: ToolkitConfig) -> int:
    summary = spectrum(read_graph(args.file), full=args.full, config=config)
    if args.json:
        _emit(to_json(SpectrumModel.build(summary, config.float_tolerance)))
    else:
        magnitudes = " ".join(f"{m:.9g}" for m in summary.magnitudes)
        kind = "all |lambda|" if summary.full else "|lambda1|"
        _emit(
            f"{kind}: {magnitudes}\n"
            f"sum lambda^4 = {summary.sum_lambda4}\n"
            f"sum |lambda|^2 = {summary.sum_lambda2_abs}\n"
        )
    return EXIT_OK


def cmd_disc(args: argparse.Namespace, config: ToolkitConfig) -> int:
    graph = read_graph(args.file)
    mode = _mode(args)
    if mode == "auto":
        mode = "exact" if graph.n <= config.exact_discrepancy_limit else "heuristic"
    if mode == "exact":
        result = max_discrepancy_exact(graph, config=config)
    else:
        result = max_discrepancy_heuristic(graph, args.restarts, args.seed, config=config)
    if args.json:
        _emit(to_json(DiscrepancyModel.build(result)))
    else:
        label = "exact" if result.exact else "heuristic lower bound"
        _emit(
            f"discrepancy {result.value} ({label}), gamma = {result.gamma}\n"
            f"A = {list(result.witness.A)}\nB = {list(result.witness.B)}\n"
        )
    return EXIT_OK


def _render_bias(result: BiasResult) -> str:
    label = "exact" if result.exact else "heuristic lower bound"
    return (
        f"bias_{result.nu} = {result.value} ({label})\n"
        f"A = {list(result.witness.A)}\nB = {list(result.witness.B)}\n"
    )


def cmd_bias(args: argparse.Namespace, config: ToolkitConfig) -> int:
    try:
        level = NuLevel(parse_rational(args.nu))
    except ValueError as exc:
        raise UsageError(f"--nu: {exc}") from exc
    graph = read_graph(args.file)
    mode = _mode(args)
    if mode == "auto":
        mode = "exact" if graph.n <= config.exact_bias_limit else "heuristic"
    result = bias(graph, level, mode, args.seed, restarts=args.restarts, config=config)
    _emit(to_json(BiasModel.build(result)) if args.json else _render_bias(result))
    return EXIT_OK


def cmd_hom(args: argparse.Namespace, config: ToolkitConfig) -> int:
    pattern = read_graph(args.pattern)
    target = read_graph(args.target)
    count = hom_count(pattern, target, config=config)
    underlying_count = count if pattern.is_unoriented else hom_count(underlying(pattern), target, config=config)
    deviation = hom_deviation(pattern, target, config=config, underlying_count=underlying_count)
    if args.json:
        model = HomModel(
            pattern=str(args.pattern),
            target=str(args.target),
            hom=str(count),
            underlying_hom=str(underlying_count),
            deviation=RationalModel.from_fraction(deviation),
        )
        _emit(to_json(model))
    else:
        _emit(f"hom = {count}\nhom(underlying) = {underlying_count}\ndeviation = {deviation}\n")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, config: ToolkitConfig) -> int:
    try:
        p = parse_rational(args.p) if args.p is not None else None
        spec = GeneratorSpec(model=args.model, seed=args.seed, n=args.n, p=p, base=args.base, m=args.m)
        graph = generate(spec)
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    path = write_graph(graph, args.output)
    logger.info("Wrote %s", path)
    return EXIT_OK


def _add_file(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="graph in poag v1 format")
    parser.add_argument("--json", action="store_true", help="machine-readable output")


def _add_search(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true")
    group.add_argument("--heuristic", action="store_true")
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)


def _add_evaluate(parser: argparse.ArgumentParser) -> None:
    _add_file(parser)
    parser.add_argument("--patterns", type=Path, default=None, help="directory of *.poag patterns")
    parser.add_argument("--exact-limit", type=int, default=None, help="largest n for exact discrepancy")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qro-app", description="Quasi-randomness certificates for oriented graphs")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", help="evaluate every parameter and verdict")
    _add_evaluate(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    verify = subparsers.add_parser("verify", help="structural and implication verdicts only")
    _add_evaluate(verify)
    verify.set_defaults(handler=cmd_verify)

    census = subparsers.add_parser("census", help="four-cycle census")
    _add_file(census)
    census.add_argument("--allow-large", action="store_true", help="lift the dense table size cap")
    census.set_defaults(handler=cmd_census)

    spectral = subparsers.add_parser("spectrum", help="skew adjacency spectrum")
    _add_file(spectral)
    spectral.add_argument("--full", action="store_true", help="all eigenvalue magnitudes")
    spectral.set_defaults(handler=cmd_spectrum)

    disc = subparsers.add_parser("disc", help="maximum directed discrepancy")
    _add_file(disc)
    _add_search(disc)
    disc.set_defaults(handler=cmd_disc)

    bias_parser = subparsers.add_parser("bias", help="bias at level nu")
    _add_file(bias_parser)
    bias_parser.add_argument("--nu", required=True, help='level as "p/q" or a decimal')
    _add_search(bias_parser)
    bias_parser.set_defaults(handler=cmd_bias)

    hom = subparsers.add_parser("hom", help="homomorphism count and deviation")
    hom.add_argument("--pattern", type=Path, required=True)
    hom.add_argument("--target", type=Path, required=True)
    hom.add_argument("--json", action="store_true")
    hom.set_defaults(handler=cmd_hom)

    gen = subparsers.add_parser("gen", help="generate a seeded instance")
    gen.add_argument("--model", choices=MODELS, required=True)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--p", default=None, help='edge probability as "p/q" or a decimal')
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--base", type=Path, default=None)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("-o", "--output", type=Path, required=True)
    gen.set_defaults(handler=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    configure_logging()
    try:
        args = build_parser().parse_args(argv)
        config = load_config()
        return args.handler(args, config)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, NotFullyOrientedError, ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        TooLargeForExactError,
        PatternTooLargeError,
        ConvergenceFailure,
        IncompleteInputsError,
        CountOverflowError,
    ) as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE


if __name__ == "__main__":
    raise SystemExit(main())
