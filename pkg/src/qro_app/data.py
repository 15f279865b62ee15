from __future__ import annotations

from pathlib import Path
import logging

from .errors import (
    DuplicateEdgeError,
    ParseError,
    SelfLoopError,
    VertexOutOfRangeError,
)
from .graph import PartiallyOrientedGraph, canonical_edge
from .types import Edge

logger = logging.getLogger(__name__)

POAG_HEADER = "poag 1"
POAG_SUFFIX = ".poag"


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_int(token: str, number: int) -> int:
    try:
        value = int(token)
    except ValueError as exc:
        raise ParseError(f"expected an integer, got {token!r}", line=number) from exc
    if value < 0:
        raise ParseError(f"expected a non-negative integer, got {value}", line=number)
    return value


def load(text: bytes | str) -> PartiallyOrientedGraph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from exc

    lines = _content_lines(text)
    header = next(lines, None)
    if header is None or header[1].split() != POAG_HEADER.split():
        raise ParseError(
            f"expected header {POAG_HEADER!r}", line=header[0] if header else None
        )

    count_line = next(lines, None)
    if count_line is None:
        raise ParseError("missing vertex count line 'n <N>'")
    number, line = count_line
    tokens = line.split()
    if len(tokens) != 2 or tokens[0] != "n":
        raise ParseError(f"expected 'n <N>', got {line!r}", line=number)
    n = _parse_int(tokens[1], number)

    records: list[Edge] = []
    seen: dict[tuple[int, int], int] = {}
    for number, line in lines:
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] not in {"a", "u"}:
            raise ParseError(f"expected 'a <u> <v>' or 'u <x> <y>', got {line!r}", line=number)
        x, y = _parse_int(tokens[1], number), _parse_int(tokens[2], number)
        if x == y:
            raise SelfLoopError(f"self-loop at vertex {x}", line=number)
        if x >= n or y >= n:
            raise VertexOutOfRangeError(
                f"vertex {max(x, y)} outside range 0..{n - 1}", line=number
            )
        key = (min(x, y), max(x, y))
        if key in seen:
            raise DuplicateEdgeError(
                f"edge {{{key[0]}, {key[1]}}} already given on line {seen[key]}", line=number
            )
        seen[key] = number
        records.append(canonical_edge(x, y, oriented=tokens[0] == "a"))

    graph = PartiallyOrientedGraph(n=n, edges=tuple(records))
    logger.debug("Parsed poag graph n=%s e=%s arcs=%s", graph.n, graph.e, graph.e_oriented)
    return graph


def save(graph: PartiallyOrientedGraph) -> str:
    """Serialize in canonical edge order; ``load(save(D)) == D``."""
    lines = [POAG_HEADER, f"n {graph.n}"]
    for edge in graph.edges:
        arc = edge.arc()
        if arc is None:
            lines.append(f"u {edge.u} {edge.v}")
        else:
            lines.append(f"a {arc[0]} {arc[1]}")
    return "\n".join(lines) + "\n"


def read_graph(path: Path) -> PartiallyOrientedGraph:
    path = Path(path)
    logger.debug("Loading graph from %s", path)
    return load(path.read_bytes())


def write_graph(graph: PartiallyOrientedGraph, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(save(graph).encode("utf-8"))
    logger.debug("Wrote graph n=%s e=%s to %s", graph.n, graph.e, path)
    return path


def read_pattern_dir(directory: Path) -> list[tuple[str, PartiallyOrientedGraph]]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"pattern directory not found: {directory}")
    patterns = [(path.stem, read_graph(path)) for path in sorted(directory.glob(f"*{POAG_SUFFIX}"))]
    logger.info("Loaded %s patterns from %s", len(patterns), directory)
    return patterns
