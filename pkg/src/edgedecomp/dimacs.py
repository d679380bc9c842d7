"""
Graph files and decomposition reports.

Graph files: a ``p edge <n> <m>`` line, then ``m`` lines ``e <u> <v>`` with
1-based vertex ids. Lines starting with ``#`` and blank lines are ignored.

Reports are JSON objects; every element is a list of 1-based vertex ids
and cycles repeat their first vertex at the end.
"""

import json
import logging
from pathlib import Path
from typing import Iterable, Optional, Union

from edgedecomp.errors import GraphFormatError, InvalidGraph
from edgedecomp.graph import Decomposition, Graph, VertexCycle, VertexPath

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# ============================================================================
# LINE VALIDATION
# ============================================================================

def parse_problem_line(fields: list[str]) -> tuple:
    """
    Validate a ``p edge n m`` line.

    Returns:
        tuple: ((n, m), error_message) - error_message is None if successful
    """
    if len(fields) != 4 or fields[1] != "edge":
        return None, "Expected 'p edge <n> <m>'"
    try:
        n, m = int(fields[2]), int(fields[3])
    except ValueError:
        return None, "Vertex and edge counts must be integers"
    if n < 0 or m < 0:
        return None, "Vertex and edge counts must be non-negative"
    return (n, m), None


def parse_edge_line(fields: list[str], n: int) -> tuple:
    """
    Validate an ``e u v`` line against ``n`` vertices.

    Returns:
        tuple: ((u, v) 0-based, error_message) - error_message is None if successful
    """
    if len(fields) != 3:
        return None, "Expected 'e <u> <v>'"
    try:
        u, v = int(fields[1]), int(fields[2])
    except ValueError:
        return None, "Edge endpoints must be integers"
    if not (1 <= u <= n and 1 <= v <= n):
        return None, f"Edge endpoint out of range 1..{n}"
    return (u - 1, v - 1), None


# ============================================================================
# GRAPHS
# ============================================================================

def parse_graph(text: str) -> Graph:
    """
    Parse a graph from file contents.

    Raises:
        GraphFormatError: Bad header, bad edge line, wrong edge count, loop or duplicate
    """
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if header is not None:
                raise GraphFormatError("second problem line", line_no)
            header, error = parse_problem_line(fields)
            if error:
                raise GraphFormatError(error, line_no)
        elif fields[0] == "e":
            if header is None:
                raise GraphFormatError("edge before the problem line", line_no)
            pair, error = parse_edge_line(fields, header[0])
            if error:
                raise GraphFormatError(error, line_no)
            edges.append(pair)
        else:
            raise GraphFormatError(f"unknown line type '{fields[0]}'", line_no)
    if header is None:
        raise GraphFormatError("missing problem line")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except InvalidGraph as exc:
        raise GraphFormatError(str(exc)) from exc


def read_graph(path: PathLike) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    g = parse_graph(text)
    logger.debug(f"read {path}: n={g.n}, m={g.m}")
    return g


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: PathLike, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))


# ============================================================================
# DECOMPOSITION REPORTS
# ============================================================================

def element_to_ids(element: Union[VertexPath, VertexCycle]) -> list[int]:
    ids = [v + 1 for v in element.vertices]
    if isinstance(element, VertexCycle):
        ids.append(ids[0])
    return ids


def element_from_ids(ids: list) -> Union[VertexPath, VertexCycle]:
    if not isinstance(ids, list) or not ids or any(not isinstance(v, int) or isinstance(v, bool) or v < 1 for v in ids):
        raise GraphFormatError(f"element {ids} must list positive vertex ids")
    vs = tuple(v - 1 for v in ids)
    if len(vs) >= 4 and vs[0] == vs[-1]:
        return VertexCycle(vs[:-1])
    return VertexPath(vs)


def decomposition_report(g: Graph, d: Decomposition, bound: int, steps: list[str],
                         verified: bool, extra: Optional[dict] = None) -> dict:
    report = {
        "kind": d.kind,
        "n": g.n,
        "bound": bound,
        "size": len(d),
        "elements": [element_to_ids(el) for el in d.elements],
        "steps": list(steps),
        "verified": verified,
    }
    if extra:
        report.update(extra)
    return report


def parse_decomposition(text: str) -> Decomposition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    elements = data.get("elements") if isinstance(data, dict) else None
    if not isinstance(elements, list):
        raise GraphFormatError("report has no 'elements' list")
    return Decomposition(tuple(element_from_ids(el) for el in elements))


def read_decomposition(path: PathLike) -> Decomposition:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    return parse_decomposition(text)
