"""
Path decompositions of connected planar graphs with girth at least 6.

Planarity is taken on trust. What the construction actually uses from it
is that every level of the recursion has vertices of degree at most 2;
that is checked, and a failure raises StructuralAssumptionViolated.
"""

import logging
from typing import Optional

from edgedecomp.errors import (
    GirthTooSmall,
    NotConnected,
    ReducingSubgraphInvalid,
    StructuralAssumptionViolated,
    UnreachableCase,
)
from edgedecomp.graph import (
    Decomposition,
    Graph,
    VertexPath,
    edge,
    gallai_bound,
    girth,
    shortest_path,
    verify_decomposition,
)
from edgedecomp.reduce import Paths, ReducingSubgraph, apply_path_reducing
from edgedecomp.telemetry import ReductionStep, StepTrace, log_custom_event

logger = logging.getLogger(__name__)

MIN_GIRTH = 6


def low_degree_vertices(g: Graph) -> list[int]:
    return [v for v in g.vertices() if g.degree(v) <= 2]


def _closest_pair(g: Graph, low: list[int]) -> list[int]:
    """Shortest path between two low-degree vertices, ties by (u, v)."""
    best: Optional[list[int]] = None
    for i, u in enumerate(low):
        for v in low[i + 1:]:
            walk = shortest_path(g, [u], [v])
            if walk is not None and (best is None or len(walk) < len(best)):
                best = walk
    if best is None:
        raise StructuralAssumptionViolated("low-degree vertices lie in different components")
    return best


def reducing_path(g: Graph) -> VertexPath:
    """
    The shortest path between two vertices of degree at most 2, extended by
    the remaining edge at each end, so that both ends become isolated.
    """
    low = low_degree_vertices(g)
    needed = 3 if g.order > 2 else 2
    if len(low) < needed:
        raise StructuralAssumptionViolated(f"only {len(low)} vertices of degree at most 2 on {g.order} vertices")
    walk = _closest_pair(g, low)
    used = {edge(walk[k], walk[k + 1]) for k in range(len(walk) - 1)}
    u, v = walk[0], walk[-1]
    head = [w for w in g.neighbors(u) if edge(u, w) not in used]
    tail = [w for w in g.neighbors(v) if edge(v, w) not in used]
    walk = head + walk + tail
    if len(set(walk)) != len(walk):
        raise StructuralAssumptionViolated(f"extended walk {walk} is not a path")
    return VertexPath(tuple(walk))


class _Planar6Solver:

    def __init__(self, trace: StepTrace):
        self.trace = trace

    def solve(self, g: Graph) -> Decomposition:
        if g.m == 0:
            return Decomposition(())
        p = reducing_path(g)
        try:
            rs = ReducingSubgraph.build(g, p.edges(), 1, Decomposition((p,)))
        except ReducingSubgraphInvalid as exc:
            raise StructuralAssumptionViolated(f"path {p.vertices} does not isolate its ends: {exc}") from exc
        self.trace.record(ReductionStep.LOW_DEGREE_PATH, f"{p.vertices[0]}-{p.vertices[-1]}")
        return apply_path_reducing(g, rs, lambda comp: Paths(self.solve(comp)))


def decompose_paths_planar6(g: Graph, trace: Optional[StepTrace] = None) -> Decomposition:
    """
    Decompose a connected planar graph of girth at least 6 into at most floor(n/2) paths.

    Args:
        g: Connected graph; planarity is the caller's promise
        trace: Collects the reduction steps when given

    Returns:
        Decomposition: Verified paths

    Raises:
        GirthTooSmall: A cycle shorter than 6
        StructuralAssumptionViolated: The graph was not planar after all
    """
    if not g.is_connected():
        raise NotConnected("graph must be connected")
    g_girth = girth(g)
    if g_girth < MIN_GIRTH:
        raise GirthTooSmall(f"girth {g_girth} is below {MIN_GIRTH}")
    trace = trace if trace is not None else StepTrace()
    d = _Planar6Solver(trace).solve(g)
    verdict = verify_decomposition(g, d)
    if not verdict or len(d) > gallai_bound(g):
        raise UnreachableCase(f"path output failed: {verdict.reason or 'bound'}",
                              {"n": g.n, "edges": [list(e) for e in g.edges()]})
    log_custom_event("decomposition_completed", {"driver": "planar6", "kind": "paths"},
                     {"n": g.order, "size": len(d), "bound": gallai_bound(g), "steps": len(trace)})
    return d
