"""
Cycle decompositions of connected Eulerian partial 3-trees into at most
floor((n-1)/2) cycles.
"""

import logging
from typing import Optional

from edgedecomp.errors import BoundViolated, NotConnected, NotEulerian, NotPartialThreeTree, UnreachableCase
from edgedecomp.graph import (
    Decomposition,
    Graph,
    bridges_and_blocks,
    cycle_from_edges,
    cycle_through_pair,
    hajos_bound,
    verify_decomposition,
)
from edgedecomp.ktree import embed_partial_3tree, terminals
from edgedecomp.reduce import ReducingSubgraph, apply_cycle_reducing
from edgedecomp.telemetry import ReductionStep, StepTrace, log_custom_event

logger = logging.getLogger(__name__)


def block_bound_total(blocks: list[Graph]) -> int:
    """Sum of floor((n_i - 1)/2) over the blocks."""
    return sum(hajos_bound(b) for b in blocks)


class _CycleSolver:

    def __init__(self, trace: StepTrace):
        self.trace = trace

    def solve(self, g: Graph) -> Decomposition:
        if g.m == 0:
            return Decomposition(())
        _, blocks = bridges_and_blocks(g)
        if len(blocks) > 1:
            if block_bound_total(blocks) > hajos_bound(g):
                raise BoundViolated(f"block bounds sum to {block_bound_total(blocks)} > {hajos_bound(g)}")
            self.trace.record(ReductionStep.BLOCK_SPLIT, str(len(blocks)))
            elements = []
            for block in blocks:
                elements.extend(self._block(block).elements)
            return Decomposition(tuple(elements))
        return self._block(g)

    def _block(self, g: Graph) -> Decomposition:
        if g.max_degree() == 2:
            cycle = cycle_from_edges(g.edges())
            if cycle is None:
                raise UnreachableCase("2-regular block is not a cycle", {"edges": [list(e) for e in g.edges()]})
            self.trace.record(ReductionStep.SMALL_CASE)
            return Decomposition((cycle,))

        u, v = self._pick_pair(g)
        cycle = cycle_through_pair(g, u, v)
        rs = ReducingSubgraph.build(g, cycle.edges(), 1, Decomposition((cycle,)))
        self.trace.record(ReductionStep.REDUCING_CYCLE, f"{u}-{v}")
        return apply_cycle_reducing(g, rs, self.solve)

    @staticmethod
    def _pick_pair(g: Graph) -> tuple[int, int]:
        tree = embed_partial_3tree(g)
        if tree is None:
            raise NotPartialThreeTree(f"block on {g.order} vertices has treewidth above 3")
        chosen = [t for t in terminals(tree) if g.degree(t) == 2]
        if len(chosen) < 2:
            logger.debug("fewer than two degree-2 terminals, using any degree-2 vertices")
            chosen = [w for w in g.vertices() if g.degree(w) == 2]
        if len(chosen) < 2:
            raise UnreachableCase("block has fewer than two degree-2 vertices",
                                  {"n": g.n, "edges": [list(e) for e in g.edges()]})
        return chosen[0], chosen[1]


def decompose_cycles_tw3(g: Graph, trace: Optional[StepTrace] = None) -> Decomposition:
    """
    Decompose a connected Eulerian partial 3-tree into cycles.

    Args:
        g: Connected graph, all degrees even, treewidth at most 3
        trace: Collects the reduction steps when given

    Returns:
        Decomposition: All cycles, at most floor((n-1)/2) of them
    """
    if not g.is_connected():
        raise NotConnected("graph must be connected")
    if not g.is_even():
        raise NotEulerian(f"vertex {g.odd_vertices()[0]} has odd degree")
    if g.order >= 3 and embed_partial_3tree(g) is None:
        raise NotPartialThreeTree(f"graph on {g.order} vertices has treewidth above 3")
    trace = trace if trace is not None else StepTrace()
    d = _CycleSolver(trace).solve(g)
    verdict = verify_decomposition(g, d)
    if not verdict or len(d) > hajos_bound(g):
        raise UnreachableCase(f"cycle output failed: {verdict.reason or 'bound'}",
                              {"n": g.n, "edges": [list(e) for e in g.edges()]})
    log_custom_event("decomposition_completed", {"driver": "tw3", "kind": "cycles"},
                     {"n": g.order, "size": len(d), "bound": hajos_bound(g), "steps": len(trace)})
    return d
