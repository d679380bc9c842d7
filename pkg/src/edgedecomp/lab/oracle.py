"""
Exact path and cycle numbers by branch and bound.

The search always covers the lowest remaining edge: every decomposition
has an element through it, so branching over all paths (cycles) through
that edge, longest first, is complete. States are remaining-edge bitsets;
a state that failed with budget k is remembered and never retried with
budget <= k. Iterative deepening starts at the lower bound.
"""

import logging
import math
from typing import Iterator, Optional

from edgedecomp.config import OracleCaps
from edgedecomp.errors import CapExceeded, NotEvenGraph
from edgedecomp.graph import Decomposition, Graph, VertexCycle, VertexPath, edge
from edgedecomp.telemetry import log_custom_event

logger = logging.getLogger(__name__)


def lower_bound_paths(g: Graph) -> int:
    """Sum over components of max(1, odd/2)."""
    total = 0
    for comp in g.components():
        odd = sum(1 for v in comp if g.degree(v) % 2 == 1)
        total += max(1, odd // 2)
    return total


def lower_bound_cycles(g: Graph) -> int:
    """Sum over components of max(1, Δ/2)."""
    total = 0
    for comp in g.components():
        total += max(1, max(g.degree(v) for v in comp) // 2)
    return total


class _Search:
    """Shared machinery for both oracles over an edge-indexed graph."""

    def __init__(self, g: Graph, caps: OracleCaps, cycles: bool):
        if g.order > caps.vertices or g.m > caps.edges:
            raise CapExceeded(f"{g.order} vertices / {g.m} edges exceed caps "
                              f"{caps.vertices} / {caps.edges}")
        self.g = g
        self.cycles = cycles
        self.edges = g.edges()
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.budget = caps.node_budget
        self.nodes = 0
        self.failed: dict[int, int] = {}

    # -- remaining-graph helpers -----------------------------------------

    def _adjacency(self, mask: int) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {}
        for i, (u, v) in enumerate(self.edges):
            if mask >> i & 1:
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
        return adj

    def _bound(self, mask: int, adj: dict[int, list[int]]) -> int:
        seen: set[int] = set()
        total = 0
        for s in adj:
            if s in seen:
                continue
            stack = [s]
            seen.add(s)
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comp_edges = sum(len(adj[v]) for v in comp) // 2
            longest = len(comp) if self.cycles else len(comp) - 1
            if self.cycles:
                local = max(1, max(len(adj[v]) for v in comp) // 2)
            else:
                local = max(1, sum(1 for v in comp if len(adj[v]) % 2 == 1) // 2)
            total += max(local, math.ceil(comp_edges / max(1, longest)))
        return total

    def _walks(self, adj: dict[int, list[int]], start: int, banned: set[int]) -> Iterator[list[int]]:
        walk = [start]
        seen = set(banned) | {start}

        def extend() -> Iterator[list[int]]:
            yield list(walk)
            for w in sorted(adj.get(walk[-1], ())):
                if w in seen:
                    continue
                walk.append(w)
                seen.add(w)
                yield from extend()
                seen.discard(w)
                walk.pop()

        yield from extend()

    def _elements_through(self, mask: int, adj: dict[int, list[int]]) -> list[tuple[int, ...]]:
        low = (mask & -mask).bit_length() - 1
        a, b = self.edges[low]
        found = []
        if self.cycles:
            for walk in self._cycle_walks(adj, a, b):
                found.append(tuple(walk))
        else:
            for right in self._walks(adj, b, {a}):
                for left in self._walks(adj, a, set(right)):
                    found.append(tuple(left[::-1] + right))
        found.sort(key=lambda vs: (-len(vs), vs))
        return found

    def _cycle_walks(self, adj: dict[int, list[int]], a: int, b: int) -> Iterator[list[int]]:
        for walk in self._walks(adj, b, {a}):
            if len(walk) >= 2 and a in adj.get(walk[-1], ()):
                yield [a] + walk

    def _mask_of(self, vs: tuple[int, ...]) -> int:
        pairs = [edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]
        if self.cycles:
            pairs.append(edge(vs[-1], vs[0]))
        mask = 0
        for e in pairs:
            mask |= 1 << self.index[e]
        return mask

    # -- search ----------------------------------------------------------

    def solve(self, mask: int, k: int) -> Optional[list[tuple[int, ...]]]:
        if mask == 0:
            return []
        if k <= 0 or self.failed.get(mask, -1) >= k:
            return None
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise CapExceeded(f"search exceeded {self.budget} nodes")
        adj = self._adjacency(mask)
        if self._bound(mask, adj) > k:
            self.failed[mask] = max(self.failed.get(mask, -1), k)
            return None
        for vs in self._elements_through(mask, adj):
            rest = self.solve(mask & ~self._mask_of(vs), k - 1)
            if rest is not None:
                return [vs] + rest
        self.failed[mask] = max(self.failed.get(mask, -1), k)
        return None

    def run(self, limit: Optional[int] = None) -> Optional[list[tuple[int, ...]]]:
        full = (1 << len(self.edges)) - 1
        if full == 0:
            return []
        start = self._bound(full, self._adjacency(full))
        stop = len(self.edges) if limit is None else limit
        for k in range(start, stop + 1):
            found = self.solve(full, k)
            if found is not None:
                return found
        return None


def _wrap(found: list[tuple[int, ...]], cycles: bool) -> Decomposition:
    make = VertexCycle if cycles else VertexPath
    return Decomposition(tuple(make(vs) for vs in found))


def exact_path_number(g: Graph, cap: OracleCaps = OracleCaps()) -> tuple[int, Decomposition]:
    """
    Minimum number of paths decomposing ``g``.

    Args:
        g: Graph within the caps
        cap: Vertex/edge caps and optional node budget

    Returns:
        tuple: (pn, witness decomposition)
    """
    search = _Search(g, cap, cycles=False)
    found = search.run()
    log_custom_event("oracle_solved", {"mode": "paths"}, {"n": g.order, "m": g.m, "pn": len(found),
                                                          "nodes": search.nodes})
    return len(found), _wrap(found, cycles=False)


def exact_cycle_number(g: Graph, cap: OracleCaps = OracleCaps()) -> tuple[int, Decomposition]:
    """Minimum number of cycles decomposing an even graph."""
    if not g.is_even():
        raise NotEvenGraph(f"vertex {g.odd_vertices()[0]} has odd degree")
    search = _Search(g, cap, cycles=True)
    found = search.run()
    log_custom_event("oracle_solved", {"mode": "cycles"}, {"n": g.order, "m": g.m, "cn": len(found),
                                                           "nodes": search.nodes})
    return len(found), _wrap(found, cycles=True)


def bounded_path_decomposition(g: Graph, limit: int, cap: OracleCaps = OracleCaps()) -> Optional[Decomposition]:
    """A path decomposition of size at most ``limit``, or None if none exists."""
    found = _Search(g, cap, cycles=False).run(limit)
    return None if found is None else _wrap(found, cycles=False)


def bounded_cycle_decomposition(g: Graph, limit: int, cap: OracleCaps = OracleCaps()) -> Optional[Decomposition]:
    if not g.is_even():
        raise NotEvenGraph(f"vertex {g.odd_vertices()[0]} has odd degree")
    found = _Search(g, cap, cycles=True).run(limit)
    return None if found is None else _wrap(found, cycles=True)
