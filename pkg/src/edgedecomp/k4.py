"""
K4-subdivisions: search and local improvement.

The search reduces the graph by deleting vertices of degree at most 1,
suppressing degree-2 vertices and dropping the longer of parallel paths.
A graph with no K4-subdivision reduces to nothing. Otherwise the reduced
graph has minimum degree 3 and a cycle with a 3-fan from an outside vertex
is found in it; the reduced edges are then expanded back to paths of G.

Improvement adds one or two edges of G - E(H) (or a two/three-edge star
from an outside vertex) to H and deletes one or two chains of the result,
keeping the smallest K4-subdivision found, until no move helps.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

import networkx as nx

from edgedecomp.graph import Edge, Graph, disjoint_paths, edge

logger = logging.getLogger(__name__)

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class K4Subdivision:
    """Branch vertices x1..x4 (indices 0..3) and the six paths, one per pair."""
    branch: tuple[int, int, int, int]
    paths: tuple[tuple[int, ...], ...]

    def path(self, i: int, j: int) -> list[int]:
        """Path from branch[i] to branch[j]."""
        if i < j:
            return list(self.paths[PAIRS.index((i, j))])
        return list(self.paths[PAIRS.index((j, i))])[::-1]

    def interior(self, i: int, j: int) -> list[int]:
        return self.path(i, j)[1:-1]

    def edges(self) -> set[Edge]:
        return {edge(p[k], p[k + 1]) for p in self.paths for k in range(len(p) - 1)}

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)

    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def owner(self) -> dict[int, tuple[int, int]]:
        """Pair (i, j) owning each interior vertex."""
        return {v: pair for pair, p in zip(PAIRS, self.paths) for v in p[1:-1]}

    def relabel(self, order: Iterable[int]) -> "K4Subdivision":
        """New branch k is old branch order[k]."""
        order = list(order)
        branch = tuple(self.branch[o] for o in order)
        paths = tuple(tuple(self.path(order[i], order[j])) for i, j in PAIRS)
        return K4Subdivision(branch, paths)

    def is_valid(self, g: Optional[Graph] = None) -> bool:
        seen: set[int] = set(self.branch)
        if len(seen) != 4:
            return False
        for (i, j), p in zip(PAIRS, self.paths):
            if p[0] != self.branch[i] or p[-1] != self.branch[j] or len(p) < 2:
                return False
            for v in p[1:-1]:
                if v in seen:
                    return False
                seen.add(v)
            if g is not None and any(not g.has_edge(p[k], p[k + 1]) for k in range(len(p) - 1)):
                return False
        return True


# ============================================================================
# RECOGNITION FROM AN EDGE SET
# ============================================================================

def _chains(adj: dict[int, set[int]]) -> list[list[int]]:
    """Maximal chains whose interior vertices have degree 2."""
    branch = {v for v, ws in adj.items() if len(ws) != 2}
    seen: set[Edge] = set()
    chains = []
    for a in sorted(branch):
        for w in sorted(adj[a]):
            if edge(a, w) in seen:
                continue
            walk = [a, w]
            seen.add(edge(a, w))
            while walk[-1] not in branch:
                nxt = [x for x in adj[walk[-1]] if edge(walk[-1], x) not in seen]
                if not nxt:
                    break
                walk.append(nxt[0])
                seen.add(edge(walk[-2], walk[-1]))
            chains.append(walk)
    return chains


def _adjacency(edges: Iterable[Edge]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def subdivision_from_edges(edges: Iterable[Edge]) -> Optional[K4Subdivision]:
    """The K4-subdivision with exactly this edge set, if it is one."""
    adj = _adjacency(edges)
    degrees = sorted(len(ws) for ws in adj.values())
    if not adj or degrees.count(3) != 4 or any(d not in (2, 3) for d in degrees):
        return None
    branch = tuple(sorted(v for v, ws in adj.items() if len(ws) == 3))
    chains = _chains(adj)
    by_pair = {}
    for ch in chains:
        if ch[0] not in branch or ch[-1] not in branch or ch[0] == ch[-1]:
            return None
        i, j = sorted((branch.index(ch[0]), branch.index(ch[-1])))
        if (i, j) in by_pair:
            return None
        by_pair[(i, j)] = ch if ch[0] == branch[i] else ch[::-1]
    if len(by_pair) != 6 or sum(len(c) - 1 for c in chains) != sum(len(ws) for ws in adj.values()) // 2:
        return None
    return K4Subdivision(branch, tuple(tuple(by_pair[pair]) for pair in PAIRS))


def _prune(edges: set[Edge]) -> set[Edge]:
    adj = _adjacency(edges)
    leaves = [v for v, ws in adj.items() if len(ws) <= 1]
    while leaves:
        v = leaves.pop()
        for w in list(adj.get(v, ())):
            adj[w].discard(v)
            edges.discard(edge(v, w))
            if len(adj[w]) == 1:
                leaves.append(w)
        adj[v] = set()
    return edges


# ============================================================================
# SEARCH
# ============================================================================

def _reduce(g: Graph) -> tuple[dict[frozenset, tuple[int, ...]], dict[int, set[int]]]:
    """Series-parallel reduction; returns reduced edges (as G-paths) and adjacency."""
    paths: dict[frozenset, tuple[int, ...]] = {frozenset(e): e for e in g.edges()}
    adj = {v: set(g.adjacency[v]) for v in g.vertices()}
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            if len(adj[v]) <= 1:
                for w in adj.pop(v):
                    adj[w].discard(v)
                    paths.pop(frozenset((v, w)))
                changed = True
            elif len(adj[v]) == 2:
                a, b = sorted(adj.pop(v))
                pa = paths.pop(frozenset((a, v)))
                pb = paths.pop(frozenset((v, b)))
                pa = pa if pa[0] == a else pa[::-1]
                pb = pb if pb[0] == v else pb[::-1]
                joined = pa + pb[1:]
                adj[a].discard(v)
                adj[b].discard(v)
                key = frozenset((a, b))
                if key not in paths or len(paths[key]) > len(joined):
                    paths[key] = joined
                adj[a].add(b)
                adj[b].add(a)
                changed = True
    return paths, adj


def _fan_subdivision(adj: dict[int, set[int]]) -> Optional[tuple[tuple[int, ...], list[list[int]]]]:
    """Branch vertices and reduced-graph paths of some K4-subdivision."""
    ids = sorted(adj)
    index = {v: i for i, v in enumerate(ids)}
    reduced = Graph.from_edges(len(ids), sorted({edge(index[u], index[w]) for u in adj for w in adj[u]}))
    h = reduced.to_networkx()
    for bound in range(3, len(ids) + 1):
        for cycle in nx.simple_cycles(h, length_bound=bound):
            if len(cycle) != bound:
                continue
            on_cycle = set(cycle)
            for x in reduced.vertices():
                if x in on_cycle:
                    continue
                fan = disjoint_paths(reduced, x, cycle, limit=3)
                if len(fan) < 3:
                    continue
                ends = [p[-1] for p in fan]
                position = sorted(cycle.index(c) for c in ends)
                arcs = []
                k = len(cycle)
                for a, b in zip(position, position[1:] + [position[0] + k]):
                    arcs.append([cycle[t % k] for t in range(a, b + 1)])
                c1, c2, c3 = (cycle[p] for p in position)
                by_end = {p[-1]: p for p in fan}
                # branch order: c1, c2, c3, x
                routes = [arcs[0], arcs[2][::-1], by_end[c1][::-1], arcs[1], by_end[c2][::-1], by_end[c3][::-1]]
                branch = (c1, c2, c3, x)
                return tuple(ids[v] for v in branch), [[ids[v] for v in r] for r in routes]
    return None


def find_k4_subdivision(g: Graph, improve: bool = True) -> Optional[K4Subdivision]:
    """
    A K4-subdivision of ``g``, locally edge-minimal, or None when there is none.

    Args:
        g: Graph
        improve: Apply the exchange moves until none reduces the edge count

    Returns:
        K4Subdivision or None
    """
    paths, adj = _reduce(g)
    if not adj:
        return None
    found = _fan_subdivision(adj)
    if found is None:
        logger.warning("reduced graph has minimum degree 3 but no fan was found")
        return None
    branch, routes = found
    expanded = []
    for route in routes:
        walk = [route[0]]
        for a, b in zip(route, route[1:]):
            seg = paths[frozenset((a, b))]
            seg = seg if seg[0] == a else seg[::-1]
            walk.extend(seg[1:])
        expanded.append(tuple(walk))
    h = K4Subdivision(branch, tuple(expanded))
    # normalise to sorted branch order
    h = subdivision_from_edges(h.edges()) or h
    return improve_subdivision(g, h) if improve else h


# ============================================================================
# IMPROVEMENT
# ============================================================================

def _candidate_additions(g: Graph, h: K4Subdivision) -> list[list[Edge]]:
    inside = h.vertices
    h_edges = h.edges()
    chords = sorted({edge(u, w) for u in inside for w in g.adjacency[u]
                     if w in inside and edge(u, w) not in h_edges})
    at_branch = [e for e in chords if e[0] in h.branch or e[1] in h.branch]
    additions = [[e] for e in chords]
    additions += [[e, f] for e, f in combinations(at_branch, 2)]
    outside = sorted({w for u in inside for w in g.adjacency[u] if w not in inside})
    for z in outside:
        touch = sorted(u for u in g.adjacency[z] if u in inside)
        for size in (2, 3):
            for group in combinations(touch, size):
                additions.append([edge(z, u) for u in group])
    return additions


def _best_within(edges: set[Edge]) -> Optional[K4Subdivision]:
    chains = _chains(_adjacency(edges))
    best: Optional[K4Subdivision] = None
    options = [()] + [(c,) for c in range(len(chains))] + list(combinations(range(len(chains)), 2))
    for drop in options:
        remaining = set(edges)
        for c in drop:
            ch = chains[c]
            remaining -= {edge(ch[k], ch[k + 1]) for k in range(len(ch) - 1)}
        candidate = subdivision_from_edges(_prune(remaining))
        if candidate is not None and (best is None or candidate.edge_count() < best.edge_count()):
            best = candidate
    return best


def improve_subdivision(g: Graph, h: K4Subdivision) -> K4Subdivision:
    """Repeat exchange moves until none gives fewer edges."""
    while True:
        current = h.edge_count()
        better = None
        for addition in _candidate_additions(g, h):
            candidate = _best_within(h.edges() | set(addition))
            if candidate is not None and candidate.edge_count() < current:
                if better is None or candidate.edge_count() < better.edge_count():
                    better = candidate
        if better is None:
            return h
        logger.debug(f"K4-subdivision improved from {current} to {better.edge_count()} edges")
        h = better


def is_locally_minimal(g: Graph, h: K4Subdivision) -> bool:
    return all(
        (c := _best_within(h.edges() | set(a))) is None or c.edge_count() >= h.edge_count()
        for a in _candidate_additions(g, h)
    )
