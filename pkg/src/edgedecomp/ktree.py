"""
Underlying 3-trees of partial 3-trees.

The embedding eliminates vertices of degree at most 3, completing each
eliminated neighbourhood into a clique. Vertices of degree at most 2 and
simplicial degree-3 vertices are eliminated greedily; other degree-3
vertices are branched on, with failed states memoized on the set of
vertices still present (the elimination graph depends only on that set).
The greedy rule alone is only safe for k <= 3; nothing here handles k > 3.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from edgedecomp.errors import PreconditionViolated
from edgedecomp.graph import Edge, Graph, edge

logger = logging.getLogger(__name__)

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class UnderlyingKTree:
    """A 3-tree on V(base) containing base; ``elimination`` lists (vertex, triangle)."""
    base: Graph
    fill: frozenset[Edge]
    elimination: tuple[tuple[int, Triangle], ...]
    root: Triangle

    @cached_property
    def graph(self) -> Graph:
        return Graph.from_edges(self.base.n, sorted(self.base.edge_set() | self.fill))

    def is_valid(self) -> bool:
        """Rebuild from the root triangle and compare with base + fill."""
        adj: dict[int, set[int]] = {v: set() for v in self.root}
        a, b, c = self.root
        for x, y in ((a, b), (a, c), (b, c)):
            adj[x].add(y)
            adj[y].add(x)
        for v, tri in reversed(self.elimination):
            if v in adj or any(t not in adj for t in tri):
                return False
            x, y, z = tri
            if not (y in adj[x] and z in adj[x] and z in adj[y]):
                return False
            adj[v] = set(tri)
            for t in tri:
                adj[t].add(v)
        rebuilt = {edge(u, w) for u, ws in adj.items() for w in ws}
        return rebuilt == set(self.graph.edges()) and set(adj) == set(self.base.vertices())


@dataclass(frozen=True)
class TerminalSet:
    vertices: tuple[int, ...]

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class DoubleCenteredForm:
    centers: tuple[int, int]
    spine: Graph
    spine_vertices: tuple[int, ...]


# ============================================================================
# ELIMINATION
# ============================================================================

def _eliminate_vertex(adj: dict[int, set[int]], v: int) -> frozenset[int]:
    nbrs = frozenset(adj.pop(v))
    for w in nbrs:
        adj[w].discard(v)
    for x in nbrs:
        adj[x] |= nbrs - {x}
    return nbrs


def _fill_count(adj: dict[int, set[int]], v: int) -> int:
    nbrs = sorted(adj[v])
    return sum(1 for i, x in enumerate(nbrs) for y in nbrs[i + 1:] if y not in adj[x])


def _forced_vertex(adj: dict[int, set[int]]) -> Optional[int]:
    for v in sorted(adj):
        d = len(adj[v])
        if d <= 2 or (d == 3 and _fill_count(adj, v) == 0):
            return v
    return None


def _search(adj: dict[int, set[int]], order: list, failed: set) -> Optional[tuple[list, list[int]]]:
    while len(adj) > 3:
        v = _forced_vertex(adj)
        if v is None:
            break
        order.append((v, _eliminate_vertex(adj, v)))
    if len(adj) <= 3:
        return order, sorted(adj)

    key = frozenset(adj)
    if key in failed:
        return None
    candidates = sorted((v for v in adj if len(adj[v]) == 3), key=lambda v: (_fill_count(adj, v), v))
    for v in candidates:
        branch = {w: set(ws) for w, ws in adj.items()}
        nbrs = _eliminate_vertex(branch, v)
        result = _search(branch, order + [(v, nbrs)], failed)
        if result is not None:
            return result
    failed.add(key)
    return None


def embed_partial_3tree(g: Graph) -> Optional[UnderlyingKTree]:
    """
    Embed ``g`` into a 3-tree on the same (non-isolated) vertex set.

    Args:
        g: Graph with at least 3 non-isolated vertices

    Returns:
        UnderlyingKTree, or None when g has treewidth above 3
    """
    if g.order < 3:
        raise PreconditionViolated("embedding needs at least 3 non-isolated vertices")

    adj = {v: set(g.adjacency[v]) for v in g.vertices()}
    result = _search(adj, [], set())
    if result is None:
        logger.debug(f"no 3-tree embedding for graph with {g.order} vertices")
        return None
    order, last = result
    root: Triangle = tuple(last)

    tree: dict[int, set[int]] = {v: set(root) - {v} for v in root}
    placed: list[tuple[int, Triangle]] = []
    for v, nbrs in reversed(order):
        tri = _extend_to_triangle(tree, sorted(nbrs), root)
        tree[v] = set(tri)
        for t in tri:
            tree[t].add(v)
        placed.append((v, tri))

    fill = frozenset(edge(u, w) for u, ws in tree.items() for w in ws if not g.has_edge(u, w))
    return UnderlyingKTree(base=g, fill=fill, elimination=tuple(reversed(placed)), root=root)


def _extend_to_triangle(tree: dict[int, set[int]], nbrs: list[int], root: Triangle) -> Triangle:
    if len(nbrs) == 3:
        return tuple(nbrs)
    if len(nbrs) == 2:
        a, b = nbrs
        c = min(tree[a] & tree[b])
        return tuple(sorted((a, b, c)))
    if len(nbrs) == 1:
        a = nbrs[0]
        b = min(tree[a])
        c = min(tree[a] & tree[b])
        return tuple(sorted((a, b, c)))
    return root


# ============================================================================
# TERMINALS AND DOUBLE-CENTERED FORM
# ============================================================================

def terminals(t: UnderlyingKTree) -> TerminalSet:
    """Vertices of degree 3 in the 3-tree (all of them for K3)."""
    tree = t.graph
    if tree.order == 3:
        return TerminalSet(tuple(tree.vertices()))
    return TerminalSet(tuple(v for v in tree.vertices() if tree.degree(v) == 3))


def _is_tree(g: Graph, vertices: list[int]) -> bool:
    if len(vertices) == 1:
        return True
    comps = g.components()
    return len(comps) == 1 and comps[0] == vertices and g.m == len(vertices) - 1


def double_centered_form(g3: Graph) -> Optional[DoubleCenteredForm]:
    """First adjacent pair (a, b) dominating the rest with a tree left over."""
    vs = g3.vertices()
    for a in vs:
        for b in g3.neighbors(a):
            if b < a:
                continue
            rest = [v for v in vs if v not in (a, b)]
            if not rest or any(not (g3.has_edge(v, a) and g3.has_edge(v, b)) for v in rest):
                continue
            spine = g3.subgraph(rest)
            if _is_tree(spine, rest):
                return DoubleCenteredForm(centers=(a, b), spine=spine, spine_vertices=tuple(rest))
    return None
