"""
Graph core: the simple-graph value type, path/cycle elements, decompositions
and their checker, plus the structural queries every driver relies on.

Vertex ids are dense and 0-based. Isolated vertices are legal and are
ignored by every bound; sub-graphs keep the host's ids.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union

import networkx as nx

from edgedecomp.errors import InvalidGraph, NotConnected, NotTwoConnected, OddVertex

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalized (min, max) edge key."""
    return (u, v) if u < v else (v, u)


# ============================================================================
# GRAPH
# ============================================================================

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""
    n: int
    adjacency: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """
        Build a graph, rejecting loops, duplicates and out-of-range ids.

        Args:
            n: Number of vertices
            edges: Pairs of vertex ids

        Returns:
            Graph: The validated graph
        """
        if n < 0:
            raise InvalidGraph(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidGraph(f"loop at vertex {u}")
            if v in adj[u]:
                raise InvalidGraph(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[Edge]:
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def vertices(self) -> list[int]:
        """Non-isolated vertices, ascending."""
        return [v for v in range(self.n) if self.adjacency[v]]

    @cached_property
    def order(self) -> int:
        """Number of non-isolated vertices."""
        return sum(1 for a in self.adjacency if a)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def odd_vertices(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) % 2 == 1]

    def is_even(self) -> bool:
        return all(len(a) % 2 == 0 for a in self.adjacency)

    # ------------------------------------------------------------------
    # derived graphs (ids preserved)
    # ------------------------------------------------------------------

    def _rebuild(self, adj: list[set[int]]) -> "Graph":
        return Graph(self.n, tuple(frozenset(a) for a in adj))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [set(a) for a in self.adjacency]
        for u, v in edges:
            if v not in adj[u]:
                raise InvalidGraph(f"edge ({u}, {v}) not present")
            adj[u].discard(v)
            adj[v].discard(u)
        return self._rebuild(adj)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [set(a) for a in self.adjacency]
        for u, v in edges:
            if u == v or v in adj[u]:
                raise InvalidGraph(f"cannot add edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return self._rebuild(adj)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        """Delete all edges at the given vertices (ids are kept)."""
        gone = set(vertices)
        adj = [set() if v in gone else set(a) - gone for v, a in enumerate(self.adjacency)]
        return self._rebuild(adj)

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced sub-graph on ``vertices`` (ids kept)."""
        keep = set(vertices)
        adj = [set(a) & keep if v in keep else set() for v, a in enumerate(self.adjacency)]
        return self._rebuild(adj)

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.n, sorted(set(edge(u, v) for u, v in edges)))

    def with_vertex(self) -> tuple["Graph", int]:
        """Append one isolated vertex; returns the new graph and its id."""
        return Graph(self.n + 1, self.adjacency + (frozenset(),)), self.n

    # ------------------------------------------------------------------
    # connectivity
    # ------------------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Vertex sets of the components with at least one edge."""
        seen = [False] * self.n
        result = []
        for s in range(self.n):
            if seen[s] or not self.adjacency[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            result.append(sorted(comp))
        return result

    def component_graphs(self) -> list["Graph"]:
        return [self.subgraph(c) for c in self.components()]

    def is_connected(self) -> bool:
        """True when all edges lie in one component (isolated vertices ignored)."""
        return len(self.components()) <= 1

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(self.vertices())
        h.add_edges_from(self.edges())
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def gallai_bound(g: Graph) -> int:
    return g.order // 2


def hajos_bound(g: Graph) -> int:
    return max(0, (g.order - 1) // 2)


# ============================================================================
# ELEMENTS AND DECOMPOSITIONS
# ============================================================================

@dataclass(frozen=True)
class VertexPath:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def reversed(self) -> "VertexPath":
        return VertexPath(self.vertices[::-1])

    def __len__(self) -> int:
        return max(0, len(self.vertices) - 1)


@dataclass(frozen=True)
class VertexCycle:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def edges(self) -> list[Edge]:
        vs = self.vertices
        k = len(vs)
        return [edge(vs[i], vs[(i + 1) % k]) for i in range(k)]

    def __len__(self) -> int:
        return len(self.vertices)


Element = Union[VertexPath, VertexCycle]


@dataclass(frozen=True)
class Decomposition:
    elements: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __add__(self, other: "Decomposition") -> "Decomposition":
        return Decomposition(self.elements + other.elements)

    @property
    def kind(self) -> str:
        if all(isinstance(e, VertexCycle) for e in self.elements):
            return "cycles"
        if all(isinstance(e, VertexPath) for e in self.elements):
            return "paths"
        return "mixed"

    def edge_count(self) -> int:
        return sum(len(e.edges()) for e in self.elements)

    def edges(self) -> list[Edge]:
        return [e for el in self.elements for e in el.edges()]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: Optional[str] = None
    element: Optional[int] = None
    edge: Optional[Edge] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_decomposition(g: Graph, d: Decomposition) -> Verdict:
    """
    Check that ``d`` partitions the edges of ``g`` into valid paths/cycles.

    Args:
        g: Host graph
        d: Claimed decomposition

    Returns:
        Verdict: ok, or the first violation found
    """
    used: dict[Edge, int] = {}
    for index, element in enumerate(d.elements):
        vs = element.vertices
        if isinstance(element, VertexCycle) and len(vs) < 3:
            return Verdict(False, "cycle shorter than 3", index)
        if isinstance(element, VertexPath) and len(vs) < 1:
            return Verdict(False, "empty path", index)
        for v in vs:
            if not 0 <= v < g.n:
                return Verdict(False, f"vertex {v} out of range", index)
        if len(set(vs)) != len(vs):
            return Verdict(False, "repeated vertex", index)
        for e in element.edges():
            if not g.has_edge(*e):
                return Verdict(False, "non-adjacent step", index, e)
            if e in used:
                return Verdict(False, f"duplicate edge (also in element {used[e]})", index, e)
            used[e] = index
    for e in g.edges():
        if e not in used:
            return Verdict(False, "missing edge", None, e)
    return Verdict(True)


def path_from_edges(edges: Iterable[tuple[int, int]]) -> Optional[VertexPath]:
    """Return the path whose edge set is ``edges``, or None if it is not one."""
    adj: dict[int, list[int]] = {}
    count = 0
    for u, v in set(edge(a, b) for a, b in edges):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
        count += 1
    if count == 0:
        return None
    ends = sorted(v for v, ws in adj.items() if len(ws) == 1)
    if len(ends) != 2 or any(len(ws) > 2 for ws in adj.values()):
        return None
    walk = [ends[0]]
    prev = None
    cur = ends[0]
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        walk.append(cur)
    if len(walk) != count + 1:
        return None
    return VertexPath(tuple(walk))


def cycle_from_edges(edges: Iterable[tuple[int, int]]) -> Optional[VertexCycle]:
    """Return the cycle whose edge set is ``edges``, or None."""
    es = sorted(set(edge(a, b) for a, b in edges))
    if len(es) < 3:
        return None
    first = es[0]
    p = path_from_edges(es[1:])
    if p is None or set(p.ends) != set(first):
        return None
    return VertexCycle(p.vertices)


# ============================================================================
# SEARCH HELPERS
# ============================================================================

def shortest_path(g: Graph, sources: Iterable[int], targets: Iterable[int],
                  forbidden: Iterable[int] = (), skip_edges: Iterable[Edge] = ()) -> Optional[list[int]]:
    """
    Deterministic BFS from any source to any target.

    Forbidden vertices are never entered; sources and targets are never
    forbidden. Returns the vertex list, or None when unreachable.
    """
    targets = set(targets)
    blocked = set(forbidden)
    skipped = set(edge(*e) for e in skip_edges)
    parent: dict[int, Optional[int]] = {}
    queue: deque[int] = deque()
    for s in sorted(set(sources)):
        parent[s] = None
        queue.append(s)
    while queue:
        v = queue.popleft()
        if v in targets:
            walk = [v]
            while parent[walk[-1]] is not None:
                walk.append(parent[walk[-1]])
            return walk[::-1]
        for w in sorted(g.adjacency[v]):
            if w in parent or (w in blocked and w not in targets) or edge(v, w) in skipped:
                continue
            parent[w] = v
            queue.append(w)
    return None


def disjoint_paths(g: Graph, source: int, targets: Iterable[int], limit: Optional[int] = None,
                   blocked: Iterable[int] = (), skip_edges: Iterable[Edge] = ()) -> list[list[int]]:
    """
    Internally vertex-disjoint paths from ``source`` to ``targets``.

    Unit vertex capacities, augmenting paths found by BFS. With a single
    target every path ends there; with several targets each path ends at a
    distinct target and never passes through another one.

    Args:
        g: Graph
        source: Start vertex
        targets: End vertex or vertices
        limit: Stop after this many paths
        blocked: Vertices that may not be used
        skip_edges: Edges that may not be used

    Returns:
        list: Vertex lists, each starting at ``source``
    """
    targets = sorted(set(targets) - {source})
    single = len(targets) == 1
    blocked = set(blocked)
    skipped = set(edge(*e) for e in skip_edges)
    SINK = ("sink", -1)

    cap: dict = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    target_set = set(targets)
    for v in range(g.n):
        if v in blocked or v == source or not g.adjacency[v]:
            continue
        if v in target_set:
            arc(("in", v), SINK, (limit or g.n) if single else 1)
        else:
            arc(("in", v), ("out", v), 1)
    for u, v in g.edges():
        if (u, v) in skipped or u in blocked or v in blocked:
            continue
        for a, b in ((u, v), (v, u)):
            if b == source:
                continue
            if a in target_set:
                continue
            arc(("out", a), ("in", b), 1)

    start = ("out", source)
    if start not in cap:
        return []
    original = {a: dict(bs) for a, bs in cap.items()}

    def sort_key(node):
        return (node[1], node[0])

    found = 0
    while limit is None or found < limit:
        parent = {start: None}
        queue = deque([start])
        while queue and SINK not in parent:
            a = queue.popleft()
            for b in sorted(cap[a], key=sort_key):
                if cap[a][b] > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if SINK not in parent:
            break
        b = SINK
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        found += 1

    flow = {a: {b: original[a][b] - cap[a][b] for b in original[a]
                if original[a][b] > 0 and original[a][b] - cap[a][b] > 0}
            for a in original}
    paths = []
    for _ in range(found):
        walk = [source]
        node = start
        while node != SINK:
            nxt = min(flow[node], key=sort_key)
            flow[node][nxt] -= 1
            if flow[node][nxt] == 0:
                del flow[node][nxt]
            if nxt[0] == "in":
                walk.append(nxt[1])
            node = nxt
        paths.append(walk)
    return sorted(paths, key=lambda p: (len(p), p))


# ============================================================================
# BRIDGES, BLOCKS AND EDGE CUTS
# ============================================================================

class EdgeCutKind(str, Enum):
    USEFUL_BRIDGE = "UsefulBridge"
    USELESS_BRIDGE = "UselessBridge"
    TWO_EDGE_CUT = "TwoEdgeCut"


def _bridge_sides(g: Graph) -> list[tuple[Edge, int, int]]:
    """One low-point DFS; returns (bridge, child-side size, other-side size)."""
    disc = [-1] * g.n
    low = [0] * g.n
    size = [0] * g.n
    parent = [-1] * g.n
    found: list[tuple[Edge, int, int]] = []
    clock = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adjacency[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, iter(sorted(g.adjacency[root])))]
        pending: list[tuple[int, int]] = []
        while stack:
            v, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, iter(sorted(g.adjacency[w]))))
                    descended = True
                    break
                if w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            size[v] += 1
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                size[p] += size[v]
                if low[v] > disc[p]:
                    pending.append((p, v))
        total = size[root]
        for p, v in pending:
            found.append((edge(p, v), size[v], total - size[v]))
    return sorted(found)


def bridges(g: Graph) -> list[Edge]:
    return [e for e, _, _ in _bridge_sides(g)]


def bridges_and_blocks(g: Graph) -> tuple[list[tuple[Edge, EdgeCutKind]], list[Graph]]:
    """
    Classify bridges and list the 2-connected blocks.

    Bridges are Useful when both sides keep at least two vertices. Blocks
    are the biconnected components with more than one edge, so bridges and
    blocks together partition E(g).
    """
    classified = []
    for e, a, b in _bridge_sides(g):
        kind = EdgeCutKind.USEFUL_BRIDGE if min(a, b) >= 2 else EdgeCutKind.USELESS_BRIDGE
        classified.append((e, kind))
    blocks = []
    for comp_edges in nx.biconnected_component_edges(g.to_networkx()):
        es = [edge(u, v) for u, v in comp_edges]
        if len(es) > 1:
            blocks.append(Graph.from_edges(g.n, sorted(es)))
    blocks.sort(key=lambda b: b.edges()[0])
    return classified, blocks


def iter_two_edge_cuts(g: Graph) -> Iterator[tuple[Edge, Edge]]:
    """Lazily yield minimal 2-edge-cuts in lexicographic order."""
    if not g.is_connected():
        raise NotConnected("two_edge_cuts needs a connected graph")
    single = set(bridges(g))
    for e in g.edges():
        if e in single:
            continue
        for f in bridges(g.remove_edges([e])):
            if f > e and f not in single:
                yield (e, f)


def two_edge_cuts(g: Graph) -> list[tuple[Edge, Edge]]:
    return sorted(iter_two_edge_cuts(g))


def cycle_through_pair(g: Graph, u: int, v: int) -> VertexCycle:
    """A cycle through ``u`` and ``v`` from two disjoint u-v paths."""
    if u == v:
        raise NotTwoConnected("endpoints must differ")
    paths = disjoint_paths(g, u, [v], limit=2)
    if len(paths) < 2:
        raise NotTwoConnected(f"no two disjoint paths between {u} and {v}")
    first, second = paths
    return VertexCycle(tuple(first) + tuple(second[-2:0:-1]))


def euler_cycle_partition(g: Graph) -> list[VertexCycle]:
    """Partition the edges of an even graph into cycles (walk-until-repeat)."""
    odd = g.odd_vertices()
    if odd:
        raise OddVertex(odd[0])
    remaining = [set(a) for a in g.adjacency]
    cycles = []
    for start in range(g.n):
        while remaining[start]:
            walk = [start]
            position = {start: 0}
            cur = start
            while remaining[cur]:
                nxt = min(remaining[cur])
                remaining[cur].discard(nxt)
                remaining[nxt].discard(cur)
                if nxt in position:
                    i = position[nxt]
                    cycles.append(VertexCycle(tuple(walk[i:])))
                    for w in walk[i + 1:]:
                        del position[w]
                    del walk[i + 1:]
                else:
                    position[nxt] = len(walk)
                    walk.append(nxt)
                cur = nxt
    return cycles


# ============================================================================
# SPECIAL GRAPHS AND GIRTH
# ============================================================================

class SpecialKind(str, Enum):
    K3 = "K3"
    K5 = "K5"
    K5_MINUS = "K5minus"
    K44_MINUS_PM = "K44_minus_PM"
    QUASI_COMPLETE = "QuasiComplete"
    NONE = "None"


def k44_minus_pm() -> Graph:
    return Graph.from_edges(8, [(i, 4 + j) for i in range(4) for j in range(4) if i != j])


def recognize_special(g: Graph) -> SpecialKind:
    """Recognize the fixed special graphs (isolated vertices ignored)."""
    n, m = g.order, g.m
    degrees = sorted(g.degree(v) for v in g.vertices())
    if n == 3 and m == 3:
        return SpecialKind.K3
    if n == 5 and m == 10:
        return SpecialKind.K5
    if n == 5 and m == 9:
        return SpecialKind.K5_MINUS
    if n == 8 and m == 12 and degrees == [3] * 8 and g.is_connected():
        if nx.is_isomorphic(g.to_networkx(), k44_minus_pm().to_networkx()):
            return SpecialKind.K44_MINUS_PM
    if n % 2 == 1 and m > (n // 2) * (n - 1):
        return SpecialKind.QUASI_COMPLETE
    return SpecialKind.NONE


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in sorted(g.adjacency[v]):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v]:
                    best = min(best, dist[v] + dist[w] + 1)
    return best
