"""
Small-gadget decompositions: a path plus a cycle into two paths, absorbing
short cycles and K5-like blocks into a path decomposition, and the two-path
decomposition of proper K5⁻ subdivisions.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from edgedecomp.errors import (
    ChordLimitExceeded,
    NotConnected,
    NotDisjoint,
    NotK5Like,
    NotK5MinusSubdivision,
    PreconditionViolated,
)
from edgedecomp.graph import (
    Decomposition,
    Edge,
    Graph,
    VertexCycle,
    VertexPath,
    edge,
    path_from_edges,
)

logger = logging.getLogger(__name__)

# Simple-path states explored before the exhaustive split gives up.
SEARCH_LIMIT = 200_000


@dataclass(frozen=True)
class SplitResult:
    p1: VertexPath
    p2: VertexPath
    branch: str

    def __iter__(self):
        return iter((self.p1, self.p2))


# ============================================================================
# PATH + CYCLE -> TWO PATHS
# ============================================================================

def _is_simple(vs: list[int]) -> bool:
    return len(set(vs)) == len(vs)


def _check_split(p1: list[int], p2_edges: set[Edge], all_edges: set[Edge],
                 cycle_edges: set[Edge], one_cycle_edge: bool) -> Optional[tuple[VertexPath, VertexPath]]:
    if len(p1) < 2 or not _is_simple(p1):
        return None
    first = VertexPath(tuple(p1))
    first_edges = set(first.edges())
    if len(first_edges) != len(p1) - 1 or not first_edges <= all_edges:
        return None
    if first_edges & p2_edges or first_edges | p2_edges != all_edges:
        return None
    if one_cycle_edge and len(first_edges & cycle_edges) != 1:
        return None
    second = path_from_edges(p2_edges)
    if second is None:
        return None
    return first, second


def _claim_candidates(p: VertexPath, c: VertexCycle) -> Iterator[tuple[str, list[int]]]:
    """P1 candidates from the first contact vertex z0 of P with C."""
    xs = list(p.vertices)
    on_cycle = set(c.vertices)
    z0_index = next(i for i, x in enumerate(xs) if x in on_cycle)
    z0 = xs[z0_index]
    k = c.vertices.index(z0)
    ys = list(c.vertices[k:] + c.vertices[:k])
    on_path = {x: i for i, x in enumerate(xs)}

    for y in (ys[1], ys[-1]):
        if y not in on_path:
            yield "pendant-cycle-edge", [y] + xs[z0_index:]

    for zi in (ys[1], ys[-1]):
        i = on_path.get(zi)
        if i is None or i <= z0_index + 1:
            continue
        prev_index = i - 1
        if xs[prev_index] in on_cycle:
            continue
        # P1 = reverse(P(z0, z')) + z0 zi + P(zi, xk)
        yield "rerouted-segment", xs[prev_index:z0_index - 1 if z0_index else None:-1] + xs[i:]

    if len(ys) == 5:
        for orientation in (ys, [ys[0]] + ys[:0:-1]):
            yield from _five_cycle_candidates(xs, orientation, on_path)


def _five_cycle_candidates(xs: list[int], ys: list[int], pos: dict[int, int]) -> Iterator[tuple[str, list[int]]]:
    """The chord configurations of a 5-cycle whose both y0-neighbours lie on P."""
    y0, y1, y2, y3, y4 = ys
    order = sorted((pos[y], y) for y in ys if y in pos)
    zs = [y for _, y in order if pos[y] >= pos[y0]]

    def seg(a: int, b: int) -> list[int]:
        return xs[pos[a]:pos[b] + 1]

    def before(v: int) -> int:
        return xs[pos[v] - 1]

    if zs == [y0, y3, y1, y2, y4]:
        yield "five-cycle-crossed", [xs[pos[y1] + 1], y1, y0] + seg(y0, y3)[1:] + [y2, y4] + xs[pos[y4] + 1:]
    if zs == [y0, y3, y1, y4]:
        yield "five-cycle-a", xs[:pos[y0] + 1] + [y4, y3, y1, y2]
    if zs == [y0, y2, y3, y1, y4]:
        yield "five-cycle-b", xs[:pos[y2] + 1] + [y1, y4, y3, before(y3)]
    if zs == [y0, y3, y1, y4, y2]:
        yield "five-cycle-c", xs[:pos[y0] + 1] + [y4, y1, y3, y2, before(y2)]


def _exhaustive_candidates(all_edges: set[Edge], cycle_edges: set[Edge],
                           one_cycle_edge: bool) -> Iterator[list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in sorted(all_edges):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    budget = [SEARCH_LIMIT]

    def extend(walk: list[int], seen: set[int], used_cycle: int) -> Iterator[list[int]]:
        budget[0] -= 1
        if budget[0] <= 0:
            return
        if len(walk) >= 2 and (not one_cycle_edge or used_cycle == 1):
            yield list(walk)
        for w in adj[walk[-1]]:
            if w in seen:
                continue
            on_c = edge(walk[-1], w) in cycle_edges
            if one_cycle_edge and used_cycle + on_c > 1:
                continue
            walk.append(w)
            seen.add(w)
            yield from extend(walk, seen, used_cycle + on_c)
            seen.discard(w)
            walk.pop()

    for start in sorted(adj):
        yield from extend([start], {start}, 0)


def two_path_split(p: VertexPath, c: VertexCycle) -> SplitResult:
    """
    Decompose the union of a path and an edge-disjoint cycle into two paths.

    Under mode (i) (at most one chord of ``c`` in ``p``) the first returned
    path holds exactly one edge of ``c``. Mode (ii) needs ``|c| <= 5`` and
    at most three chords.

    Args:
        p: Path
        c: Cycle sharing at least one vertex with ``p``

    Returns:
        SplitResult: (p1, p2) and the id of the construction that produced it
    """
    path_edges = set(p.edges())
    cycle_edges = set(c.edges())
    if path_edges & cycle_edges:
        raise NotDisjoint("path and cycle share an edge")
    on_cycle = set(c.vertices)
    if not on_cycle & set(p.vertices):
        raise NotConnected("path does not meet the cycle")

    chords = [e for e in path_edges if e[0] in on_cycle and e[1] in on_cycle]
    if len(chords) <= 1:
        one_cycle_edge = True
    elif len(c) <= 5 and len(chords) <= 3:
        one_cycle_edge = False
    else:
        raise ChordLimitExceeded(f"{len(chords)} chords on a cycle of length {len(c)}")

    all_edges = path_edges | cycle_edges
    for orientation, q in (("", p), ("reversed:", p.reversed())):
        for branch, p1 in _claim_candidates(q, c):
            p1_edges = set(VertexPath(tuple(p1)).edges()) if _is_simple(p1) else set()
            checked = _check_split(p1, all_edges - p1_edges, all_edges, cycle_edges, one_cycle_edge)
            if checked:
                return SplitResult(*checked, branch=orientation + branch)

    for p1 in _exhaustive_candidates(all_edges, cycle_edges, one_cycle_edge):
        p1_edges = set(VertexPath(tuple(p1)).edges())
        checked = _check_split(p1, all_edges - p1_edges, all_edges, cycle_edges, one_cycle_edge)
        if checked:
            return SplitResult(*checked, branch="exhaustive")

    raise ChordLimitExceeded(f"no two-path split for path {p.vertices} and cycle {c.vertices}")


# ============================================================================
# ABSORPTION
# ============================================================================

def absorb_short_cycles(h_decomp: Decomposition, cycles: list[VertexCycle]) -> Decomposition:
    """Fold vertex-disjoint 3- and 4-cycles into a path decomposition, one path each."""
    elements = list(h_decomp.elements)
    for cycle in cycles:
        if len(cycle) not in (3, 4):
            raise PreconditionViolated(f"cycle of length {len(cycle)} is not short")
        touching = [i for i, el in enumerate(elements) if set(el.vertices) & set(cycle.vertices)]
        if not touching:
            raise PreconditionViolated(f"cycle {cycle.vertices} does not meet the decomposition")
        for i in touching:
            try:
                result = two_path_split(elements[i], cycle)
            except ChordLimitExceeded:
                continue
            elements[i:i + 1] = [result.p1, result.p2]
            break
        else:
            raise ChordLimitExceeded(f"cycle {cycle.vertices} could not be absorbed")
    return Decomposition(tuple(elements))


def k5_like_parts(k: Graph) -> tuple[VertexCycle, object]:
    """Split K5⁻ into (5-cycle, path) or K5 into (5-cycle, 5-cycle)."""
    vs = k.vertices()
    if len(vs) != 5 or k.m not in (9, 10):
        raise NotK5Like(f"graph with {len(vs)} vertices and {k.m} edges")
    if k.m == 10:
        a, b, c, d, e = vs
        return VertexCycle((a, b, c, d, e)), VertexCycle((a, c, e, b, d))
    s, t = next((u, w) for i, u in enumerate(vs) for w in vs[i + 1:] if not k.has_edge(u, w))
    p, q, r = [v for v in vs if v not in (s, t)]
    return VertexCycle((s, p, t, q, r)), VertexPath((s, q, p, r, t))


def absorb_k5_like(p: VertexPath, k: Graph) -> Decomposition:
    """Decompose p + K5 (or K5⁻) into three paths."""
    cycle, other = k5_like_parts(k)
    if set(p.edges()) & k.edge_set():
        raise NotDisjoint("path uses an edge of the K5-like block")
    first = two_path_split(p, cycle)
    if isinstance(other, VertexPath):
        return Decomposition((first.p1, first.p2, other))
    second = two_path_split(first.p1, other)
    return Decomposition((first.p2, second.p1, second.p2))


# ============================================================================
# K5⁻ SUBDIVISIONS
# ============================================================================

def _chains(g: Graph, branch: set[int]) -> list[list[int]]:
    chains = []
    seen: set[Edge] = set()
    for a in sorted(branch):
        for w in g.neighbors(a):
            if edge(a, w) in seen:
                continue
            walk = [a, w]
            seen.add(edge(a, w))
            while walk[-1] not in branch:
                nxt = [x for x in g.neighbors(walk[-1]) if x != walk[-2]]
                if len(nxt) != 1 or nxt[0] in walk[:-1] and nxt[0] not in branch:
                    raise NotK5MinusSubdivision("degree-2 vertex chain does not close")
                walk.append(nxt[0])
                seen.add(edge(walk[-2], walk[-1]))
            chains.append(walk)
    return chains


def decompose_k5minus_subdivision(g: Graph) -> Decomposition:
    """
    Two paths covering a proper subdivision of K5⁻.

    One subdivided chain keeps a vertex w; the template for a single
    subdivided edge is applied and every other chain is expanded in place.
    """
    vs = g.vertices()
    deg3 = [v for v in vs if g.degree(v) == 3]
    deg4 = [v for v in vs if g.degree(v) == 4]
    if len(deg3) != 2 or len(deg4) != 3 or any(g.degree(v) not in (2, 3, 4) for v in vs):
        raise NotK5MinusSubdivision("degree profile is not a K5⁻ subdivision")
    branch = set(deg3) | set(deg4)
    chains = _chains(g, branch)
    by_pair: dict[frozenset, list[int]] = {}
    for ch in chains:
        key = frozenset((ch[0], ch[-1]))
        if len(key) != 2 or key in by_pair:
            raise NotK5MinusSubdivision("branch vertices do not form K5⁻")
        by_pair[key] = ch
    if len(by_pair) != 9 or frozenset(deg3) in by_pair or sum(len(ch) - 1 for ch in chains) != g.m:
        raise NotK5MinusSubdivision("branch vertices do not form K5⁻")
    subdivided = [ch for ch in sorted(by_pair.values(), key=lambda c: (min(c[0], c[-1]), max(c[0], c[-1])))
                  if len(ch) > 2]
    if not subdivided:
        raise NotK5MinusSubdivision("no subdivided edge")

    chain = subdivided[0]
    a, b = chain[0], chain[-1]
    if a in deg4 and b in deg3:
        chain = chain[::-1]
        a, b = b, a
    w = chain[1]
    if a in deg3:
        u, x = a, b
        v = next(t for t in deg3 if t != u)
        y, z = [t for t in deg4 if t != x]
        templates = [(w, x, y, v, z, u), (w, u, y, z, x, v)]
        tail = {u: chain[1::-1], x: chain[1:]}
    else:
        y, z = a, b
        x = next(t for t in deg4 if t not in (y, z))
        u, v = deg3
        templates = [(w, z, x, v, y, u), (w, y, x, u, z, v)]
        tail = {y: chain[1::-1], z: chain[1:]}

    def link(s: int, t: int) -> list[int]:
        ch = by_pair[frozenset((s, t))]
        return ch if ch[0] == s else ch[::-1]

    paths = []
    for template in templates:
        walk = list(tail[template[1]])
        for s, t in zip(template[1:], template[2:]):
            walk.extend(link(s, t)[1:])
        paths.append(VertexPath(tuple(walk)))
    return Decomposition(tuple(paths))
