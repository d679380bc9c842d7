"""
Seeded instance generators.

Every family draws from ``numpy.random.Generator(PCG64(seed))``, so the
same GenSpec always yields the same edge list.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from edgedecomp.errors import InvalidSpec
from edgedecomp.graph import Graph, edge, k44_minus_pm

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "PCG64"
MAX_CYCLE_LENGTH = 8


class Family(str, Enum):
    THREE_TREE = "ThreeTree"
    PARTIAL_THREE_TREE = "PartialThreeTree"
    MAX_DEG4 = "MaxDeg4"
    EULERIAN_MAX_DEG4 = "EulerianMaxDeg4"
    HEX_GRID_FRAGMENT = "HexGridFragment"
    DOUBLE_CENTERED = "DoubleCentered"
    SPECIAL = "Special"


SPECIAL_NAMES = ("K3", "K4", "K5", "K5minus", "K44_minus_PM", "K6_minus_PM", "octahedron", "Petersen")


@dataclass(frozen=True)
class GenSpec:
    family: Family
    n: int = 0
    seed: int = 0
    keep_probability: float = 0.7
    name: Optional[str] = None


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _relabel(edges: list[tuple[int, int]]) -> Graph:
    ids = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(ids)}
    return Graph.from_edges(max(len(ids), 0), sorted(edge(index[u], index[v]) for u, v in edges))


# ============================================================================
# FAMILIES
# ============================================================================

def three_tree_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Grow from K3, attaching each new vertex to a uniformly chosen triangle."""
    edges = [(0, 1), (0, 2), (1, 2)]
    triangles = [(0, 1, 2)]
    for v in range(3, n):
        a, b, c = triangles[int(rng.integers(len(triangles)))]
        edges.extend([(a, v), (b, v), (c, v)])
        triangles.extend([(a, b, v), (a, c, v), (b, c, v)])
    return edges


def _largest_component(n: int, edges: list[tuple[int, int]]) -> Graph:
    g = Graph.from_edges(n, edges)
    comps = g.components()
    if not comps:
        return Graph.empty(0)
    best = max(comps, key=lambda c: (len(c), -c[0]))
    return _relabel(g.subgraph(best).edges())


def _max_deg4(n: int, rng: np.random.Generator) -> Graph:
    degree = [0] * n
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        choices = [u for u in range(v) if degree[u] < 4]
        u = choices[int(rng.integers(len(choices)))]
        edges.add(edge(u, v))
        degree[u] += 1
        degree[v] += 1
    extra = int(rng.integers(0, n + 1))
    for _ in range(4 * extra):
        if extra == 0:
            break
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or edge(u, v) in edges or degree[u] >= 4 or degree[v] >= 4:
            continue
        edges.add(edge(u, v))
        degree[u] += 1
        degree[v] += 1
        extra -= 1
    return Graph.from_edges(n, sorted(edges))


def _eulerian_max_deg4(n: int, rng: np.random.Generator) -> Graph:
    """
    Union of random cycles under the degree cap: disjoint short cycles over a
    shuffled vertex order, one joining cycle across them, then extra cycles
    through vertices that still have degree 2.
    """
    order = [int(x) for x in rng.permutation(n)]
    chunks: list[list[int]] = []
    while len(order) >= 3:
        size = int(rng.integers(3, MAX_CYCLE_LENGTH + 1))
        chunks.append(order[:size])
        order = order[size:]
    chunks[-1].extend(order)

    edges: set[tuple[int, int]] = set()
    degree = [0] * n

    def add_cycle(cycle: list[int]) -> bool:
        new = [edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        if len(set(new)) != len(new) or any(e in edges for e in new):
            return False
        edges.update(new)
        for v in cycle:
            degree[v] += 2
        return True

    for chunk in chunks:
        add_cycle(chunk)
    if len(chunks) == 2:
        (a1, b1), (a2, b2) = (rng.choice(c, size=2, replace=False).tolist() for c in chunks)
        add_cycle([a1, a2, b1, b2])
    elif len(chunks) > 2:
        add_cycle([int(c[int(rng.integers(len(c)))]) for c in chunks])

    for _ in range(int(rng.integers(0, n + 1))):
        free = [v for v in range(n) if degree[v] == 2]
        if len(free) < 3:
            break
        size = int(rng.integers(3, min(len(free), MAX_CYCLE_LENGTH) + 1))
        add_cycle([free[int(i)] for i in rng.choice(len(free), size=size, replace=False)])
    return Graph.from_edges(n, sorted(edges))


def _hex_fragment(n: int, rng: np.random.Generator) -> Graph:
    """Connected induced fragment of the brick-wall (honeycomb) lattice."""

    def neighbours(p: tuple[int, int]) -> list[tuple[int, int]]:
        x, y = p
        vertical = (x, y + 1) if (x + y) % 2 == 0 else (x, y - 1)
        return [(x - 1, y), (x + 1, y), vertical]

    chosen = [(0, 0)]
    inside = {(0, 0)}
    while len(chosen) < n:
        frontier = sorted({q for p in chosen for q in neighbours(p) if q not in inside})
        pick = frontier[int(rng.integers(len(frontier)))]
        chosen.append(pick)
        inside.add(pick)
    index = {p: i for i, p in enumerate(chosen)}
    edges = {edge(index[p], index[q]) for p in chosen for q in neighbours(p) if q in inside}
    return Graph.from_edges(n, sorted(edges))


def _double_centered(n: int, rng: np.random.Generator) -> Graph:
    a, b = n - 2, n - 1
    edges = [(a, b)]
    for v in range(n - 2):
        edges.extend([(v, a), (v, b)])
        if v > 0:
            edges.append((int(rng.integers(v)), v))
    return Graph.from_edges(n, edges)


def special_graph(name: str) -> Graph:
    """Fixed constructions by name."""
    if name == "K3":
        return Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    if name == "K4":
        return Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    if name == "K5":
        return Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    if name == "K5minus":
        return Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5) if (i, j) != (0, 1)])
    if name == "K44_minus_PM":
        return k44_minus_pm()
    if name == "K6_minus_PM":
        return Graph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 3])
    if name == "octahedron":
        return Graph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j - i != 3])
    if name == "Petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph.from_edges(10, [edge(u, v) for u, v in outer + spokes + inner])
    raise InvalidSpec(f"unknown special graph {name!r}; expected one of {', '.join(SPECIAL_NAMES)}")


def generate(spec: GenSpec) -> Graph:
    """
    Build the graph described by ``spec``.

    Args:
        spec: Family, target size, seed and family parameters

    Returns:
        Graph: Deterministic for a given spec
    """
    family = Family(spec.family)
    if family == Family.SPECIAL:
        return special_graph(spec.name or "")
    minimum = {Family.THREE_TREE: 3, Family.PARTIAL_THREE_TREE: 3, Family.MAX_DEG4: 2,
               Family.EULERIAN_MAX_DEG4: 3, Family.HEX_GRID_FRAGMENT: 2, Family.DOUBLE_CENTERED: 3}[family]
    if spec.n < minimum:
        raise InvalidSpec(f"{family.value} needs n >= {minimum}, got {spec.n}")
    if not 0.0 < spec.keep_probability <= 1.0:
        raise InvalidSpec(f"keep probability {spec.keep_probability} outside (0, 1]")

    rng = make_rng(spec.seed)
    if family == Family.THREE_TREE:
        return Graph.from_edges(spec.n, three_tree_edges(spec.n, rng))
    if family == Family.PARTIAL_THREE_TREE:
        full = three_tree_edges(spec.n, rng)
        keep = rng.random(len(full)) < spec.keep_probability
        return _largest_component(spec.n, [e for e, k in zip(full, keep) if k])
    if family == Family.MAX_DEG4:
        return _max_deg4(spec.n, rng)
    if family == Family.EULERIAN_MAX_DEG4:
        return _eulerian_max_deg4(spec.n, rng)
    if family == Family.HEX_GRID_FRAGMENT:
        return _hex_fragment(spec.n, rng)
    return _double_centered(spec.n, rng)
