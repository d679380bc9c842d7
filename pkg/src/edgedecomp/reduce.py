"""
Reducing subgraphs, liftings and the reducing-subgraph recursion.

A reducing subgraph H of G comes with r and a witness decomposition of H of
size at most r, and G - E(H) has at least 2r isolated vertices. Removing
H and decomposing what is left keeps the total within the bound.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from edgedecomp.errors import (
    BoundViolated,
    EdgeNotInDecomposition,
    InvalidLift,
    NotK5MinusSubdivision,
    PreconditionViolated,
    ReducingSubgraphInvalid,
    SideConditionViolated,
)
from edgedecomp.graph import (
    Decomposition,
    Edge,
    Graph,
    SpecialKind,
    VertexCycle,
    VertexPath,
    cycle_from_edges,
    edge,
    gallai_bound,
    hajos_bound,
    recognize_special,
    verify_decomposition,
)
from edgedecomp.split import (
    absorb_k5_like,
    absorb_short_cycles,
    decompose_k5minus_subdivision,
    two_path_split,
)

logger = logging.getLogger(__name__)


# ============================================================================
# OUTCOMES
# ============================================================================

@dataclass(frozen=True)
class Paths:
    decomposition: Decomposition


@dataclass(frozen=True)
class Special:
    kind: SpecialKind


Outcome = Union[Paths, Special]
PathRecurse = Callable[[Graph], Outcome]
CycleRecurse = Callable[[Graph], Decomposition]


# ============================================================================
# REDUCING SUBGRAPHS
# ============================================================================

def isolated_by_removal(g: Graph, edges: Iterable[Edge]) -> list[int]:
    """Non-isolated vertices of g that lose all their edges when ``edges`` go."""
    removed: dict[int, int] = {}
    for u, v in edges:
        removed[u] = removed.get(u, 0) + 1
        removed[v] = removed.get(v, 0) + 1
    return sorted(v for v, k in removed.items() if k == g.degree(v))


@dataclass(frozen=True)
class ReducingSubgraph:
    edges: frozenset[Edge]
    r: int
    witness: Decomposition
    isolated: tuple[int, ...]

    @classmethod
    def build(cls, g: Graph, edges: Iterable[Edge], r: int, witness: Decomposition) -> "ReducingSubgraph":
        """
        Validate and attach a reducing subgraph to host ``g``.

        Raises:
            ReducingSubgraphInvalid: when the witness, size or isolation check fails
        """
        es = frozenset(edge(u, v) for u, v in edges)
        if r < 1:
            raise ReducingSubgraphInvalid(f"r must be positive, got {r}")
        if not es <= g.edge_set():
            raise ReducingSubgraphInvalid("edges are not in the host graph")
        verdict = verify_decomposition(g.edge_subgraph(es), witness)
        if not verdict:
            raise ReducingSubgraphInvalid(f"witness does not verify: {verdict.reason} at {verdict.edge}")
        if len(witness) > r:
            raise ReducingSubgraphInvalid(f"witness has {len(witness)} elements, r = {r}")
        isolated = isolated_by_removal(g, es)
        if len(isolated) < 2 * r:
            raise ReducingSubgraphInvalid(f"only {len(isolated)} isolated vertices for r = {r}")
        return cls(es, r, witness, tuple(isolated))


def absorb_special_components(g: Graph, rs: ReducingSubgraph) -> ReducingSubgraph:
    """Fold K3, K5 and K5⁻ components of g - E(H) into H (r grows by 1 or 2 each)."""
    rest = g.remove_edges(rs.edges)
    triangles: list[VertexCycle] = []
    k5s: list[Graph] = []
    h_vertices = {v for e in rs.edges for v in e}
    for comp in rest.component_graphs():
        kind = recognize_special(comp)
        if kind not in (SpecialKind.K3, SpecialKind.K5, SpecialKind.K5_MINUS):
            continue
        if not set(comp.vertices()) & h_vertices:
            raise PreconditionViolated(f"component {comp.vertices()} of the host is special")
        if kind == SpecialKind.K3:
            triangles.append(VertexCycle(tuple(comp.vertices())))
        else:
            k5s.append(comp)
    if not triangles and not k5s:
        return rs

    witness = absorb_short_cycles(rs.witness, triangles) if triangles else rs.witness
    elements = list(witness.elements)
    for k in k5s:
        index = next(i for i, el in enumerate(elements) if set(el.vertices) & set(k.vertices()))
        elements[index:index + 1] = list(absorb_k5_like(elements[index], k).elements)
    edges = set(rs.edges)
    for t in triangles:
        edges.update(t.edges())
    for k in k5s:
        edges.update(k.edges())
    r = rs.r + len(triangles) + 2 * len(k5s)
    logger.debug(f"absorbed {len(triangles)} triangles and {len(k5s)} K5-like components, r = {r}")
    return ReducingSubgraph.build(g, edges, r, Decomposition(tuple(elements)))


def apply_path_reducing(g: Graph, rs: ReducingSubgraph, recurse: PathRecurse) -> Decomposition:
    """Witness of H plus recursive decompositions of the components of g - E(H)."""
    elements = list(rs.witness.elements)
    for comp in g.remove_edges(rs.edges).component_graphs():
        outcome = recurse(comp)
        if isinstance(outcome, Special):
            raise PreconditionViolated(f"component {comp.vertices()} is {outcome.kind.value}")
        elements.extend(outcome.decomposition.elements)
    result = Decomposition(tuple(elements))
    if len(result) > gallai_bound(g):
        raise BoundViolated(f"{len(result)} paths exceed {gallai_bound(g)} on {g.order} vertices")
    return result


def apply_cycle_reducing(g: Graph, rs: ReducingSubgraph, recurse: CycleRecurse) -> Decomposition:
    """Cycle variant: bound is floor((n - 1) / 2)."""
    elements = list(rs.witness.elements)
    for comp in g.remove_edges(rs.edges).component_graphs():
        elements.extend(recurse(comp).elements)
    result = Decomposition(tuple(elements))
    if len(result) > hajos_bound(g):
        raise BoundViolated(f"{len(result)} cycles exceed {hajos_bound(g)} on {g.order} vertices")
    return result


# ============================================================================
# LIFTINGS
# ============================================================================

@dataclass(frozen=True)
class Lift:
    """Lifting of xv, vy at v."""
    x: int
    v: int
    y: int

    @property
    def new_edge(self) -> Edge:
        return edge(self.x, self.y)


def apply_lift(g: Graph, lift: Lift) -> Graph:
    x, v, y = lift.x, lift.v, lift.y
    if len({x, v, y}) != 3 or not (g.has_edge(x, v) and g.has_edge(v, y)) or g.has_edge(x, y):
        raise InvalidLift(f"lifting {x}-{v}-{y} is not valid")
    return g.remove_edges([(x, v), (v, y)]).add_edges([(x, y)])


def _insert(vertices: tuple[int, ...], x: int, v: int, y: int, cyclic: bool) -> Optional[tuple[int, ...]]:
    k = len(vertices)
    pairs = range(k) if cyclic else range(k - 1)
    for i in pairs:
        a, b = vertices[i], vertices[(i + 1) % k]
        if {a, b} == {x, y}:
            return vertices[:i + 1] + (v,) + vertices[i + 1:]
    return None


def unlift_decomposition(d: Decomposition, lift: Lift) -> Decomposition:
    """Replace the traversal of xy by x-v-y in the element that uses it."""
    elements = list(d.elements)
    for i, el in enumerate(elements):
        cyclic = isinstance(el, VertexCycle)
        replaced = _insert(el.vertices, lift.x, lift.v, lift.y, cyclic)
        if replaced is None:
            continue
        if lift.v in el.vertices:
            raise InvalidLift(f"vertex {lift.v} already on the element using {lift.new_edge}")
        elements[i] = VertexCycle(replaced) if cyclic else VertexPath(replaced)
        return Decomposition(tuple(elements))
    raise EdgeNotInDecomposition(f"edge {lift.new_edge} not in decomposition")


def _component_witness(component: Graph, lifts: list[Lift], recurse: PathRecurse) -> tuple[Decomposition, Optional[VertexCycle]]:
    """
    Decompose C = C' - lifts from the decomposition of C'.

    Returns (paths of C, None) or (empty, cycle C) when C' is a triangle.
    """
    unlifted = component
    for lift in lifts:
        unlifted = unlifted.remove_edges([lift.new_edge]).add_edges([(lift.x, lift.v), (lift.v, lift.y)])
    outcome = recurse(component)
    if isinstance(outcome, Paths):
        d = outcome.decomposition
        for lift in lifts:
            d = unlift_decomposition(d, lift)
        return d, None
    if outcome.kind == SpecialKind.K5_MINUS:
        return decompose_k5minus_subdivision(unlifted), None
    if outcome.kind == SpecialKind.K3:
        cycle = cycle_from_edges(unlifted.edges())
        if cycle is None:
            raise NotK5MinusSubdivision("unlifted triangle is not a cycle")
        return Decomposition(()), cycle
    raise PreconditionViolated(f"lifted component is {outcome.kind.value}")


def _lifting_reduce(g: Graph, p: VertexPath, lifts: list[Lift], recurse: PathRecurse) -> ReducingSubgraph:
    lifted = g.remove_edges(p.edges())
    for lift in lifts:
        lifted = apply_lift(lifted, lift)
    for lift in lifts:
        if lifted.degree(lift.v) != 0:
            raise PreconditionViolated(f"apex {lift.v} keeps edges after lifting")
    isolated = [v for v in g.vertices() if lifted.degree(v) == 0]
    if len(isolated) < 2:
        raise PreconditionViolated("fewer than two vertices isolated after lifting")

    groups: dict[tuple[int, ...], list[Lift]] = {}
    components = {}
    for lift in lifts:
        comp = next(c for c in lifted.components() if lift.x in c)
        key = tuple(comp)
        groups.setdefault(key, []).append(lift)
        components[key] = comp

    elements: list = [p]
    cycles: list[VertexCycle] = []
    edges = set(p.edges())
    r = 1
    for key, group in groups.items():
        component = lifted.subgraph(components[key])
        d, cycle = _component_witness(component, group, recurse)
        r += len(components[key]) // 2
        comp_edges = set(component.edges()) - {lift.new_edge for lift in group}
        for lift in group:
            comp_edges |= {edge(lift.x, lift.v), edge(lift.v, lift.y)}
        edges |= comp_edges
        if cycle is not None:
            cycles.append(cycle)
        else:
            elements.extend(d.elements)

    witness = Decomposition(tuple(elements))
    for cycle in cycles:
        if len(cycle) <= 4:
            witness = absorb_short_cycles(witness, [cycle])
        else:
            index = next(i for i, el in enumerate(witness.elements) if set(el.vertices) & set(cycle.vertices))
            split = two_path_split(witness.elements[index], cycle)
            witness = Decomposition(witness.elements[:index] + (split.p1, split.p2) + witness.elements[index + 1:])
    return ReducingSubgraph.build(g, edges, r, witness)


def simple_lifting_reduce(g: Graph, p: VertexPath, lift: Lift, recurse: PathRecurse) -> ReducingSubgraph:
    """H = P + (C' - lift) with r = floor(|V(C')| / 2) + 1."""
    if not {lift.x, lift.v, lift.y} & set(p.vertices):
        raise PreconditionViolated("lifting triple does not meet the path")
    return _lifting_reduce(g, p, [lift], recurse)


def double_lifting_reduce(g: Graph, p: VertexPath, l1: Lift, l2: Lift, recurse: PathRecurse,
                          require_side_condition: bool = True) -> ReducingSubgraph:
    """Two liftings at distinct apexes; one or two lifted components."""
    if l1.v == l2.v:
        raise PreconditionViolated("lifting apexes must differ")
    on_path = set(p.vertices)
    if not {l1.x, l1.v, l1.y} & on_path or not {l2.x, l2.v, l2.y} & on_path:
        raise PreconditionViolated("lifting triple does not meet the path")
    if require_side_condition:
        if len({l2.x, l2.y} & g.adjacency[l1.v]) > 1 or len({l1.x, l1.y} & g.adjacency[l2.v]) > 1:
            raise SideConditionViolated("lifted pairs share too many neighbours with the other apex")
    return _lifting_reduce(g, p, [l1, l2], recurse)


def merge_through_edge(p1: VertexPath, p2: VertexPath, v1: int, v2: int) -> VertexPath:
    """Join a path ending ..v1 v2 with one starting v1 v2.. into one path."""
    a = p1.vertices if p1.vertices[-2:] == (v1, v2) else p1.vertices[::-1]
    b = p2.vertices if p2.vertices[:2] == (v1, v2) else p2.vertices[::-1]
    if a[-2:] != (v1, v2) or b[:2] != (v1, v2):
        raise PreconditionViolated(f"paths do not both traverse {v1}-{v2} at their ends")
    return VertexPath(a + b[2:])
