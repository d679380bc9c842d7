"""
Decompositions of graphs with maximum degree 4.

Paths: at most floor(n/2) paths for connected graphs other than K3, K5 and
K5⁻. Graphs without a K4-subdivision go through the treewidth-3 driver;
otherwise a small K4-subdivision H is found and the edges of G - E(H) at
its branch vertices decide which reducing subgraph is built around H.

Cycles: at most floor((n-1)/2) cycles for connected Eulerian graphs. After
splitting into blocks and removing reducing cycles through degree-2
vertices, small blocks use a Hamiltonian cycle and larger ones the six
circuit decompositions of H plus two closing paths.
"""

import logging
from dataclasses import dataclass
from functools import partial
from itertools import permutations
from typing import Iterator, Optional

from edgedecomp.config import EndgameConfig, OracleCaps
from edgedecomp.errors import (
    BoundViolated,
    DecompositionError,
    EndpointMismatch,
    InputClassError,
    MaxDegreeExceeded,
    NotConnected,
    NotEdgeDisjoint,
    NotEulerian,
    PreconditionViolated,
    ReducingSubgraphInvalid,
    UnreachableCase,
)
from edgedecomp.gallai_tw3 import (
    Candidate,
    _path,
    _path_ending_at,
    _Tw3Solver,
    _without,
    endgame_decompose,
)
from edgedecomp.graph import (
    Decomposition,
    Graph,
    SpecialKind,
    VertexCycle,
    VertexPath,
    bridges_and_blocks,
    cycle_from_edges,
    cycle_through_pair,
    edge,
    euler_cycle_partition,
    gallai_bound,
    hajos_bound,
    shortest_path,
    verify_decomposition,
)
from edgedecomp.hajos_tw3 import block_bound_total, decompose_cycles_tw3
from edgedecomp.k4 import PAIRS, K4Subdivision, find_k4_subdivision
from edgedecomp.lab.oracle import bounded_cycle_decomposition, exact_path_number
from edgedecomp.reduce import (
    Outcome,
    Paths,
    ReducingSubgraph,
    Special,
    apply_cycle_reducing,
)
from edgedecomp.split import decompose_k5minus_subdivision
from edgedecomp.telemetry import ReductionStep, StepTrace, log_custom_event

logger = logging.getLogger(__name__)

MAX_DEGREE = 4
HAMILTONIAN_LIMIT = 12
SMALL_CYCLE_ORDER = 8

# Orders x_a, x_b, x_c, x_d of a Hamiltonian path of K4, one per reversal pair
ROUTE_ORDERS = tuple(p for p in permutations(range(4)) if p[0] < p[3])


def _check_max_degree(g: Graph) -> None:
    if g.max_degree() > MAX_DEGREE:
        worst = max(g.vertices(), key=g.degree)
        raise MaxDegreeExceeded(f"vertex {worst} has degree {g.degree(worst)}")


def _chain(h: K4Subdivision, order: list[int]) -> list[int]:
    """Concatenation of P_{order[0],order[1]}, P_{order[1],order[2]}, ..."""
    walk = [h.branch[order[0]]]
    for i, j in zip(order, order[1:]):
        walk.extend(h.path(i, j)[1:])
    return walk


def _branch_tails(g: Graph, h: K4Subdivision) -> list[Optional[int]]:
    """z_i for each branch vertex: the other end of its edge outside H, if any."""
    h_edges = h.edges()
    tails = []
    for x in h.branch:
        extra = [w for w in g.neighbors(x) if edge(x, w) not in h_edges]
        tails.append(extra[0] if extra else None)
    return tails


def _with_tails(walk: list[int], head: Optional[int], tail: Optional[int]) -> list[int]:
    if head is not None and head not in walk:
        walk = [head] + walk
    if tail is not None and tail not in walk:
        walk = walk + [tail]
    return walk


# ============================================================================
# PATHS
# ============================================================================

class _MaxDeg4Solver(_Tw3Solver):
    """Path driver; sub-graphs without a K4-subdivision go to the treewidth-3 solver."""

    def __init__(self, cfg: EndgameConfig, trace: StepTrace):
        super().__init__(cfg, trace)
        self.tw3 = _Tw3Solver(cfg, trace)

    def _small_case(self, g: Graph, kind: SpecialKind) -> Outcome:
        if kind in (SpecialKind.K3, SpecialKind.K5, SpecialKind.K5_MINUS):
            self.trace.record(ReductionStep.SPECIAL_GRAPH, kind.value)
            return Special(kind)
        _, d = exact_path_number(g)
        self.trace.record(ReductionStep.SMALL_CASE)
        return Paths(d)

    def _candidates(self, g: Graph) -> Iterator[Candidate]:
        yield from self._bridge_candidates(g)

        h = find_k4_subdivision(g)
        if h is None:
            yield ReductionStep.K4_FREE_ROUTE, None, partial(self._k4_free, g)
        else:
            yield from self._k4_candidates(g, h)

        yield from self._local_candidates(g)
        yield from self._reducing_path_search(g)
        if g.order <= self.cfg.max_vertices:
            yield ReductionStep.EXACT_FALLBACK, None, partial(endgame_decompose, g, self.cfg)

    def _k4_free(self, g: Graph) -> Decomposition:
        outcome = self.tw3.solve(g)
        if isinstance(outcome, Special):
            raise PreconditionViolated(f"graph is {outcome.kind.value}")
        return outcome.decomposition

    def _k4_candidates(self, g: Graph, h: K4Subdivision) -> Iterator[Candidate]:
        step = ReductionStep.K4_CASE
        tails = _branch_tails(g, h)
        for order in ROUTE_ORDERS:
            yield step, "two-routes", partial(self._two_routes, g, h, tails, order)
        yield step, "k5minus", partial(self._k5minus_extension, g, h, tails)
        yield step, "shared-tail", partial(self._shared_tail, g, h, tails)

    def _two_routes(self, g: Graph, h: K4Subdivision, tails: list[Optional[int]],
                    order: tuple[int, int, int, int]) -> Decomposition:
        """
        Q = z_a x_a + P_ab + P_bc + P_cd + x_d z_d and
        Q' = z_b x_b + P_bd + P_da + P_ac + x_c z_c cover H + S.
        """
        a, b, c, d = order
        first = _with_tails(_chain(h, [a, b, c, d]), tails[a], tails[d])
        second = _with_tails(_chain(h, [b, d, a, c]), tails[b], tails[c])
        witness = Decomposition((_path(first), _path(second)))
        return self._reduce(g, ReducingSubgraph.build(g, witness.edges(), 2, witness))

    def _k5minus_extension(self, g: Graph, h: K4Subdivision, tails: list[Optional[int]]) -> Decomposition:
        """Three branch vertices share their outside neighbour z, so H + S holds a K5⁻-subdivision."""
        shared = [z for z in set(tails) if z is not None and tails.count(z) == 3 and z not in h.vertices]
        if not shared:
            raise PreconditionViolated("no outside vertex joined to three branch vertices")
        z = shared[0]
        trio = [i for i in range(4) if tails[i] == z]
        d = next(i for i in range(4) if i not in trio)
        h_prime = g.edge_subgraph(h.edges() | {edge(h.branch[i], z) for i in trio})
        if h_prime.order == 5:
            return self._k5minus_core(g, h_prime, z, [h.branch[i] for i in trio], h.branch[d])

        pair = decompose_k5minus_subdivision(h_prime)
        xd = h.branch[d]
        index, p = _path_ending_at(pair, xd)
        elements = _without(pair, index)
        if tails[d] is not None and tails[d] not in p.vertices:
            p = VertexPath(p.vertices + (tails[d],))
        witness = Decomposition(tuple(elements + [p]))
        return self._reduce(g, ReducingSubgraph.build(g, witness.edges(), 2, witness))

    def _k5minus_core(self, g: Graph, k: Graph, z: int, trio: list[int], xd: int) -> Decomposition:
        """H + S is K5⁻ itself; z and x_d are its two non-adjacent vertices."""
        xa, xb, xc = trio
        rest = g.remove_edges(k.edges())
        if rest.m == 0:
            raise PreconditionViolated("graph is K5 minus an edge")
        route = shortest_path(rest, [z], [xd])
        if route is None:
            pendants = {w: rest.neighbors(w) for w in (z, xd) if rest.degree(w) > 0}
            if not pendants:
                raise PreconditionViolated("no edge leaves the K5 minus an edge")
            if len(pendants) == 2:
                walk = shortest_path(g, [pendants[xd][0]], [pendants[z][0]])
                if walk is None:
                    raise PreconditionViolated("pendant ends are not connected")
                p = _path(walk)
                return self._reduce(g, ReducingSubgraph.build(g, p.edges(), 1, Decomposition((p,))))
            (p_end, others), = pendants.items()
            if rest.m != 1:
                raise PreconditionViolated("pendant side is larger than one edge")
            q_end = xd if p_end == z else z
            return Decomposition((
                _path([others[0], p_end, xc, xb, q_end, xa]),
                _path([p_end, xb, xa, xc, q_end]),
                _path([xa, p_end]),
            ))
        if len(route) == 2:
            raise PreconditionViolated("z and x_d are adjacent")

        inner = route[1]
        used = set(k.edges()) | set(VertexPath(tuple(route)).edges())
        spare = [w for w in g.neighbors(inner) if edge(inner, w) not in used]
        y1 = spare[0] if spare else None
        y2 = spare[1] if len(spare) > 1 else None
        first = ([y1] if y1 is not None else []) + route[1:] + [xc, xb, xa]
        second = ([y2] if y2 is not None else []) + [inner, z, xc, xa, xd]
        witness = Decomposition((_path(first), _path(second), _path([xa, z, xb, xd])))
        return self._reduce(g, ReducingSubgraph.build(g, witness.edges(), 3, witness))

    def _shared_tail(self, g: Graph, h: K4Subdivision, tails: list[Optional[int]]) -> Decomposition:
        """z_a lies inside P_bc and the other three branch vertices share z."""
        owner = h.owner()
        inside = [i for i in range(4) if tails[i] in owner]
        if len(inside) != 1:
            raise PreconditionViolated("need exactly one branch edge landing inside H")
        a = inside[0]
        b, c = owner[tails[a]]
        if a in (b, c):
            raise PreconditionViolated("edge closes onto its own path")
        d = next(i for i in range(4) if i not in (a, b, c))
        z = tails[b]
        if z is None or z in h.vertices or tails[c] != z or tails[d] != z:
            raise PreconditionViolated("outside ends are not shared")
        za = tails[a]
        q1 = [za] + _chain(h, [a, b, d, c]) + [z]
        q2 = [z] + _chain(h, [b, c, a, d])
        if g.has_edge(za, z):
            witness = Decomposition((_path(q1), _path(q2), _path([za, z, h.branch[d]])))
            r = 3
        else:
            used = h.edges() | set(VertexPath(tuple(q1)).edges())
            spare = [w for w in g.neighbors(za) if edge(za, w) not in used]
            if spare:
                q1 = [spare[0]] + q1
            witness = Decomposition((_path(q1), _path(q2)))
            r = 2
        return self._reduce(g, ReducingSubgraph.build(g, witness.edges(), r, witness))


def decompose_paths_maxdeg4(g: Graph, cfg: EndgameConfig = EndgameConfig(),
                            trace: Optional[StepTrace] = None) -> Outcome:
    """
    Decompose a connected graph with maximum degree 4 into at most floor(n/2) paths.

    Args:
        g: Connected graph, every degree at most 4
        cfg: Cap for the exact fallback
        trace: Collects the reduction steps when given

    Returns:
        Paths(decomposition) or Special(K3 | K5 | K5minus)
    """
    if not g.is_connected():
        raise NotConnected("graph must be connected")
    _check_max_degree(g)
    trace = trace if trace is not None else StepTrace()
    outcome = _MaxDeg4Solver(cfg, trace).solve(g)
    if isinstance(outcome, Special):
        log_custom_event("decomposition_completed", {"driver": "maxdeg4", "special": outcome.kind.value},
                         {"n": g.order})
        return outcome
    d = outcome.decomposition
    verdict = verify_decomposition(g, d)
    if not verdict or len(d) > gallai_bound(g):
        raise UnreachableCase(f"path output failed: {verdict.reason or 'bound'}",
                              {"n": g.n, "edges": [list(e) for e in g.edges()]})
    log_custom_event("decomposition_completed", {"driver": "maxdeg4", "kind": "paths"},
                     {"n": g.order, "size": len(d), "bound": gallai_bound(g), "steps": len(trace)})
    return outcome


# ============================================================================
# DOUBLE PATHS AND HAMILTONIAN CYCLES
# ============================================================================

def double_paths_cycles(p1: VertexPath, p2: VertexPath) -> Decomposition:
    """
    Split two edge-disjoint paths with the same ends into at most |S| + 1 cycles,
    S being their common internal vertices.

    Args:
        p1: Path from x to y
        p2: Path joining x and y (either orientation)

    Returns:
        Decomposition: Cycles covering the edges of both paths
    """
    if p2.ends != p1.ends:
        if p2.ends[::-1] != p1.ends:
            raise EndpointMismatch(f"ends {p1.ends} and {p2.ends} differ")
        p2 = p2.reversed()
    if set(p1.edges()) & set(p2.edges()):
        raise NotEdgeDisjoint("paths share an edge")

    a, b = list(p1.vertices), list(p2.vertices)
    cycles = []
    while True:
        common = set(a[1:-1]) & set(b[1:-1])
        if not common:
            cycles.append(VertexCycle(tuple(a) + tuple(b[-2:0:-1])))
            break
        # the shared vertex nearest to y along p1 closes the last cycle
        i = max(a.index(w) for w in common)
        j = b.index(a[i])
        cycles.append(VertexCycle(tuple(a[i:]) + tuple(b[-2:j:-1])))
        a, b = a[:i + 1], b[:j + 1]
    return Decomposition(tuple(reversed(cycles)))


def iter_hamiltonian_cycles(g: Graph) -> Iterator[VertexCycle]:
    """Hamiltonian cycles of the non-isolated part of ``g``, each once."""
    vs = g.vertices()
    if len(vs) < 3:
        return
    start = vs[0]
    total = len(vs)
    walk = [start]
    on_walk = {start}

    def stuck() -> bool:
        # every unvisited vertex still needs two usable neighbours
        for w in vs:
            if w in on_walk:
                continue
            free = sum(1 for x in g.adjacency[w] if x not in on_walk or x in (start, walk[-1]))
            if free < 2:
                return True
        return False

    def extend() -> Iterator[VertexCycle]:
        if len(walk) == total:
            if g.has_edge(walk[-1], start) and walk[1] < walk[-1]:
                yield VertexCycle(tuple(walk))
            return
        for w in g.neighbors(walk[-1]):
            if w in on_walk:
                continue
            walk.append(w)
            on_walk.add(w)
            if not stuck():
                yield from extend()
            walk.pop()
            on_walk.discard(w)

    yield from extend()


def hamiltonian_small(g: Graph) -> Optional[VertexCycle]:
    """A Hamiltonian cycle of a graph on at most 12 vertices, or None."""
    if g.order > HAMILTONIAN_LIMIT:
        logger.warning(f"⚠️ Hamiltonian search on {g.order} vertices, above {HAMILTONIAN_LIMIT}")
    return next(iter_hamiltonian_cycles(g), None)


# ============================================================================
# SIX CIRCUIT DECOMPOSITIONS
# ============================================================================

@dataclass(frozen=True)
class SixCircuitReport:
    """
    s[(k, i, j)]: internal vertices of P_ij on Q_k (k in 0, 1; i < j),
    sigma: their total, r: the six candidate sizes.
    """
    s: dict
    sigma: int
    r: tuple[int, int, int, int, int, int]

    def identity_holds(self) -> bool:
        return sum(self.r) == 16 + 2 * self.sigma


def _counter(s: dict, k: int, i: int, j: int) -> int:
    return s[(k, min(i, j), max(i, j))]


def six_circuit_report(h: K4Subdivision, q1: VertexPath, q2: VertexPath) -> SixCircuitReport:
    """Counters for Q1 joining x1, x2 and Q2 joining x3, x4 (indices 0..3)."""
    s = {}
    for k, q in enumerate((q1, q2)):
        on_q = set(q.vertices)
        for i, j in PAIRS:
            s[(k, i, j)] = sum(1 for w in h.interior(i, j) if w in on_q)
    c = partial(_counter, s)
    r = (
        2 + c(0, 0, 3) + c(0, 3, 2) + c(0, 2, 1) + c(1, 2, 0) + c(1, 0, 1) + c(1, 1, 3),
        2 + c(0, 0, 2) + c(0, 2, 3) + c(0, 3, 1) + c(1, 2, 1) + c(1, 1, 0) + c(1, 0, 3),
        3 + c(0, 0, 1) + c(1, 2, 1) + c(1, 1, 3),
        3 + c(0, 0, 1) + c(1, 2, 0) + c(1, 0, 3),
        3 + c(0, 0, 2) + c(0, 2, 1) + c(1, 2, 3),
        3 + c(0, 0, 3) + c(0, 3, 1) + c(1, 2, 3),
    )
    return SixCircuitReport(s, sum(s.values()), r)


# (Q1 chain, Q2 chain, closed P-triangle) per candidate, branch indices 0..3
CIRCUITS = (
    ([0, 3, 2, 1], [2, 0, 1, 3], None),
    ([0, 2, 3, 1], [2, 1, 0, 3], None),
    ([0, 1], [2, 1, 3], [0, 2, 3, 0]),
    ([0, 1], [2, 0, 3], [1, 2, 3, 1]),
    ([0, 2, 1], [2, 3], [0, 3, 1, 0]),
    ([0, 3, 1], [2, 3], [0, 2, 1, 0]),
)


def circuit_candidate(h: K4Subdivision, q1: VertexPath, q2: VertexPath, index: int) -> Decomposition:
    """Candidate ``index`` (0..5) as cycles."""
    first, second, triangle = CIRCUITS[index]
    cycles = list(double_paths_cycles(q1, VertexPath(tuple(_chain(h, first)))).elements)
    cycles += double_paths_cycles(q2, VertexPath(tuple(_chain(h, second)))).elements
    if triangle is not None:
        cycles.append(VertexCycle(tuple(_chain(h, triangle)[:-1])))
    return Decomposition(tuple(cycles))


# the three ways to split the branch indices into two pairs at the extra vertex
HUB_PAIRINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


def closing_paths(g: Graph, h: K4Subdivision,
                  pairing: Optional[tuple[int, int, int, int]] = None) -> tuple[K4Subdivision, VertexPath, VertexPath]:
    """
    Q1, Q2 from the cycles through an extra vertex joined to the branch
    vertices in a cycle partition of g - E(H); H relabelled so Q1 joins
    x1, x2 and Q2 joins x3, x4.

    ``pairing`` (a, b, c, d) forces one closing path between branch a and b
    and the other between c and d; the extra vertex is split in two for
    that and the partition must keep the halves on different cycles.
    """
    rest = g.remove_edges(h.edges())
    if pairing is None:
        rest, hub = rest.with_vertex()
        rest = rest.add_edges([(hub, x) for x in h.branch])
        hubs = {hub}
    else:
        a, b, c, d = (h.branch[i] for i in pairing)
        rest, first = rest.with_vertex()
        rest, second = rest.with_vertex()
        rest = rest.add_edges([(first, a), (first, b), (second, c), (second, d)])
        hubs = {first, second}
    through = [cyc for cyc in euler_cycle_partition(rest) if hubs & set(cyc.vertices)]
    if len(through) != 2:
        raise PreconditionViolated(f"{len(through)} cycles pass the extra vertex")
    paths = []
    for cyc in through:
        k = next(i for i, x in enumerate(cyc.vertices) if x in hubs)
        paths.append(list(cyc.vertices[k + 1:] + cyc.vertices[:k]))
    index = {x: i for i, x in enumerate(h.branch)}
    order = [index[paths[0][0]], index[paths[0][-1]], index[paths[1][0]], index[paths[1][-1]]]
    if sorted(order) != [0, 1, 2, 3]:
        raise PreconditionViolated("closing paths do not pair the branch vertices")
    return h.relabel(order), VertexPath(tuple(paths[0])), VertexPath(tuple(paths[1]))


def iter_closing_paths(g: Graph, h: K4Subdivision) -> Iterator[tuple[K4Subdivision, VertexPath, VertexPath]]:
    """The partition's own pairing first, then each forced pairing not seen yet."""
    seen = set()
    for pairing in (None,) + HUB_PAIRINGS:
        try:
            found = closing_paths(g, h, pairing)
        except PreconditionViolated as exc:
            logger.debug(f"pairing {pairing} skipped: {exc}")
            continue
        key = frozenset(frozenset(q.edges()) for q in found[1:])
        if key not in seen:
            seen.add(key)
            yield found


def _split_at(q: VertexPath, w: int) -> tuple[list[int], list[int]]:
    k = q.vertices.index(w)
    return list(q.vertices[:k + 1]), list(q.vertices[k:])


def _shared_inside(r: list[int], q: VertexPath) -> int:
    on_q = set(q.vertices[1:-1])
    return sum(1 for x in r[1:-1] if x in on_q)


def single_crossing_candidate(h: K4Subdivision, q1: VertexPath, q2: VertexPath,
                              report: SixCircuitReport) -> Decomposition:
    """
    Q1 meets P_34 in exactly one internal vertex w and nothing else of H.
    R1 = Q1(x1, w), R2 = Q1(w, x2) with t1 <= t2.
    """
    if report.s[(1, 0, 1)] == 1 and report.s[(0, 2, 3)] != 1:
        h, q1, q2 = h.relabel([2, 3, 0, 1]), q2, q1
        report = six_circuit_report(h, q1, q2)
    if report.s[(0, 2, 3)] != 1 or report.sigma != 1:
        raise PreconditionViolated("closing paths do not cross H exactly once")
    (w,) = [x for x in h.interior(2, 3) if x in q1.vertices]
    r1, r2 = _split_at(q1, w)
    if _shared_inside(r1, q2) > _shared_inside(r2, q2):
        h, q1 = h.relabel([1, 0, 2, 3]), q1.reversed()
        r1, r2 = _split_at(q1, w)
    t1 = _shared_inside(r1, q2)

    p34 = h.path(2, 3)
    k = p34.index(w)
    # R2 + P32 + P31 + P14 + P34(x4, w)
    loop = r2 + h.path(1, 2)[1:] + h.path(2, 0)[1:] + h.path(0, 3)[1:] + p34[k + 1:-1][::-1]
    cycle = VertexCycle(tuple(loop))
    # R1 against P12 + P24 + Q2 (reversed) + P34(x3, w)
    other = h.path(0, 1) + h.path(1, 3)[1:] + list(q2.vertices[::-1][1:]) + p34[1:k + 1]
    rest = double_paths_cycles(VertexPath(tuple(r1)), VertexPath(tuple(other)))
    if len(rest) > t1 + 1:
        raise PreconditionViolated(f"{len(rest)} cycles on the crossing side, t1 = {t1}")
    return Decomposition((cycle,) + rest.elements)


# ============================================================================
# CYCLES
# ============================================================================

class _MaxDeg4CycleSolver:

    def __init__(self, cfg: EndgameConfig, trace: StepTrace):
        self.cfg = cfg
        self.trace = trace

    def solve(self, g: Graph) -> Decomposition:
        if g.m == 0:
            return Decomposition(())
        _, blocks = bridges_and_blocks(g)
        if len(blocks) > 1:
            if block_bound_total(blocks) > hajos_bound(g):
                raise BoundViolated(f"block bounds sum to {block_bound_total(blocks)} > {hajos_bound(g)}")
            self.trace.record(ReductionStep.BLOCK_SPLIT, str(len(blocks)))
            return Decomposition(tuple(el for b in blocks for el in self._block(b).elements))
        return self._block(g)

    def _block(self, g: Graph) -> Decomposition:
        if g.max_degree() == 2:
            cycle = cycle_from_edges(g.edges())
            if cycle is None:
                raise UnreachableCase("2-regular block is not a cycle", {"edges": [list(e) for e in g.edges()]})
            self.trace.record(ReductionStep.SMALL_CASE)
            return Decomposition((cycle,))

        low = [w for w in g.vertices() if g.degree(w) == 2]
        if len(low) >= 2:
            cycle = cycle_through_pair(g, low[0], low[1])
            rs = ReducingSubgraph.build(g, cycle.edges(), 1, Decomposition((cycle,)))
            self.trace.record(ReductionStep.REDUCING_CYCLE, f"{low[0]}-{low[1]}")
            return apply_cycle_reducing(g, rs, self.solve)

        attempts = []
        if g.order <= SMALL_CYCLE_ORDER:
            attempts.append((ReductionStep.HAMILTONIAN_SMALL, self._hamiltonian))
        elif find_k4_subdivision(g, improve=False) is None:
            attempts.append((ReductionStep.K4_FREE_ROUTE, partial(decompose_cycles_tw3, trace=self.trace)))
        else:
            attempts.append((ReductionStep.SIX_CIRCUIT, self._six_circuits))
        attempts.append((ReductionStep.EXACT_FALLBACK, self._exact))

        for step, build in attempts:
            try:
                d = build(g)
            except (DecompositionError, InputClassError) as exc:
                logger.debug(f"{step.value} skipped: {exc}")
                continue
            if verify_decomposition(g, d) and len(d) <= hajos_bound(g):
                if step is ReductionStep.EXACT_FALLBACK:
                    logger.warning(f"⚠️ exact search covered a block on {g.order} vertices")
                self.trace.record(step)
                return d
            logger.warning(f"⚠️ {step.value} produced {len(d)} cycles on {g.order} vertices")
        raise UnreachableCase(f"no cycle construction applies to a block on {g.order} vertices",
                              {"n": g.n, "edges": [list(e) for e in g.edges()], "steps": self.trace.steps[-20:]})

    def _hamiltonian(self, g: Graph) -> Decomposition:
        bound = hajos_bound(g)
        for cycle in iter_hamiltonian_cycles(g):
            rest = g.remove_edges(cycle.edges())
            d = Decomposition((cycle,) + tuple(euler_cycle_partition(rest)))
            if len(d) <= bound:
                return d
        raise PreconditionViolated("no Hamiltonian cycle leaves few enough cycles")

    def _exact(self, g: Graph) -> Decomposition:
        if g.order > self.cfg.max_vertices:
            raise PreconditionViolated(f"{g.order} vertices above the exact cap")
        caps = OracleCaps(vertices=self.cfg.max_vertices, edges=max(g.m, 1))
        found = bounded_cycle_decomposition(g, hajos_bound(g), caps)
        if found is None:
            raise PreconditionViolated("no cycle decomposition within the bound")
        return found

    def _six_circuits(self, g: Graph) -> Decomposition:
        k4 = find_k4_subdivision(g)
        if k4 is None:
            raise PreconditionViolated("no K4-subdivision")
        for h, q1, q2 in iter_closing_paths(g, k4):
            try:
                case, d, rs = self._pick_circuits(g, h, q1, q2)
            except DecompositionError as exc:
                logger.debug(f"closing paths {q1.ends} {q2.ends} skipped: {exc}")
                continue
            if case is None:
                self.trace.record(ReductionStep.SIX_CIRCUIT_SPECIAL)
            else:
                self.trace.record(ReductionStep.SIX_CIRCUIT, case)
            return d if rs is None else apply_cycle_reducing(g, rs, self.solve)
        raise PreconditionViolated("no pairing at the extra vertex gives a usable candidate")

    def _pick_circuits(self, g: Graph, h: K4Subdivision, q1: VertexPath,
                       q2: VertexPath) -> tuple[Optional[str], Decomposition, Optional[ReducingSubgraph]]:
        """First usable candidate for one pair of closing paths; ``None`` case is the single-crossing one."""
        report = six_circuit_report(h, q1, q2)
        logger.debug(f"six circuit counters sigma={report.sigma} r={report.r}")
        if not report.identity_holds():
            logger.warning(f"⚠️ six circuit sizes {report.r} do not add up for sigma = {report.sigma}")
            raise PreconditionViolated("six circuit identity failed")

        h_star = h.edges() | set(q1.edges()) | set(q2.edges())
        whole = h_star == g.edge_set()
        for index in range(len(CIRCUITS)):
            try:
                d = circuit_candidate(h, q1, q2, index)
            except DecompositionError as exc:
                logger.debug(f"candidate D{index + 1} skipped: {exc}")
                continue
            if whole:
                if len(d) <= hajos_bound(g) and verify_decomposition(g, d):
                    return f"D{index + 1}", d, None
                continue
            try:
                return f"D{index + 1}", d, ReducingSubgraph.build(g, h_star, len(d), d)
            except ReducingSubgraphInvalid:
                continue

        if whole:
            raise PreconditionViolated(f"no candidate within the bound, sigma = {report.sigma}")
        if report.sigma >= 2:
            logger.warning(f"⚠️ six circuit candidates exhausted with sigma = {report.sigma}")
        d = single_crossing_candidate(h, q1, q2, report)
        return None, d, ReducingSubgraph.build(g, h_star, len(d), d)


def decompose_cycles_maxdeg4(g: Graph, cfg: EndgameConfig = EndgameConfig(),
                             trace: Optional[StepTrace] = None) -> Decomposition:
    """
    Decompose a connected Eulerian graph with maximum degree 4 into cycles.

    Args:
        g: Connected graph, every degree 2 or 4
        cfg: Cap for the exact fallback
        trace: Collects the reduction steps when given

    Returns:
        Decomposition: All cycles, at most floor((n-1)/2) of them
    """
    if not g.is_connected():
        raise NotConnected("graph must be connected")
    if not g.is_even():
        raise NotEulerian(f"vertex {g.odd_vertices()[0]} has odd degree")
    _check_max_degree(g)
    trace = trace if trace is not None else StepTrace()
    d = _MaxDeg4CycleSolver(cfg, trace).solve(g)
    verdict = verify_decomposition(g, d)
    if not verdict or len(d) > hajos_bound(g):
        raise UnreachableCase(f"cycle output failed: {verdict.reason or 'bound'}",
                              {"n": g.n, "edges": [list(e) for e in g.edges()]})
    log_custom_event("decomposition_completed", {"driver": "maxdeg4", "kind": "cycles"},
                     {"n": g.order, "size": len(d), "bound": hajos_bound(g), "steps": len(trace)})
    return d
