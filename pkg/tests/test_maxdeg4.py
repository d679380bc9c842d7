import logging
import unittest
from itertools import permutations
from unittest.mock import patch

from hypothesis import given, settings, strategies as st

from edgedecomp.config import EndgameConfig
from edgedecomp.errors import (
    EndpointMismatch,
    MaxDegreeExceeded,
    NotEdgeDisjoint,
    NotEulerian,
    PreconditionViolated,
)
from edgedecomp.graph import (
    Graph,
    SpecialKind,
    VertexPath,
    edge,
    gallai_bound,
    hajos_bound,
    verify_decomposition,
)
from edgedecomp.k4 import PAIRS, K4Subdivision, find_k4_subdivision
from edgedecomp.lab.generators import Family, GenSpec, generate, special_graph
from edgedecomp.maxdeg4 import (
    CIRCUITS,
    _MaxDeg4CycleSolver,
    circuit_candidate,
    closing_paths,
    decompose_cycles_maxdeg4,
    decompose_paths_maxdeg4,
    double_paths_cycles,
    hamiltonian_small,
    iter_closing_paths,
    iter_hamiltonian_cycles,
    single_crossing_candidate,
    six_circuit_report,
)
from edgedecomp.reduce import Paths, Special
from edgedecomp.telemetry import StepTrace


def union_of(*paths):
    edges = {e for p in paths for e in p.edges()}
    n = max(v for p in paths for v in p.vertices) + 1
    return Graph.from_edges(n, sorted(edges))


def plain_k4():
    """K4 on 0..3 with direct edges as its six paths."""
    return K4Subdivision((0, 1, 2, 3), PAIRS)


def circulant_9():
    return Graph.from_edges(9, [edge(i, (i + k) % 9) for i in range(9) for k in (1, 2)])


class TestDoublePaths(unittest.TestCase):

    def test_one_shared_vertex(self):
        p1 = VertexPath((0, 1, 2, 3))
        p2 = VertexPath((0, 4, 2, 5, 3))
        d = double_paths_cycles(p1, p2)
        self.assertEqual([c.vertices for c in d], [(0, 1, 2, 4), (2, 3, 5)])
        self.assertTrue(verify_decomposition(union_of(p1, p2), d))

    def test_crossing_paths(self):
        p1 = VertexPath((0, 1, 2, 3))
        p2 = VertexPath((0, 2, 4, 1, 3))
        d = double_paths_cycles(p1, p2)
        self.assertLessEqual(len(d), 3)
        self.assertTrue(verify_decomposition(union_of(p1, p2), d))

    def test_reversed_second_path(self):
        p1 = VertexPath((0, 1, 2))
        p2 = VertexPath((2, 3, 0))
        d = double_paths_cycles(p1, p2)
        self.assertEqual(len(d), 1)
        self.assertEqual(d.kind, "cycles")

    def test_ends_must_match(self):
        with self.assertRaises(EndpointMismatch):
            double_paths_cycles(VertexPath((0, 1, 2)), VertexPath((0, 3, 4)))

    def test_paths_must_be_edge_disjoint(self):
        with self.assertRaises(NotEdgeDisjoint):
            double_paths_cycles(VertexPath((0, 1, 2)), VertexPath((0, 1, 3, 2)))


@settings(max_examples=40, deadline=None)
@given(
    first=st.lists(st.integers(2, 9), unique=True, max_size=6),
    second=st.lists(st.integers(2, 9), unique=True, max_size=6),
)
def test_double_paths_stay_within_shared_count(first, second):
    p1 = VertexPath(tuple([0] + first + [1]))
    p2 = VertexPath(tuple([0] + second + [1]))
    if set(p1.edges()) & set(p2.edges()):
        return
    d = double_paths_cycles(p1, p2)
    assert verify_decomposition(union_of(p1, p2), d)
    assert len(d) <= len(set(first) & set(second)) + 1


def test_double_paths_on_every_small_gadget():
    labels = range(2, 7)
    for k in range(len(labels) + 1):
        p1 = VertexPath((0,) + tuple(labels[:k]) + (1,))
        for size in range(len(labels) + 1):
            for inner in permutations(labels, size):
                p2 = VertexPath((0,) + inner + (1,))
                if set(p1.edges()) & set(p2.edges()):
                    continue
                d = double_paths_cycles(p1, p2)
                assert verify_decomposition(union_of(p1, p2), d)
                assert len(d) <= len(set(p1.vertices[1:-1]) & set(inner)) + 1


class TestHamiltonian(unittest.TestCase):

    def test_counts(self):
        c5 = Graph.from_edges(5, [edge(i, (i + 1) % 5) for i in range(5)])
        self.assertEqual(len(list(iter_hamiltonian_cycles(c5))), 1)
        self.assertEqual(len(list(iter_hamiltonian_cycles(special_graph("K4")))), 3)
        self.assertEqual(len(list(iter_hamiltonian_cycles(special_graph("K5")))), 12)

    def test_petersen_is_not_hamiltonian(self):
        self.assertEqual(list(iter_hamiltonian_cycles(special_graph("Petersen"))), [])
        self.assertIsNone(hamiltonian_small(special_graph("Petersen")))

    def test_found_cycle_spans(self):
        g = special_graph("octahedron")
        cycle = hamiltonian_small(g)
        self.assertEqual(sorted(cycle.vertices), list(range(6)))
        self.assertTrue(all(g.has_edge(u, v) for u, v in cycle.edges()))


class TestSixCircuits(unittest.TestCase):

    def test_report_on_k5(self):
        g = special_graph("K5")
        h, q1, q2 = closing_paths(g, find_k4_subdivision(g))
        self.assertEqual(sorted(q1.ends + q2.ends), sorted(h.branch))
        report = six_circuit_report(h, q1, q2)
        self.assertTrue(report.identity_holds())
        self.assertEqual(report.sigma, 0)
        self.assertEqual(sum(report.r), 16)
        self.assertEqual(len(report.s), 12)
        self.assertEqual(len(CIRCUITS), 6)

    def test_first_candidate_covers_k5(self):
        g = special_graph("K5")
        h, q1, q2 = closing_paths(g, find_k4_subdivision(g))
        d = circuit_candidate(h, q1, q2, 0)
        self.assertEqual(len(d), 2)
        self.assertTrue(verify_decomposition(g, d))

    def test_single_crossing_needs_one_crossing(self):
        g = special_graph("K5")
        h, q1, q2 = closing_paths(g, find_k4_subdivision(g))
        with self.assertRaises(PreconditionViolated):
            single_crossing_candidate(h, q1, q2, six_circuit_report(h, q1, q2))


    def test_each_pairing_at_the_extra_vertex(self):
        found = list(iter_closing_paths(special_graph("K5"), plain_k4()))
        self.assertEqual(len(found), 3)
        pairings = set()
        for h, q1, q2 in found:
            self.assertEqual(q1.ends, h.branch[:2])
            self.assertEqual(q2.ends, h.branch[2:])
            pairings.add(frozenset((frozenset(q1.ends), frozenset(q2.ends))))
        self.assertEqual(len(pairings), 3)

    def test_forced_pairing(self):
        h, q1, q2 = closing_paths(special_graph("K5"), plain_k4(), (0, 2, 1, 3))
        self.assertEqual(h.branch, (3, 1, 0, 2))
        self.assertEqual((q1.vertices, q2.vertices), ((3, 4, 1), (0, 4, 2)))

    def test_next_pairing_after_a_failed_one(self):
        g = special_graph("K5")

        def own_pairing_fails(graph, h, pairing=None):
            if pairing is None:
                raise PreconditionViolated("cycles through the extra vertex do not pair it")
            return closing_paths(graph, h, pairing)

        trace = StepTrace()
        with patch("edgedecomp.maxdeg4.closing_paths", side_effect=own_pairing_fails):
            self.assertEqual(len(list(iter_closing_paths(g, plain_k4()))), 3)
            d = _MaxDeg4CycleSolver(EndgameConfig(), trace)._six_circuits(g)
        self.assertEqual(len(d), 2)
        self.assertTrue(verify_decomposition(g, d))
        self.assertEqual(trace.steps, ["SixCircuit:D1"])


class TestPathDriver(unittest.TestCase):

    def test_specials(self):
        for name, kind in (("K3", SpecialKind.K3), ("K5", SpecialKind.K5), ("K5minus", SpecialKind.K5_MINUS)):
            self.assertEqual(decompose_paths_maxdeg4(special_graph(name)), Special(kind))

    def test_degree_five_rejected(self):
        star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
        with self.assertRaises(MaxDegreeExceeded):
            decompose_paths_maxdeg4(star)

    def test_petersen(self):
        g = special_graph("Petersen")
        outcome = decompose_paths_maxdeg4(g)
        self.assertIsInstance(outcome, Paths)
        self.assertLessEqual(len(outcome.decomposition), gallai_bound(g))

    def test_octahedron(self):
        g = special_graph("octahedron")
        trace = StepTrace()
        outcome = decompose_paths_maxdeg4(g, trace=trace)
        self.assertTrue(verify_decomposition(g, outcome.decomposition))
        self.assertLessEqual(len(outcome.decomposition), 3)
        self.assertGreater(len(trace), 0)


class TestCycleDriver(unittest.TestCase):

    def test_k5_takes_two_cycles(self):
        g = special_graph("K5")
        d = decompose_cycles_maxdeg4(g)
        self.assertEqual(len(d), 2)
        self.assertTrue(verify_decomposition(g, d))

    def test_octahedron(self):
        g = special_graph("octahedron")
        d = decompose_cycles_maxdeg4(g)
        self.assertLessEqual(len(d), hajos_bound(g))
        self.assertTrue(verify_decomposition(g, d))

    def test_circulant_above_hamiltonian_size(self):
        g = circulant_9()
        d = decompose_cycles_maxdeg4(g)
        self.assertLessEqual(len(d), hajos_bound(g))
        self.assertTrue(verify_decomposition(g, d))

    def test_odd_degree_rejected(self):
        with self.assertRaises(NotEulerian):
            decompose_cycles_maxdeg4(special_graph("K4"))

    def test_exact_search_is_tagged_and_logged(self):
        g = special_graph("K5")
        trace = StepTrace()
        with patch("edgedecomp.maxdeg4.iter_hamiltonian_cycles", side_effect=lambda h: iter(())):
            with self.assertLogs("edgedecomp.maxdeg4", level=logging.WARNING):
                d = decompose_cycles_maxdeg4(g, trace=trace)
        self.assertEqual(len(d), 2)
        self.assertIn("ExactFallback", trace.histogram())

    def test_degree_six_rejected(self):
        k7 = Graph.from_edges(7, [(u, v) for u in range(7) for v in range(u + 1, 7)])
        with self.assertRaises(MaxDegreeExceeded):
            decompose_cycles_maxdeg4(k7)


@settings(max_examples=12, deadline=None)
@given(n=st.integers(6, 16), seed=st.integers(0, 100_000))
def test_max_deg4_family_meets_path_bound(n, seed):
    g = generate(GenSpec(Family.MAX_DEG4, n=n, seed=seed))
    outcome = decompose_paths_maxdeg4(g)
    if isinstance(outcome, Special):
        assert outcome.kind in (SpecialKind.K3, SpecialKind.K5, SpecialKind.K5_MINUS)
        return
    assert verify_decomposition(g, outcome.decomposition)
    assert len(outcome.decomposition) <= gallai_bound(g)


@settings(max_examples=12, deadline=None)
@given(n=st.integers(5, 14), seed=st.integers(0, 100_000))
def test_eulerian_family_meets_cycle_bound(n, seed):
    g = generate(GenSpec(Family.EULERIAN_MAX_DEG4, n=n, seed=seed))
    d = decompose_cycles_maxdeg4(g)
    assert verify_decomposition(g, d)
    assert len(d) <= hajos_bound(g)
