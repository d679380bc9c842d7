import unittest

from hypothesis import given, settings, strategies as st

from edgedecomp.errors import GirthTooSmall, NotConnected, StructuralAssumptionViolated
from edgedecomp.graph import Graph, edge, gallai_bound, verify_decomposition
from edgedecomp.lab.generators import Family, GenSpec, generate, special_graph
from edgedecomp.planar6 import decompose_paths_planar6, low_degree_vertices, reducing_path
from edgedecomp.telemetry import StepTrace


def cycle(n):
    return Graph.from_edges(n, [edge(i, (i + 1) % n) for i in range(n)])


def heawood():
    """Cubic, girth 6, not planar."""
    ring = [edge(i, (i + 1) % 14) for i in range(14)]
    chords = [edge(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, ring + chords)


class TestReducingPath(unittest.TestCase):

    def test_ends_are_extended(self):
        p = reducing_path(cycle(6))
        self.assertEqual(p.vertices, (5, 0, 1, 2))

    def test_low_degree_vertices(self):
        star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
        self.assertEqual(low_degree_vertices(star), [1, 2, 3, 4])

    def test_cubic_graph_has_no_low_vertex(self):
        with self.assertRaises(StructuralAssumptionViolated):
            reducing_path(heawood())

    def test_two_low_vertices_are_not_enough(self):
        g = heawood().remove_edges([(0, 1)])
        self.assertEqual(low_degree_vertices(g), [0, 1])
        with self.assertRaises(StructuralAssumptionViolated):
            reducing_path(g)
        with self.assertRaises(StructuralAssumptionViolated):
            decompose_paths_planar6(g)

    def test_single_edge(self):
        self.assertEqual(reducing_path(Graph.from_edges(2, [(0, 1)])).vertices, (0, 1))


class TestPlanarDriver(unittest.TestCase):

    def test_six_cycle(self):
        g = cycle(6)
        trace = StepTrace()
        d = decompose_paths_planar6(g, trace=trace)
        self.assertTrue(verify_decomposition(g, d))
        self.assertLessEqual(len(d), 3)
        self.assertEqual(set(trace.histogram()), {"LowDegreePath"})

    def test_tree(self):
        star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
        d = decompose_paths_planar6(star)
        self.assertEqual(len(d), 2)
        self.assertTrue(verify_decomposition(star, d))

    def test_short_cycle_rejected(self):
        with self.assertRaises(GirthTooSmall):
            decompose_paths_planar6(special_graph("K4"))
        with self.assertRaises(GirthTooSmall):
            decompose_paths_planar6(special_graph("Petersen"))

    def test_disconnected_rejected(self):
        with self.assertRaises(NotConnected):
            decompose_paths_planar6(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_non_planar_input_is_reported(self):
        with self.assertRaises(StructuralAssumptionViolated):
            decompose_paths_planar6(heawood())


@settings(max_examples=20, deadline=None)
@given(n=st.integers(2, 40), seed=st.integers(0, 100_000))
def test_hex_fragments_meet_the_bound(n, seed):
    g = generate(GenSpec(Family.HEX_GRID_FRAGMENT, n=n, seed=seed))
    d = decompose_paths_planar6(g)
    assert verify_decomposition(g, d)
    assert len(d) <= gallai_bound(g)
