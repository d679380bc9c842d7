import logging
import unittest
from unittest.mock import patch

from hypothesis import given, settings, strategies as st

from edgedecomp.config import EndgameConfig
from edgedecomp.errors import EndgameTooLarge, NotConnected, NotPartialThreeTree
from edgedecomp.gallai_tw3 import decompose_paths_tw3, endgame_decompose, k44_decomposition
from edgedecomp.graph import Graph, SpecialKind, edge, gallai_bound, verify_decomposition
from edgedecomp.lab.generators import Family, GenSpec, generate, special_graph
from edgedecomp.lab.oracle import exact_path_number
from edgedecomp.reduce import Paths, Special
from edgedecomp.telemetry import StepTrace


def assert_gallai(g, outcome):
    assert isinstance(outcome, Paths), outcome
    d = outcome.decomposition
    assert verify_decomposition(g, d)
    assert len(d) <= gallai_bound(g)
    return d


class TestSpecialInputs(unittest.TestCase):

    def test_triangle_is_special(self):
        self.assertEqual(decompose_paths_tw3(special_graph("K3")), Special(SpecialKind.K3))

    def test_k5_minus_is_special(self):
        self.assertEqual(decompose_paths_tw3(special_graph("K5minus")), Special(SpecialKind.K5_MINUS))

    def test_k5_is_outside_the_class(self):
        with self.assertRaises(NotPartialThreeTree):
            decompose_paths_tw3(special_graph("K5"))

    def test_octahedron_is_outside_the_class(self):
        with self.assertRaises(NotPartialThreeTree):
            decompose_paths_tw3(special_graph("octahedron"))

    def test_disconnected_input(self):
        with self.assertRaises(NotConnected):
            decompose_paths_tw3(Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]))


class TestEndgame(unittest.TestCase):

    def test_k44_minus_pm_takes_exactly_four_paths(self):
        g = special_graph("K44_minus_PM")
        d = k44_decomposition(g)
        self.assertEqual(len(d), 4)
        self.assertTrue(verify_decomposition(g, d))
        self.assertEqual(len(assert_gallai(g, decompose_paths_tw3(g))), 4)

    def test_k44_is_mapped_onto_relabelled_copy(self):
        g = special_graph("K44_minus_PM")
        perm = [3, 6, 0, 5, 7, 1, 4, 2]
        h = Graph.from_edges(8, [edge(perm[u], perm[v]) for u, v in g.edges()])
        self.assertTrue(verify_decomposition(h, k44_decomposition(h)))

    def test_endgame_cap(self):
        c6 = Graph.from_edges(6, [edge(i, (i + 1) % 6) for i in range(6)])
        with self.assertRaises(EndgameTooLarge):
            endgame_decompose(c6, EndgameConfig(max_vertices=4))
        self.assertLessEqual(len(endgame_decompose(c6)), 3)


class TestSmallGraphs(unittest.TestCase):

    def test_k4(self):
        g = special_graph("K4")
        self.assertEqual(len(assert_gallai(g, decompose_paths_tw3(g))), 2)

    def test_empty_graph(self):
        outcome = decompose_paths_tw3(Graph.empty(4))
        self.assertEqual(len(outcome.decomposition), 0)

    def test_cycle_and_trace(self):
        g = Graph.from_edges(8, [edge(i, (i + 1) % 8) for i in range(8)])
        trace = StepTrace()
        assert_gallai(g, decompose_paths_tw3(g, trace=trace))
        self.assertGreater(len(trace), 0)

    def test_two_triangles_joined_by_bridge(self):
        g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
        trace = StepTrace()
        assert_gallai(g, decompose_paths_tw3(g, trace=trace))
        self.assertIn("UsefulCutSplit", trace.histogram())

    def test_exact_search_is_tagged_and_logged(self):
        g = Graph.from_edges(8, [edge(i, (i + 1) % 8) for i in range(8)])
        def nothing(self, *args):
            return iter(())

        trace = StepTrace()
        with patch.multiple("edgedecomp.gallai_tw3._Tw3Solver", _bridge_candidates=nothing,
                            _local_candidates=nothing, _terminal_pair=nothing, _reducing_path_search=nothing), \
                patch("edgedecomp.gallai_tw3.double_centered_form", return_value=None):
            with self.assertLogs("edgedecomp.gallai_tw3", level=logging.WARNING):
                assert_gallai(g, decompose_paths_tw3(g, trace=trace))
        self.assertEqual(trace.steps, ["ExactFallback"])


@settings(max_examples=15, deadline=None)
@given(n=st.integers(6, 24), seed=st.integers(0, 100_000))
def test_partial_three_trees_are_gallai(n, seed):
    g = generate(GenSpec(Family.PARTIAL_THREE_TREE, n=n, seed=seed))
    if g.order < 6:
        return
    assert_gallai(g, decompose_paths_tw3(g))


@settings(max_examples=10, deadline=None)
@given(n=st.integers(6, 20), seed=st.integers(0, 100_000))
def test_three_trees_are_gallai(n, seed):
    g = generate(GenSpec(Family.THREE_TREE, n=n, seed=seed))
    assert_gallai(g, decompose_paths_tw3(g))


@settings(max_examples=10, deadline=None)
@given(n=st.integers(6, 16), seed=st.integers(0, 100_000))
def test_double_centered_are_gallai(n, seed):
    g = generate(GenSpec(Family.DOUBLE_CENTERED, n=n, seed=seed))
    assert_gallai(g, decompose_paths_tw3(g))


@settings(max_examples=10, deadline=None)
@given(n=st.integers(6, 9), seed=st.integers(0, 100_000))
def test_driver_between_oracle_and_bound(n, seed):
    g = generate(GenSpec(Family.PARTIAL_THREE_TREE, n=n, seed=seed))
    if g.order < 6:
        return
    d = assert_gallai(g, decompose_paths_tw3(g))
    pn, _ = exact_path_number(g)
    assert pn <= len(d)
