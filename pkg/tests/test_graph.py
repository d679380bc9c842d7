import math
import unittest

import pytest
from hypothesis import given, settings, strategies as st

from edgedecomp.errors import InvalidGraph, NotTwoConnected, OddVertex
from edgedecomp.graph import (
    Decomposition,
    EdgeCutKind,
    Graph,
    SpecialKind,
    VertexCycle,
    VertexPath,
    bridges_and_blocks,
    cycle_from_edges,
    cycle_through_pair,
    disjoint_paths,
    edge,
    euler_cycle_partition,
    gallai_bound,
    girth,
    hajos_bound,
    k44_minus_pm,
    path_from_edges,
    recognize_special,
    shortest_path,
    two_edge_cuts,
    verify_decomposition,
)


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return Graph.from_edges(n, [edge(i, (i + 1) % n) for i in range(n)])


class TestGraphConstruction(unittest.TestCase):
    """Validation and basic queries."""

    def test_rejects_loop(self):
        with self.assertRaises(InvalidGraph):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_duplicate_edge(self):
        with self.assertRaises(InvalidGraph):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with self.assertRaises(InvalidGraph):
            Graph.from_edges(3, [(0, 3)])

    def test_degrees_and_edges(self):
        g = complete(4)
        self.assertEqual(g.m, 6)
        self.assertEqual(g.max_degree(), 3)
        self.assertEqual(g.neighbors(2), [0, 1, 3])
        self.assertEqual(g.odd_vertices(), [0, 1, 2, 3])
        self.assertFalse(g.is_even())

    def test_bounds_ignore_isolated_vertices(self):
        g = Graph.from_edges(10, [(0, 1)])
        self.assertEqual(g.order, 2)
        self.assertEqual(gallai_bound(g), 1)
        self.assertEqual(hajos_bound(g), 0)

    def test_components_keep_ids(self):
        g = Graph.from_edges(6, [(0, 1), (4, 5)])
        self.assertFalse(g.is_connected())
        self.assertEqual(g.components(), [[0, 1], [4, 5]])
        self.assertEqual([c.edges() for c in g.component_graphs()], [[(0, 1)], [(4, 5)]])

    def test_with_vertex_appends_isolated_vertex(self):
        h, v = cycle(4).with_vertex()
        self.assertEqual(v, 4)
        self.assertEqual(h.n, 5)
        self.assertEqual(h.degree(v), 0)


class TestVerifyDecomposition(unittest.TestCase):
    """The checker accepts partitions and names the first violation."""

    def setUp(self):
        self.k4 = complete(4)
        self.paths = Decomposition((VertexPath((0, 1, 2, 3)), VertexPath((2, 0, 3, 1))))

    def test_accepts_valid_paths(self):
        verdict = verify_decomposition(self.k4, self.paths)
        self.assertTrue(verdict)
        self.assertEqual(self.paths.kind, "paths")

    def test_missing_edge(self):
        verdict = verify_decomposition(self.k4, Decomposition(self.paths.elements[:1]))
        self.assertFalse(verdict)
        self.assertEqual(verdict.reason, "missing edge")

    def test_duplicate_edge(self):
        d = self.paths + Decomposition((VertexPath((0, 1)),))
        verdict = verify_decomposition(self.k4, d)
        self.assertFalse(verdict)
        self.assertEqual(verdict.element, 2)

    def test_non_adjacent_step(self):
        g = cycle(4)
        verdict = verify_decomposition(g, Decomposition((VertexPath((0, 2)),)))
        self.assertEqual(verdict.reason, "non-adjacent step")

    def test_repeated_vertex(self):
        g = cycle(4)
        verdict = verify_decomposition(g, Decomposition((VertexPath((0, 1, 2, 3, 0)),)))
        self.assertEqual(verdict.reason, "repeated vertex")

    def test_cycle_of_c5(self):
        self.assertTrue(verify_decomposition(cycle(5), Decomposition((VertexCycle((0, 1, 2, 3, 4)),))))


class TestElementRecovery(unittest.TestCase):

    def test_path_from_edges(self):
        p = path_from_edges([(2, 3), (0, 1), (1, 2)])
        self.assertEqual(p.vertices, (0, 1, 2, 3))

    def test_path_from_edges_rejects_branching(self):
        self.assertIsNone(path_from_edges([(0, 1), (0, 2), (0, 3)]))

    def test_cycle_from_edges(self):
        c = cycle_from_edges(cycle(5).edges())
        self.assertEqual(sorted(c.vertices), [0, 1, 2, 3, 4])
        self.assertIsNone(cycle_from_edges([(0, 1), (1, 2)]))


class TestSearchHelpers(unittest.TestCase):

    def test_shortest_path_respects_forbidden(self):
        g = cycle(6)
        self.assertEqual(shortest_path(g, [0], [2]), [0, 1, 2])
        self.assertEqual(shortest_path(g, [0], [2], forbidden=[1]), [0, 5, 4, 3, 2])
        self.assertIsNone(shortest_path(g, [0], [3], forbidden=[1, 5]))

    def test_disjoint_paths_in_k4(self):
        paths = disjoint_paths(complete(4), 0, [3])
        self.assertEqual(len(paths), 3)
        interiors = [set(p[1:-1]) for p in paths]
        self.assertEqual(sum(len(i) for i in interiors), len(set().union(*interiors)))

    def test_cycle_through_pair(self):
        c = cycle_through_pair(cycle(5), 0, 2)
        self.assertEqual(len(c), 5)

    def test_cycle_through_pair_needs_two_paths(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        with self.assertRaises(NotTwoConnected):
            cycle_through_pair(g, 0, 2)


class TestCutsAndBlocks(unittest.TestCase):

    def test_useful_bridge_between_triangles(self):
        g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
        cuts, blocks = bridges_and_blocks(g)
        self.assertEqual(cuts, [((2, 3), EdgeCutKind.USEFUL_BRIDGE)])
        self.assertEqual(len(blocks), 2)

    def test_pendant_edge_is_useless(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        cuts, _ = bridges_and_blocks(g)
        self.assertEqual(cuts, [((2, 3), EdgeCutKind.USELESS_BRIDGE)])

    def test_every_pair_of_c4_edges_is_a_cut(self):
        self.assertEqual(len(two_edge_cuts(cycle(4))), 6)

    def test_k4_has_no_two_edge_cut(self):
        self.assertEqual(two_edge_cuts(complete(4)), [])


class TestEulerAndSpecials(unittest.TestCase):

    def test_bowtie_partition(self):
        g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        cycles = euler_cycle_partition(g)
        self.assertTrue(verify_decomposition(g, Decomposition(cycles)))

    def test_odd_vertex_rejected(self):
        with self.assertRaises(OddVertex):
            euler_cycle_partition(complete(4))

    def test_recognize_special(self):
        self.assertEqual(recognize_special(complete(3)), SpecialKind.K3)
        self.assertEqual(recognize_special(complete(5)), SpecialKind.K5)
        self.assertEqual(recognize_special(complete(5).remove_edges([(0, 1)])), SpecialKind.K5_MINUS)
        self.assertEqual(recognize_special(k44_minus_pm()), SpecialKind.K44_MINUS_PM)
        self.assertEqual(recognize_special(cycle(6)), SpecialKind.NONE)

    def test_girth(self):
        self.assertEqual(girth(cycle(6)), 6)
        self.assertEqual(girth(complete(4)), 3)
        self.assertEqual(girth(Graph.from_edges(3, [(0, 1), (1, 2)])), math.inf)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_complete_odd_graph_splits_into_cycles(n):
    g = complete(n)
    assert verify_decomposition(g, Decomposition(euler_cycle_partition(g)))


@settings(max_examples=40, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda e: e[0] < e[1]), min_size=1))
def test_single_edge_paths_always_verify(edges):
    g = Graph.from_edges(8, sorted(edges))
    d = Decomposition(tuple(VertexPath(e) for e in g.edges()))
    assert verify_decomposition(g, d)
    assert not verify_decomposition(g, Decomposition(d.elements[1:]))
