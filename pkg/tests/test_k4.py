import unittest

from hypothesis import given, settings, strategies as st

from edgedecomp.graph import Graph, edge
from edgedecomp.k4 import (
    PAIRS,
    find_k4_subdivision,
    is_locally_minimal,
    subdivision_from_edges,
)
from edgedecomp.lab.generators import Family, GenSpec, generate, special_graph


def subdivided_k4() -> Graph:
    """K4 on 0..3 with the edge 0-1 replaced by 0-4-1."""
    es = [(i, j) for i, j in PAIRS if (i, j) != (0, 1)] + [(0, 4), (1, 4)]
    return Graph.from_edges(5, es)


class TestSubdivisionFromEdges(unittest.TestCase):

    def test_k4(self):
        h = subdivision_from_edges(special_graph("K4").edges())
        self.assertEqual(h.branch, (0, 1, 2, 3))
        self.assertEqual(h.edge_count(), 6)
        self.assertTrue(h.is_valid())

    def test_owner_of_subdivision_vertex(self):
        h = subdivision_from_edges(subdivided_k4().edges())
        self.assertEqual(h.path(0, 1), [0, 4, 1])
        self.assertEqual(h.path(1, 0), [1, 4, 0])
        self.assertEqual(h.owner(), {4: (0, 1)})

    def test_cycle_is_not_a_subdivision(self):
        self.assertIsNone(subdivision_from_edges([(0, 1), (1, 2), (2, 3), (0, 3)]))

    def test_relabel_swaps_branches(self):
        h = subdivision_from_edges(subdivided_k4().edges())
        swapped = h.relabel([1, 0, 2, 3])
        self.assertEqual(swapped.branch, (1, 0, 2, 3))
        self.assertEqual(swapped.path(0, 1), [1, 4, 0])
        self.assertTrue(swapped.is_valid(subdivided_k4()))


class TestFindSubdivision(unittest.TestCase):

    def test_none_in_series_parallel_graph(self):
        c6 = Graph.from_edges(6, [edge(i, (i + 1) % 6) for i in range(6)])
        self.assertIsNone(find_k4_subdivision(c6))
        self.assertIsNone(find_k4_subdivision(Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])))

    def test_subdivided_k4_found_whole(self):
        g = subdivided_k4()
        h = find_k4_subdivision(g)
        self.assertTrue(h.is_valid(g))
        self.assertEqual(h.edge_count(), 7)

    def test_k5_improves_to_plain_k4(self):
        g = special_graph("K5")
        h = find_k4_subdivision(g)
        self.assertTrue(h.is_valid(g))
        self.assertEqual(h.edge_count(), 6)
        self.assertTrue(is_locally_minimal(g, h))


@settings(max_examples=25, deadline=None)
@given(n=st.integers(5, 14), seed=st.integers(0, 10_000))
def test_found_subdivisions_live_in_the_graph(n, seed):
    g = generate(GenSpec(Family.MAX_DEG4, n=n, seed=seed))
    h = find_k4_subdivision(g)
    if h is not None:
        assert h.is_valid(g)
        assert h.edges() <= g.edge_set()
