import unittest

import pytest
from hypothesis import given, settings, strategies as st

from edgedecomp.config import OracleCaps
from edgedecomp.errors import CapExceeded, NotEvenGraph
from edgedecomp.graph import Graph, edge, gallai_bound, verify_decomposition
from edgedecomp.lab.generators import Family, GenSpec, generate, special_graph
from edgedecomp.lab.oracle import (
    bounded_cycle_decomposition,
    bounded_path_decomposition,
    exact_cycle_number,
    exact_path_number,
    lower_bound_cycles,
    lower_bound_paths,
)


class TestSpecialConstants(unittest.TestCase):
    """Path and cycle numbers of the small special graphs."""

    def test_path_number_of_k3(self):
        self.assertEqual(exact_path_number(special_graph("K3"))[0], 2)

    def test_path_number_of_k5(self):
        self.assertEqual(exact_path_number(special_graph("K5"))[0], 3)

    def test_path_number_of_k5_minus(self):
        self.assertEqual(exact_path_number(special_graph("K5minus"))[0], 3)

    def test_cycle_number_of_k5(self):
        cn, witness = exact_cycle_number(special_graph("K5"))
        self.assertEqual(cn, 2)
        self.assertEqual(witness.kind, "cycles")
        self.assertTrue(verify_decomposition(special_graph("K5"), witness))

    def test_k44_minus_pm_needs_four_paths(self):
        g = special_graph("K44_minus_PM")
        pn, witness = exact_path_number(g)
        self.assertEqual(pn, 4)
        self.assertEqual(pn, gallai_bound(g))
        self.assertTrue(verify_decomposition(g, witness))


class TestBoundsAndCaps(unittest.TestCase):

    def test_lower_bounds(self):
        self.assertEqual(lower_bound_paths(special_graph("K4")), 2)
        self.assertEqual(lower_bound_paths(special_graph("K5")), 1)
        self.assertEqual(lower_bound_cycles(special_graph("K5")), 2)

    def test_cycle_oracle_needs_even_graph(self):
        with self.assertRaises(NotEvenGraph):
            exact_cycle_number(special_graph("K4"))

    def test_vertex_cap(self):
        with self.assertRaises(CapExceeded):
            exact_path_number(special_graph("Petersen"), OracleCaps(vertices=8))

    def test_node_budget(self):
        with self.assertRaises(CapExceeded):
            exact_path_number(special_graph("K5"), OracleCaps(node_budget=1))

    def test_bounded_search_gives_up_below_optimum(self):
        self.assertIsNone(bounded_path_decomposition(special_graph("K5"), 2))
        self.assertEqual(len(bounded_path_decomposition(special_graph("K5"), 3)), 3)
        self.assertIsNone(bounded_cycle_decomposition(special_graph("K5"), 1))

    def test_empty_graph(self):
        pn, witness = exact_path_number(Graph.empty(3))
        self.assertEqual(pn, 0)
        self.assertEqual(len(witness), 0)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_cycle_needs_two_paths_and_one_cycle(n):
    g = Graph.from_edges(n, [edge(i, (i + 1) % n) for i in range(n)])
    assert exact_path_number(g)[0] == 2
    assert exact_cycle_number(g)[0] == 1


@settings(max_examples=15, deadline=None)
@given(n=st.integers(4, 8), seed=st.integers(0, 10_000))
def test_witness_verifies_and_meets_lower_bound(n, seed):
    g = generate(GenSpec(Family.PARTIAL_THREE_TREE, n=n, seed=seed))
    pn, witness = exact_path_number(g)
    assert verify_decomposition(g, witness)
    assert lower_bound_paths(g) <= pn == len(witness)
