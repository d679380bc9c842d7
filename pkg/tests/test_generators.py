import unittest

import pytest
from hypothesis import given, settings, strategies as st

from edgedecomp.errors import InvalidSpec
from edgedecomp.graph import bridges_and_blocks, girth
from edgedecomp.ktree import embed_partial_3tree
from edgedecomp.lab.generators import SPECIAL_NAMES, Family, GenSpec, generate, special_graph


class TestGenerate(unittest.TestCase):

    def test_same_spec_same_graph(self):
        spec = GenSpec(Family.PARTIAL_THREE_TREE, n=20, seed=11)
        self.assertEqual(generate(spec).edges(), generate(spec).edges())

    def test_seed_changes_graph(self):
        a = generate(GenSpec(Family.THREE_TREE, n=12, seed=1))
        b = generate(GenSpec(Family.THREE_TREE, n=12, seed=2))
        self.assertNotEqual(a.edges(), b.edges())

    def test_three_tree_edge_count(self):
        g = generate(GenSpec(Family.THREE_TREE, n=10, seed=3))
        self.assertEqual(g.m, 3 * 10 - 6)

    def test_too_small(self):
        with self.assertRaises(InvalidSpec):
            generate(GenSpec(Family.THREE_TREE, n=2))

    def test_bad_keep_probability(self):
        with self.assertRaises(InvalidSpec):
            generate(GenSpec(Family.PARTIAL_THREE_TREE, n=8, keep_probability=0.0))

    def test_unknown_special(self):
        with self.assertRaises(InvalidSpec):
            generate(GenSpec(Family.SPECIAL, name="K7"))

    def test_family_accepts_value_string(self):
        g = generate(GenSpec("MaxDeg4", n=6, seed=0))
        self.assertLessEqual(g.max_degree(), 4)


@pytest.mark.parametrize("name,n,m", [
    ("K3", 3, 3), ("K4", 4, 6), ("K5", 5, 10), ("K5minus", 5, 9),
    ("K44_minus_PM", 8, 12), ("K6_minus_PM", 6, 12), ("octahedron", 6, 12), ("Petersen", 10, 15),
])
def test_special_sizes(name, n, m):
    g = special_graph(name)
    assert (g.order, g.m) == (n, m)
    assert name in SPECIAL_NAMES


@settings(max_examples=25, deadline=None)
@given(n=st.integers(3, 30), seed=st.integers(0, 100_000))
def test_max_deg4_family(n, seed):
    g = generate(GenSpec(Family.MAX_DEG4, n=n, seed=seed))
    assert g.is_connected() and g.order == n
    assert g.max_degree() <= 4


@settings(max_examples=25, deadline=None)
@given(n=st.integers(3, 30), seed=st.integers(0, 100_000))
def test_eulerian_family(n, seed):
    g = generate(GenSpec(Family.EULERIAN_MAX_DEG4, n=n, seed=seed))
    assert g.is_connected() and g.is_even()
    assert g.order == n
    assert g.max_degree() <= 4


def test_eulerian_family_has_separable_instances():
    blocks = [len(bridges_and_blocks(generate(GenSpec(Family.EULERIAN_MAX_DEG4, n=30, seed=s)))[1])
              for s in range(20)]
    assert max(blocks) > 1


@settings(max_examples=20, deadline=None)
@given(n=st.integers(2, 40), seed=st.integers(0, 100_000))
def test_hex_fragments_have_girth_six(n, seed):
    g = generate(GenSpec(Family.HEX_GRID_FRAGMENT, n=n, seed=seed))
    assert g.is_connected() and g.order == n
    assert g.max_degree() <= 3
    assert girth(g) >= 6


@settings(max_examples=20, deadline=None)
@given(n=st.integers(4, 20), seed=st.integers(0, 100_000))
def test_partial_three_trees_stay_in_class(n, seed):
    g = generate(GenSpec(Family.PARTIAL_THREE_TREE, n=n, seed=seed))
    assert g.is_connected()
    if g.order >= 3:
        assert embed_partial_3tree(g) is not None
