#!/usr/bin/env python3
"""
Acceptance runs at full corpus size.

The unit tests use small hypothesis budgets; this script runs every driver
over the seeded corpora with the counts and size ranges the bounds are
checked on, plus the exhaustive gadget families, and prints a summary.

Usage:
    python scripts/run_acceptance.py [suite ...]
"""

import logging
import sys
import time
from datetime import datetime
from itertools import combinations, permutations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from edgedecomp.config import EndgameConfig  # noqa: E402
from edgedecomp.errors import ChordLimitExceeded, EdgeDecompError  # noqa: E402
from edgedecomp.gallai_tw3 import decompose_paths_tw3, k44_decomposition  # noqa: E402
from edgedecomp.graph import (  # noqa: E402
    Decomposition,
    Graph,
    VertexCycle,
    VertexPath,
    edge,
    gallai_bound,
    hajos_bound,
    verify_decomposition,
)
from edgedecomp.hajos_tw3 import decompose_cycles_tw3  # noqa: E402
from edgedecomp.k4 import find_k4_subdivision  # noqa: E402
from edgedecomp.ktree import embed_partial_3tree  # noqa: E402
from edgedecomp.lab.generators import Family, GenSpec, generate, make_rng, special_graph  # noqa: E402
from edgedecomp.lab.oracle import exact_cycle_number, exact_path_number  # noqa: E402
from edgedecomp.maxdeg4 import (  # noqa: E402
    closing_paths,
    decompose_cycles_maxdeg4,
    decompose_paths_maxdeg4,
    double_paths_cycles,
    six_circuit_report,
)
from edgedecomp.planar6 import decompose_paths_planar6  # noqa: E402
from edgedecomp.reduce import Special  # noqa: E402
from edgedecomp.split import decompose_k5minus_subdivision, k5_like_parts, two_path_split  # noqa: E402

K5_MINUS_EDGES = [(i, j) for i in range(5) for j in range(i + 1, 5) if (i, j) != (0, 1)]


def corpus(family: Family, count: int, lo: int, hi: int, seed: int):
    rng = make_rng(seed)
    for i, n in enumerate(rng.integers(lo, hi + 1, size=count)):
        yield generate(GenSpec(family, n=int(n), seed=seed + i))


def report(failures: list, total: int) -> bool:
    for failure in failures[:5]:
        print(f"  ❌ {failure}")
    if failures:
        print(f"  ❌ {len(failures)}/{total} instances failed")
        return False
    print(f"  ✅ {total}/{total} instances within the bound")
    return True


# ============================================================================
# SUITES
# ============================================================================

def test_special_constants():
    """Path and cycle numbers of K3, K5 and K5 minus an edge."""
    print("🔢 Checking special-graph constants...")
    expected = [
        ("pn(K3)", exact_path_number(special_graph("K3"))[0], 2),
        ("pn(K5)", exact_path_number(special_graph("K5"))[0], 3),
        ("pn(K5minus)", exact_path_number(special_graph("K5minus"))[0], 3),
        ("cn(K5)", exact_cycle_number(special_graph("K5"))[0], 2),
    ]
    ok = True
    for label, got, want in expected:
        mark = "✅" if got == want else "❌"
        ok = ok and got == want
        print(f"  {mark} {label} = {got} (expected {want})")
    return ok


def test_partial_three_tree_paths():
    print("🌳 Partial 3-trees into paths (500 instances, n 6..40)...")
    failures, total = [], 0
    for g in corpus(Family.PARTIAL_THREE_TREE, 500, 6, 40, seed=1000):
        if g.order < 6:
            continue
        total += 1
        try:
            outcome = decompose_paths_tw3(g, EndgameConfig())
        except EdgeDecompError as e:
            failures.append(f"n={g.order}: {type(e).__name__}: {e}")
            continue
        if isinstance(outcome, Special):
            failures.append(f"n={g.order}: unexpected special {outcome.kind.value}")
            continue
        d = outcome.decomposition
        if not verify_decomposition(g, d) or len(d) > gallai_bound(g):
            failures.append(f"n={g.order}: {len(d)} paths, bound {gallai_bound(g)}")
    return report(failures, total)


def test_oracle_agreement():
    print("🎯 Driver against the exact oracle (200 instances, n <= 10)...")
    failures, total, forced = [], 0, 0
    for g in corpus(Family.PARTIAL_THREE_TREE, 200, 6, 10, seed=2000):
        if g.order < 6:
            continue
        total += 1
        outcome = decompose_paths_tw3(g)
        if isinstance(outcome, Special):
            continue
        size = len(outcome.decomposition)
        pn, _ = exact_path_number(g)
        if not pn <= size <= gallai_bound(g):
            failures.append(f"n={g.order}: pn={pn}, driver {size}, bound {gallai_bound(g)}")
        if all(g.degree(v) % 2 == 1 for v in g.vertices()):
            forced += 1
            if size != pn:
                failures.append(f"n={g.order}: all degrees odd but driver {size} != pn {pn}")
    print(f"  {forced} instances with every degree odd")
    return report(failures, total)


def test_eulerian_partial_three_trees():
    print("🔁 Eulerian partial 3-trees into cycles (300 instances, n 5..40)...")
    failures, total, tries = [], 0, 0
    rng = make_rng(3000)
    while total < 300 and tries < 5000:
        tries += 1
        g = generate(GenSpec(Family.EULERIAN_MAX_DEG4, n=int(rng.integers(5, 41)), seed=3000 + tries))
        if g.order < 5 or embed_partial_3tree(g) is None:
            continue
        total += 1
        try:
            d = decompose_cycles_tw3(g)
        except EdgeDecompError as e:
            failures.append(f"n={g.order}: {type(e).__name__}: {e}")
            continue
        if not verify_decomposition(g, d) or len(d) > hajos_bound(g):
            failures.append(f"n={g.order}: {len(d)} cycles, bound {hajos_bound(g)}")
    return report(failures, total)


def test_max_degree_four_paths():
    print("4️⃣  Maximum degree 4 into paths (300 instances, n 6..30)...")
    failures = []
    for g in corpus(Family.MAX_DEG4, 300, 6, 30, seed=4000):
        try:
            outcome = decompose_paths_maxdeg4(g)
        except EdgeDecompError as e:
            failures.append(f"n={g.order}: {type(e).__name__}: {e}")
            continue
        if isinstance(outcome, Special):
            if g.order not in (3, 5):
                failures.append(f"n={g.order}: special {outcome.kind.value}")
            continue
        d = outcome.decomposition
        if not verify_decomposition(g, d) or len(d) > gallai_bound(g):
            failures.append(f"n={g.order}: {len(d)} paths, bound {gallai_bound(g)}")
    return report(failures, 300)


def test_max_degree_four_cycles():
    print("♻️  Eulerian maximum degree 4 into cycles (300 instances, n 5..30)...")
    failures, identities = [], 0
    for g in corpus(Family.EULERIAN_MAX_DEG4, 300, 5, 30, seed=5000):
        h = find_k4_subdivision(g)
        if h is not None:
            identities += 1
            if not six_circuit_report(*closing_paths(g, h)).identity_holds():
                failures.append(f"n={g.order}: six circuit sizes do not add up")
        try:
            d = decompose_cycles_maxdeg4(g)
        except EdgeDecompError as e:
            failures.append(f"n={g.order}: {type(e).__name__}: {e}")
            continue
        if not verify_decomposition(g, d) or len(d) > hajos_bound(g):
            failures.append(f"n={g.order}: {len(d)} cycles, bound {hajos_bound(g)}")
    print(f"  six circuit identity checked on {identities} instances")
    return report(failures, 300)


def test_hex_fragments():
    print("⬡  Girth-6 hexagonal fragments into paths (100 instances, n 6..60)...")
    failures = []
    for g in corpus(Family.HEX_GRID_FRAGMENT, 100, 6, 60, seed=6000):
        try:
            d = decompose_paths_planar6(g)
        except EdgeDecompError as e:
            failures.append(f"n={g.order}: {type(e).__name__}: {e}")
            continue
        if not verify_decomposition(g, d) or len(d) > gallai_bound(g):
            failures.append(f"n={g.order}: {len(d)} paths, bound {gallai_bound(g)}")
    return report(failures, 100)


def path_gadgets(length: int, max_vertices: int = 9):
    """
    Every path edge-disjoint from the cycle 0..length-1 with at most 3 chords
    and at most ``max_vertices`` vertices in all. Vertices off the cycle are
    numbered in order of appearance.
    """
    cycle_edges = set(VertexCycle(tuple(range(length))).edges())
    outside_budget = max_vertices - length

    def extend(walk, outside, chords):
        if len(walk) >= 2 and any(v < length for v in walk):
            yield VertexPath(tuple(walk))
        last = walk[-1]
        options = [v for v in range(length) if v not in walk]
        if outside < outside_budget:
            options.append(length + outside)
        for v in options:
            e = edge(last, v)
            if e in cycle_edges:
                continue
            chord = last < length and v < length
            if chords + chord > 3:
                continue
            walk.append(v)
            yield from extend(walk, outside + (v >= length), chords + chord)
            walk.pop()

    for start in range(length):
        yield from extend([start], 0, 0)
    if outside_budget:
        yield from extend([length], 1, 0)


def double_path_gadgets(max_vertices: int = 10):
    """
    Every pair of edge-disjoint 0-1 paths on at most ``max_vertices``
    vertices, up to relabelling: the first path runs 0, 2, 3, ..., 1 and
    the second numbers its new vertices in order of appearance.
    """
    for k in range(max_vertices - 1):
        first = VertexPath((0,) + tuple(range(2, 2 + k)) + (1,))
        taken = set(first.edges())
        old = list(range(2, 2 + k))

        def extend(walk, fresh):
            if edge(walk[-1], 1) not in taken:
                yield VertexPath(tuple(walk) + (1,))
            new = 2 + k + fresh
            options = [v for v in old if v not in walk]
            if new < max_vertices:
                options.append(new)
            for v in options:
                if edge(walk[-1], v) in taken:
                    continue
                walk.append(v)
                yield from extend(walk, fresh + (v == new))
                walk.pop()

        for second in extend([0], 0):
            yield first, second


def test_gadget_families():
    print("🧩 Gadget families...")
    failures, splits = [], 0
    for length in (3, 4, 5):
        c = VertexCycle(tuple(range(length)))
        for p in path_gadgets(length):
            splits += 1
            try:
                result = two_path_split(p, c)
            except EdgeDecompError as e:
                failures.append(f"split {p.vertices} / C{length}: {type(e).__name__}")
                continue
            union = Graph.from_edges(max(p.vertices + c.vertices) + 1, p.edges() + c.edges())
            if not verify_decomposition(union, Decomposition(tuple(result))):
                failures.append(f"split {p.vertices} / C{length}: invalid output")
    print(f"  {splits} path/cycle gadgets")

    cycle, path = k5_like_parts(special_graph("K5minus"))
    try:
        two_path_split(path, cycle)
        failures.append("K5 minus an edge with four chords was split")
    except ChordLimitExceeded:
        print("  ✅ four-chord K5 minus an edge rejected")

    pairs = 0
    for p1, p2 in double_path_gadgets():
        pairs += 1
        shared = set(p1.vertices[1:-1]) & set(p2.vertices[1:-1])
        try:
            d = double_paths_cycles(p1, p2)
        except EdgeDecompError as e:
            failures.append(f"double paths {p1.vertices} / {p2.vertices}: {type(e).__name__}")
            continue
        union = Graph.from_edges(max(p1.vertices + p2.vertices) + 1, p1.edges() + p2.edges())
        if not verify_decomposition(union, d) or len(d) > len(shared) + 1:
            failures.append(f"double paths {p1.vertices} / {p2.vertices}")
    print(f"  {pairs} double-path gadgets")

    subdivisions = 0
    for extra in range(1, 5):
        for placement in combinations(range(len(K5_MINUS_EDGES) + extra - 1), extra):
            counts = [0] * len(K5_MINUS_EDGES)
            # stars and bars: placement marks where the extra vertices go
            for offset, position in enumerate(placement):
                counts[position - offset] += 1
            g = subdivided(counts)
            subdivisions += 1
            d = decompose_k5minus_subdivision(g)
            if len(d) != 2 or not verify_decomposition(g, d) or exact_path_number(g)[0] != 2:
                failures.append(f"K5 minus an edge subdivided as {counts}")
    print(f"  {subdivisions} subdivisions of K5 minus an edge")
    return report(failures, splits + pairs + subdivisions)


def subdivided(counts):
    out, next_id = [], 5
    for (u, v), k in zip(K5_MINUS_EDGES, counts):
        chain = [u] + list(range(next_id, next_id + k)) + [v]
        next_id += k
        out += list(zip(chain, chain[1:]))
    return Graph.from_edges(next_id, out)


def test_k44_endgame():
    print("🏁 K4,4 minus a perfect matching...")
    g = special_graph("K44_minus_PM")
    ok = True
    for perm in list(permutations(range(8)))[::5000]:
        h = Graph.from_edges(8, [edge(perm[u], perm[v]) for u, v in g.edges()])
        d = k44_decomposition(h)
        ok = ok and len(d) == 4 and bool(verify_decomposition(h, d))
    pn, _ = exact_path_number(g)
    ok = ok and pn == 4
    print(f"  {'✅' if ok else '❌'} four paths on every relabelling, oracle pn = {pn}")
    return ok


SUITES = [
    ("Special Constants", test_special_constants),
    ("Partial 3-Trees (paths)", test_partial_three_tree_paths),
    ("Oracle Agreement", test_oracle_agreement),
    ("Eulerian Partial 3-Trees (cycles)", test_eulerian_partial_three_trees),
    ("Max Degree 4 (paths)", test_max_degree_four_paths),
    ("Max Degree 4 (cycles)", test_max_degree_four_cycles),
    ("Hexagonal Fragments (paths)", test_hex_fragments),
    ("Gadget Families", test_gadget_families),
    ("K4,4 Endgame", test_k44_endgame),
]


def main(selected=None):
    """Run the acceptance suites."""
    logging.basicConfig(level=logging.ERROR)
    print("🧮 Edge Decomposition - Acceptance Runs")
    print("=" * 50)
    print(f"📅 Run: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print()

    results = []
    for name, suite in SUITES:
        if selected and not any(s.lower() in name.lower() for s in selected):
            continue
        print(f"Running: {name}")
        started = time.perf_counter()
        try:
            result = suite()
        except Exception as e:
            print(f"  ❌ Suite failed with exception: {type(e).__name__}: {e}")
            result = False
        results.append((name, result, time.perf_counter() - started))
        print()

    print("📊 Acceptance Summary")
    print("-" * 30)
    passed = 0
    for name, result, elapsed in results:
        status = "✅ PASS" if result else "❌ FAIL"
        print(f"{status} {name} ({elapsed:.1f}s)")
        passed += bool(result)

    print()
    print(f"Results: {passed}/{len(results)} suites passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
