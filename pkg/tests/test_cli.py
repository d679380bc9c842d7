"""
End-to-end checks of the command-line front end: exit codes, report
formats and the bench summary.
"""
import argparse
import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import pytest

from edgedecomp.cli import (
    EXIT_CAP,
    EXIT_CONFIG,
    EXIT_INAPPLICABLE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_SPECIAL,
    EXIT_VERIFY_FAILED,
    bench_instance,
    bench_specs,
    dump_state,
    main,
    parse_range,
    pick_class,
    run_driver,
)
from edgedecomp.config import Settings
from edgedecomp.dimacs import parse_graph, write_graph
from edgedecomp.errors import (
    InputClassError,
    NotEulerian,
    NotPartialThreeTree,
    PreconditionViolated,
    StructuralAssumptionViolated,
    UnreachableCase,
)
from edgedecomp.graph import Graph, edge, verify_decomposition
from edgedecomp.lab.generators import Family, GenSpec, special_graph


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="graph.txt"):
        path = tmp_path / name
        write_graph(g, path)
        return str(path)
    return write


def cycle(n):
    return Graph.from_edges(n, [edge(i, (i + 1) % n) for i in range(n)])


def test_special_graph_exit_code(graph_file, capsys):
    code = main(["decompose", "--input", graph_file(special_graph("K5minus")), "--mode", "paths"])
    assert code == EXIT_SPECIAL
    assert json.loads(capsys.readouterr().out)["special"] == "K5minus"


def test_k5_paths_is_special_under_auto(graph_file, capsys):
    assert main(["decompose", "--input", graph_file(special_graph("K5"))]) == EXIT_SPECIAL
    assert json.loads(capsys.readouterr().out)["special"] == "K5"


def test_cycle_decomposition_report(graph_file, capsys):
    code = main(["decompose", "--input", graph_file(cycle(6)), "--mode", "cycles", "--class", "tw3"])
    assert code == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["kind"] == "cycles"
    assert report["class"] == "tw3"
    assert report["size"] == 1
    assert report["verified"] is True
    assert report["elements"][0][0] == report["elements"][0][-1]
    assert sorted(report["elements"][0][:-1]) == [1, 2, 3, 4, 5, 6]


def test_text_format(graph_file, capsys):
    code = main(["decompose", "--input", graph_file(special_graph("K4")), "--format", "text"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "paths: 2 (bound 2, n=4)"
    assert len(lines) == 3


def test_disconnected_input_is_decomposed_per_component(graph_file, capsys):
    g = Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (4, 5), (5, 6)])
    assert main(["decompose", "--input", graph_file(g)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["size"] <= 3


def test_odd_degrees_are_inapplicable_for_cycles(graph_file):
    assert main(["decompose", "--input", graph_file(special_graph("K4")), "--mode", "cycles"]) == EXIT_INAPPLICABLE


def test_unreadable_graph(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p edge 3 5\ne 1 2\n")
    assert main(["decompose", "--input", str(bad)]) == EXIT_PARSE
    assert main(["decompose", "--input", str(tmp_path / "missing.txt")]) == EXIT_PARSE


def test_non_utf8_graph_is_a_parse_error(tmp_path):
    bad = tmp_path / "latin1.txt"
    bad.write_bytes(b"p edge 2 1\n# caf\xe9\ne 1 2\n")
    assert main(["decompose", "--input", str(bad)]) == EXIT_PARSE


def test_verify_round_trip(graph_file, tmp_path, capsys):
    g = special_graph("Petersen")
    path = graph_file(g)
    assert main(["decompose", "--input", path]) == EXIT_OK
    report_path = tmp_path / "report.json"
    report_path.write_text(capsys.readouterr().out)
    assert main(["verify", "--input", path, "--decomposition", str(report_path)]) == EXIT_OK
    assert "✅" in capsys.readouterr().out

    broken = json.loads(report_path.read_text())
    broken["elements"] = broken["elements"][1:]
    report_path.write_text(json.dumps(broken))
    assert main(["verify", "--input", path, "--decomposition", str(report_path)]) == EXIT_VERIFY_FAILED
    assert "missing edge" in capsys.readouterr().out


def test_exact_cycle_number(graph_file, capsys):
    assert main(["exact", "--input", graph_file(special_graph("K5")), "--mode", "cycles"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "cn = 2"


def test_exact_cap(graph_file):
    code = main(["exact", "--input", graph_file(special_graph("K5")), "--cap-vertices", "3"])
    assert code == EXIT_CAP


def test_gen_to_stdout(capsys):
    assert main(["gen", "--family", "ThreeTree", "--n", "8", "--seed", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# family=ThreeTree n=8 seed=4 rng=PCG64")
    assert parse_graph(out).m == 3 * 8 - 6


def test_gen_bad_spec():
    assert main(["gen", "--family", "Special", "--name", "K7"]) == EXIT_PARSE


def test_bench_summary(capsys):
    code = main(["bench", "--family", "MaxDeg4", "--count", "3", "--n-range", "6..9",
                 "--seed", "5", "--format", "json"])
    summary = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert summary["bound_rate"] == 1.0
    assert summary["count"] == 3
    assert summary["rng"] == "PCG64"
    assert summary["failures"] == []


def test_bad_configuration(tmp_path):
    (tmp_path / "broken.json").write_text("{ not json")
    assert main(["--env", "broken", "--config-dir", str(tmp_path), "gen", "--family", "Special",
                 "--name", "K3"]) == EXIT_CONFIG


class TestHelpers(unittest.TestCase):

    def test_parse_range(self):
        self.assertEqual(parse_range("6..30"), (6, 30))
        self.assertEqual(parse_range("7"), (7, 7))
        for bad in ("a..b", "9..3"):
            with self.subTest(bad=bad):
                with self.assertRaises(argparse.ArgumentTypeError):
                    parse_range(bad)

    def test_bench_specs_are_deterministic(self):
        first = bench_specs(Family.MAX_DEG4, 5, (6, 12), 9)
        second = bench_specs(Family.MAX_DEG4, 5, (6, 12), 9)
        self.assertEqual(first, second)
        self.assertEqual([s.seed for s in first], [9, 10, 11, 12, 13])
        self.assertTrue(all(6 <= s.n <= 12 for s in first))

    def test_pick_class(self):
        self.assertEqual(pick_class(special_graph("K4"), "paths"), "tw3")
        self.assertEqual(pick_class(special_graph("K5"), "paths"), "maxdeg4")
        self.assertEqual(pick_class(special_graph("Petersen"), "paths"), "maxdeg4")
        k6 = Graph.from_edges(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
        with self.assertRaises(InputClassError):
            pick_class(k6, "paths")

    def test_run_driver_merges_components(self):
        g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (7, 4)])
        result = run_driver(g, "paths", "auto", Settings())
        self.assertIsNone(result.special)
        self.assertTrue(verify_decomposition(g, result.decomposition))

    def test_dump_state(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = dump_state(UnreachableCase("stuck", {"n": 4}), Path(tmp) / "dumps")
            self.assertTrue(path.name.startswith("unreachable-"))
            self.assertEqual(json.loads(path.read_text())["state"], {"n": 4})

    def test_bench_instance_statuses(self):
        spec = GenSpec(Family.MAX_DEG4, n=8, seed=1)
        cases = (
            (NotEulerian("odd"), "inapplicable"),
            (PreconditionViolated("no pairing"), "failed"),
            (StructuralAssumptionViolated("not a path"), "failed"),
        )
        for error, status in cases:
            with self.subTest(error=type(error).__name__):
                with patch("edgedecomp.cli.run_driver", side_effect=error):
                    record = bench_instance(spec, "paths", "auto", Settings())
                self.assertEqual(record["status"], status)


def test_bench_with_nothing_decomposed_fails(capsys):
    with patch("edgedecomp.cli.run_driver", side_effect=NotPartialThreeTree("treewidth 4")):
        code = main(["bench", "--family", "MaxDeg4", "--class", "tw3", "--count", "3",
                     "--n-range", "6..8", "--workers", "1", "--format", "json"])
    summary = json.loads(capsys.readouterr().out)
    assert code == EXIT_VERIFY_FAILED
    assert summary["bound_rate"] is None
    assert summary["inapplicable"] == 3


def test_bench_counts_construction_errors_as_failures(capsys):
    with patch("edgedecomp.cli.run_driver", side_effect=PreconditionViolated("no pairing")):
        code = main(["bench", "--family", "MaxDeg4", "--count", "2", "--n-range", "6..8",
                     "--workers", "1", "--format", "json"])
    summary = json.loads(capsys.readouterr().out)
    assert code == EXIT_VERIFY_FAILED
    assert summary["bound_rate"] == 0.0
    assert len(summary["failures"]) == 2
