"""
Command-line front end.

Exit codes:
    0   success
    1   verification failed (verify, bench)
    2   special graph, no decomposition within the bound exists
    3   the graph is outside the chosen class
    4   endgame or oracle cap exceeded
    64  unreadable graph or report, bad generator spec
    70  internal error; the driver state is dumped to a JSON file
    78  bad configuration
"""

import argparse
import json
import logging
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from edgedecomp.config import Settings, load_settings
from edgedecomp.dimacs import (
    decomposition_report,
    element_to_ids,
    format_graph,
    read_decomposition,
    read_graph,
    write_graph,
)
from edgedecomp.errors import (
    BoundViolated,
    CapExceeded,
    ConfigError,
    DecompositionError,
    EndgameTooLarge,
    GraphFormatError,
    InputClassError,
    InvalidSpec,
    StructuralAssumptionViolated,
    UnreachableCase,
)
from edgedecomp.gallai_tw3 import decompose_paths_tw3
from edgedecomp.graph import Decomposition, Graph, gallai_bound, girth, hajos_bound, verify_decomposition
from edgedecomp.hajos_tw3 import decompose_cycles_tw3
from edgedecomp.ktree import embed_partial_3tree
from edgedecomp.lab.generators import RNG_ALGORITHM, Family, GenSpec, generate, make_rng
from edgedecomp.lab.oracle import exact_cycle_number, exact_path_number
from edgedecomp.maxdeg4 import MAX_DEGREE, decompose_cycles_maxdeg4, decompose_paths_maxdeg4
from edgedecomp.planar6 import MIN_GIRTH, decompose_paths_planar6
from edgedecomp.reduce import Special
from edgedecomp.telemetry import StepTrace, configure_logging, log_custom_event

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SPECIAL = 2
EXIT_INAPPLICABLE = 3
EXIT_CAP = 4
EXIT_PARSE = 64
EXIT_INTERNAL = 70
EXIT_CONFIG = 78

CLASSES = ("auto", "tw3", "maxdeg4", "planar6")
MODES = ("paths", "cycles")


# ============================================================================
# DRIVER DISPATCH
# ============================================================================

@dataclass
class RunResult:
    """Outcome of one driver call over all components of a graph."""
    graph_class: str
    decomposition: Decomposition = field(default_factory=lambda: Decomposition(()))
    special: Optional[str] = None
    trace: StepTrace = field(default_factory=StepTrace)


def pick_class(g: Graph, mode: str) -> str:
    """First class the graph belongs to: tw3, then maxdeg4, then planar6."""
    if g.order < 3 or embed_partial_3tree(g) is not None:
        return "tw3"
    if g.max_degree() <= MAX_DEGREE:
        return "maxdeg4"
    if mode == "paths" and girth(g) >= MIN_GIRTH:
        return "planar6"
    raise InputClassError(f"no {mode} driver applies: treewidth above 3, "
                          f"maximum degree {g.max_degree()}, girth {girth(g)}")


def _driver(graph_class: str, mode: str, settings: Settings) -> Callable:
    cfg = settings.endgame
    if mode == "paths":
        if graph_class == "tw3":
            return lambda comp, trace: decompose_paths_tw3(comp, cfg, trace)
        if graph_class == "maxdeg4":
            return lambda comp, trace: decompose_paths_maxdeg4(comp, cfg, trace)
        return lambda comp, trace: decompose_paths_planar6(comp, trace)
    if graph_class == "tw3":
        return lambda comp, trace: decompose_cycles_tw3(comp, trace)
    if graph_class == "maxdeg4":
        return lambda comp, trace: decompose_cycles_maxdeg4(comp, cfg, trace)
    raise InputClassError("planar6 only decomposes into paths")


def run_driver(g: Graph, mode: str, graph_class: str, settings: Settings) -> RunResult:
    """
    Decompose every component of ``g`` with the driver for ``graph_class``.

    Args:
        g: Input graph
        mode: "paths" or "cycles"
        graph_class: One of CLASSES; "auto" picks per component
        settings: Loaded settings (endgame cap)

    Returns:
        RunResult: Merged decomposition, or the first special component
    """
    result = RunResult(graph_class=graph_class)
    for comp in g.component_graphs():
        chosen = pick_class(comp, mode) if graph_class == "auto" else graph_class
        outcome = _driver(chosen, mode, settings)(comp, result.trace)
        if isinstance(outcome, Special):
            result.special = outcome.kind.value
            return result
        d = outcome if isinstance(outcome, Decomposition) else outcome.decomposition
        result.decomposition = result.decomposition + d
        if graph_class == "auto":
            result.graph_class = chosen
    return result


def dump_state(exc: UnreachableCase, dump_dir: Path) -> Path:
    dump_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile("w", dir=dump_dir, prefix="unreachable-", suffix=".json",
                                     delete=False, encoding="utf-8") as handle:
        json.dump({"message": str(exc), "state": exc.state}, handle, indent=2, default=str)
    return Path(handle.name)


# ============================================================================
# SUB-COMMANDS
# ============================================================================

def _emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report) + "\n")
        return
    if "special" in report:
        out.write(f"special: {report['special']}\n")
        return
    out.write(f"{report['kind']}: {report['size']} (bound {report['bound']}, n={report['n']})\n")
    for ids in report["elements"]:
        out.write(" ".join(str(v) for v in ids) + "\n")


def cmd_decompose(args, settings: Settings) -> int:
    g = read_graph(args.input)
    bound = gallai_bound(g) if args.mode == "paths" else hajos_bound(g)
    result = run_driver(g, args.mode, args.graph_class, settings)
    if result.special is not None:
        _emit({"special": result.special, "n": g.n, "steps": result.trace.steps}, args.format)
        return EXIT_SPECIAL

    d = result.decomposition
    verdict = verify_decomposition(g, d)
    if not verdict or len(d) > bound:
        raise UnreachableCase(f"final check failed: {verdict.reason or 'bound'}",
                              {"n": g.n, "edges": [list(e) for e in g.edges()],
                               "elements": [element_to_ids(el) for el in d.elements]})
    report = decomposition_report(g, d, bound, result.trace.steps, True,
                                  {"kind": args.mode, "class": result.graph_class})
    _emit(report, args.format)
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    g = read_graph(args.input)
    d = read_decomposition(args.decomposition)
    verdict = verify_decomposition(g, d)
    if verdict:
        print(f"✅ valid {d.kind} decomposition of size {len(d)}")
        return EXIT_OK
    where = f" (element {verdict.element + 1})" if verdict.element is not None else ""
    print(f"❌ invalid: {verdict.reason}{where}")
    return EXIT_VERIFY_FAILED


def cmd_exact(args, settings: Settings) -> int:
    g = read_graph(args.input)
    if args.mode == "paths":
        value, witness = exact_path_number(g, settings.oracle)
        bound = gallai_bound(g)
    else:
        value, witness = exact_cycle_number(g, settings.oracle)
        bound = hajos_bound(g)
    report = decomposition_report(g, witness, bound, [], bool(verify_decomposition(g, witness)),
                                  {"kind": args.mode, "value": value})
    if args.format == "json":
        _emit(report, "json")
    else:
        print(f"{'pn' if args.mode == 'paths' else 'cn'} = {value}")
        for ids in report["elements"]:
            print(" ".join(str(v) for v in ids))
    return EXIT_OK


def cmd_gen(args, settings: Settings) -> int:
    spec = GenSpec(family=Family(args.family), n=args.n, seed=args.seed,
                   keep_probability=args.keep, name=args.name)
    g = generate(spec)
    comments = [f"family={spec.family.value} n={spec.n} seed={spec.seed} rng={RNG_ALGORITHM}"]
    if args.out:
        write_graph(g, args.out, comments)
        logger.info(f"wrote {args.out}: n={g.n}, m={g.m}")
    else:
        sys.stdout.write(format_graph(g, comments))
    return EXIT_OK


def parse_range(text: str) -> tuple[int, int]:
    """Parse ``A..B`` into (A, B)."""
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if a > b or a < 0:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def bench_specs(family: Family, count: int, n_range: tuple[int, int], seed: int) -> list[GenSpec]:
    """Deterministic corpus: sizes drawn from one PCG64 stream, instance seeds from seed upward."""
    rng = make_rng(seed)
    sizes = rng.integers(n_range[0], n_range[1] + 1, size=count)
    return [GenSpec(family=family, n=int(n), seed=seed + i) for i, n in enumerate(sizes)]


def bench_instance(spec: GenSpec, mode: str, graph_class: str, settings: Settings) -> dict:
    """Run one corpus instance; top-level so worker processes can pickle it."""
    g = generate(spec)
    bound = gallai_bound(g) if mode == "paths" else hajos_bound(g)
    record = {"seed": spec.seed, "n": g.order, "bound": bound}
    try:
        result = run_driver(g, mode, graph_class, settings)
    except StructuralAssumptionViolated as exc:
        record.update(status="failed", error=f"{type(exc).__name__}: {exc}")
        return record
    except InputClassError as exc:
        record.update(status="inapplicable", error=str(exc))
        return record
    except (DecompositionError, UnreachableCase, BoundViolated, EndgameTooLarge, CapExceeded) as exc:
        record.update(status="failed", error=f"{type(exc).__name__}: {exc}")
        return record
    if result.special is not None:
        record.update(status="special", special=result.special, steps=result.trace.steps)
        return record
    d = result.decomposition
    ok = bool(verify_decomposition(g, d)) and len(d) <= bound
    record.update(status="ok" if ok else "failed", size=len(d), steps=result.trace.steps)
    return record


def cmd_bench(args, settings: Settings) -> int:
    family = Family(args.family)
    mode = args.mode or ("cycles" if family == Family.EULERIAN_MAX_DEG4 else "paths")
    specs = bench_specs(family, args.count, args.n_range, args.seed)
    workers = args.workers or settings.bench_workers

    started = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(bench_instance, specs, [mode] * len(specs),
                                    [args.graph_class] * len(specs), [settings] * len(specs)))
    else:
        records = [bench_instance(s, mode, args.graph_class, settings) for s in specs]
    elapsed = time.perf_counter() - started

    trace = StepTrace()
    for r in records:
        trace.steps.extend(r.get("steps", []))
    counted = [r for r in records if r["status"] in ("ok", "failed")]
    passed = sum(1 for r in counted if r["status"] == "ok")
    rate = passed / len(counted) if counted else None
    summary = {
        "family": family.value,
        "mode": mode,
        "count": len(records),
        "rng": RNG_ALGORITHM,
        "seed": args.seed,
        "bound_rate": rate,
        "special": sum(1 for r in records if r["status"] == "special"),
        "inapplicable": sum(1 for r in records if r["status"] == "inapplicable"),
        "failures": [r for r in records if r["status"] == "failed"],
        "histogram": dict(sorted(trace.histogram().items())),
        "wall_time": round(elapsed, 3),
    }
    log_custom_event("bench_finished", {"family": family.value, "mode": mode},
                     {"count": len(records), "bound_rate": rate if rate is not None else 0.0,
                      "wall_time": elapsed})
    if args.format == "json":
        print(json.dumps(summary))
    else:
        rate_text = f"{rate:.1%}" if rate is not None else "no instance decomposed"
        print(f"{family.value} {mode}: {passed}/{len(counted)} within bound "
              f"({rate_text}), {summary['special']} special, {summary['inapplicable']} inapplicable, "
              f"{elapsed:.2f}s")
        for tag, count in summary["histogram"].items():
            print(f"  {tag:<24} {count}")
        for failure in summary["failures"]:
            print(f"  ❌ seed {failure['seed']}: {failure.get('error', 'bound')}")
    if rate is None:
        logger.warning(f"⚠️ bench decomposed none of {len(records)} instances")
    return EXIT_OK if rate == 1.0 else EXIT_VERIFY_FAILED


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgedecomp",
                                     description="Certified path and cycle decompositions of graphs.",
                                     epilog=__doc__.split("\n\n", 1)[1],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--env", help="configuration environment (default: $EDGEDECOMP_ENV or development)")
    parser.add_argument("--config-dir", help="directory holding <env>.json")
    parser.add_argument("--log-level", choices=("debug", "info", "warning", "error"))
    parser.add_argument("--dump-dir", default=".", help="where state dumps go on exit 70")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a graph within the bound")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=MODES, default="paths")
    p.add_argument("--class", dest="graph_class", choices=CLASSES, default="auto")
    p.add_argument("--endgame-cap", type=int)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition report against a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--decomposition", required=True)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("exact", help="exact path or cycle number of a small graph")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=MODES, default="paths")
    p.add_argument("--cap-vertices", type=int)
    p.add_argument("--cap-edges", type=int)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--keep", type=float, default=0.7, help="edge keep probability (PartialThreeTree)")
    p.add_argument("--name", help="graph name for the Special family")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bench", help="run a driver and the checker over a seeded corpus")
    p.add_argument("--family", required=True, choices=[f.value for f in Family if f != Family.SPECIAL])
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--n-range", type=parse_range, default=(6, 30))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--class", dest="graph_class", choices=CLASSES, default="auto")
    p.add_argument("--workers", type=int)
    p.add_argument("--endgame-cap", type=int)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args.env, args.config_dir).with_overrides(
            endgame_cap=getattr(args, "endgame_cap", None),
            cap_vertices=getattr(args, "cap_vertices", None),
            cap_edges=getattr(args, "cap_edges", None),
        )
    except ConfigError as e:
        print(f"❌ configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(settings, args.log_level)

    try:
        return args.handler(args, settings)
    except (GraphFormatError, InvalidSpec) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_PARSE
    except (InputClassError, DecompositionError) as e:
        print(f"⚠️ not applicable: {e}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except (EndgameTooLarge, CapExceeded) as e:
        print(f"⚠️ cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except BoundViolated as e:
        logger.error(f"bound violated: {e}")
        print(f"❌ internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except UnreachableCase as e:
        path = dump_state(e, Path(args.dump_dir))
        logger.error(f"unreachable case: {e}; state written to {path}")
        print(f"❌ internal error, state dump: {path}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
