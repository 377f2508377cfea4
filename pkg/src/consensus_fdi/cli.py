"""``consensus-fdi`` command line front end.

Exit codes: 0 success or positive verdict, 3 negative verdict, 2 usage or
input error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

import numpy as np

from . import detect, distinguish, exactalg, graphio, paths, sim
from .digraph import Digraph, Edge, laplacian
from .errors import DigraphError, DimensionMismatch

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_NEGATIVE = 3


class UsageError(Exception):
    pass


def parse_edges(spec: str) -> list[Edge]:
    """``"1>2,3>4"`` -> ``[Edge(1, 2), Edge(3, 4)]``."""
    edges = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        tail, sep, head = item.partition(">")
        if not sep:
            raise UsageError(f"edge literal {item!r} must look like 'tail>head'")
        try:
            edges.append(Edge(int(tail), int(head)))
        except ValueError:
            raise UsageError(f"edge literal {item!r} has non-integer endpoints") from None
    return edges


def _observer(g: Digraph, i: int) -> int:
    if not 1 <= i <= g.n:
        raise UsageError(f"observer {i} outside [1, {g.n}]")
    return i


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


def _matrix_text(m) -> str:
    width = max(len(str(x)) for row in m for x in row) if m else 1
    return "\n".join("  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in m)


def _dist(d) -> str:
    return "inf" if d == paths.INF else str(int(d))


def cmd_info(args) -> int:
    g = graphio.load_graph(args.graph)
    lap = laplacian(g)
    roots = sorted(paths.out_branching_roots(g))
    strong = paths.is_strongly_connected(g)
    cp = exactalg.char_poly(g)
    doc = {
        "n": g.n,
        "edge_count": len(g.edges),
        "edges": [list(e) for e in g.sorted_edges()],
        "laplacian": [list(r) for r in lap],
        "out_branching_roots": roots,
        "strongly_connected": strong,
        "char_poly": list(cp.coeffs),
        "char_poly_text": str(cp),
    }
    text = "\n".join([
        f"vertices: {g.n}",
        f"edges: {len(g.edges)}  " + " ".join(str(e) for e in g.sorted_edges()),
        "laplacian:",
        _matrix_text(lap),
        f"out-branching roots: {roots if roots else 'none'}",
        f"strongly connected: {'yes' if strong else 'no'}",
        f"det(sI + L) = {cp}",
    ])
    _emit(args, doc, text)
    return EXIT_OK


def cmd_distinguish(args) -> int:
    g1, g2 = graphio.load_graph(args.graph_a), graphio.load_graph(args.graph_b)
    v = distinguish.is_distinguishable(g1, g2, _observer(g1, args.observer))
    lines = [
        f"observer: {v.observer}",
        f"distinguishable: {'yes' if v.distinguishable else 'no'}",
        f"first divergent moment: {v.first_divergent_moment}",
    ]
    if v.certificate:
        c = v.certificate
        lines.append(
            f"certificate: vertex {c.vertex} {c.kind} "
            f"(G1 d={_dist(c.first[0])} c={c.first[1]}; G2 d={_dist(c.second[0])} c={c.second[1]})"
        )
    else:
        lines.append("certificate: none")
    _emit(args, v.to_dict(), "\n".join(lines))
    return EXIT_OK if v.distinguishable else EXIT_NEGATIVE


def _criterion_line(name: str, r: detect.CriterionResult) -> str:
    extra = f" witness={r.witness}" if r.witness is not None else ""
    why = f" ({r.reason})" if r.reason else ""
    return f"{name}: {r.status.value}{extra}{why}"


def cmd_detect(args) -> int:
    g = graphio.load_graph(args.graph)
    i = _observer(g, args.observer)
    if args.node is not None:
        report = detect.node_failure_detectable(g, args.node, i)
    else:
        report = detect.detect_report(g, parse_edges(args.fail), i)
    lines = [
        "failure set: " + (" ".join(str(e) for e in sorted(report.failure_set)) or "(empty)"),
        f"observer: {i}",
        _criterion_line("prop1", report.prop1),
        _criterion_line("prop2", report.prop2),
        _criterion_line("cor3", report.cor3),
        f"exact: {'detectable' if report.detectable else 'not detectable'}"
        f" (first divergent moment {report.exact.first_divergent_moment})",
    ]
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.detectable else EXIT_NEGATIVE


def _plan_text(plan: detect.ObservationPlan) -> str:
    mode = "literal (mutate and recompute)" if plan.literal else "set cover on original digraph"
    lines = [f"mode: {mode}", f"observers: {list(plan.observers)}"]
    for o, c in zip(plan.observers, plan.covered):
        lines.append(f"  {o}: " + " ".join(str(e) for e in sorted(c)))
    lines.append("residual: " + (" ".join(str(e) for e in sorted(plan.residual)) or "none"))
    return "\n".join(lines)


def cmd_observe(args) -> int:
    g = graphio.load_graph(args.graph)
    modes = [False, True] if args.both else [args.literal]
    plans = [detect.greedy_observation_set(g, literal=m) for m in modes]
    if len(plans) == 1:
        _emit(args, plans[0].to_dict(), _plan_text(plans[0]))
    else:
        _emit(
            args,
            {"plans": [p.to_dict() for p in plans]},
            "\n\n".join(_plan_text(p) for p in plans),
        )
    return EXIT_OK


def _initial_state(args, g1: Digraph, g2: Digraph | None) -> np.ndarray:
    spec = args.x0
    if spec == "random":
        return np.random.default_rng(args.seed).standard_normal(g1.n)
    if spec == "witness":
        if g2 is None or args.observer is None:
            raise UsageError("--x0 witness needs two graphs and --observer")
        return np.array(distinguish.witness_initial_condition(g1, g2, args.observer), dtype=float)
    try:
        x0 = np.array([float(v) for v in spec.split(",")])
    except ValueError:
        raise UsageError(f"--x0 must be a comma list, 'random' or 'witness', got {spec!r}") from None
    if x0.size != g1.n:
        raise UsageError(f"--x0 has {x0.size} entries, digraph has {g1.n}")
    return x0


def cmd_simulate(args) -> int:
    g1 = graphio.load_graph(args.graph)
    g2 = graphio.load_graph(args.graph_b) if args.graph_b else None
    if g2 is not None and g2.n != g1.n:
        raise DimensionMismatch(f"vertex counts differ: {g1.n} vs {g2.n}")
    if args.observer is not None:
        _observer(g1, args.observer)
    if args.steps < 2 or args.tmax <= 0:
        raise UsageError("need --steps >= 2 and --tmax > 0")
    x0 = _initial_state(args, g1, g2)
    grid = sim.default_grid(args.tmax, args.steps)
    out = Path(args.out)
    sim.simulate(g1, x0, grid).to_csv(out)
    written = [str(out)]
    doc = {"x0": x0.tolist(), "trajectory": str(out)}
    lines = [f"x0: {x0.tolist()}"]
    if g2 is not None:
        out_b = out.with_name(out.stem + ".b" + out.suffix)
        sim.simulate(g2, x0, grid).to_csv(out_b)
        written.append(str(out_b))
        doc["trajectory_b"] = str(out_b)
        if args.observer is not None:
            gap = sim.response_gap(g1, g2, args.observer, x0, grid)
            out_gap = out.with_name(out.stem + ".gap" + out.suffix)
            gap.to_csv(out_gap)
            written.append(str(out_gap))
            doc.update(gap=str(out_gap), observer=args.observer, max_gap=gap.max_gap)
            lines.append(f"observer {args.observer} max_gap: {gap.max_gap:.6e}")
    lines.append("wrote: " + ", ".join(written))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_lemma1(args) -> int:
    g = graphio.load_graph(args.graph)
    if args.pair:
        i, j = args.pair
        if i == j or not (1 <= i <= g.n and 1 <= j <= g.n):
            raise UsageError(f"--pair needs two distinct vertices in [1, {g.n}]")
        reports = [r for r in exactalg.lemma1_table(g) if (r.i, r.j) == (i, j)]
    else:
        reports = exactalg.lemma1_table(g)
    rows = []
    lines = [f"{'i':>3} {'j':>3} {'d':>4} {'c_d':>5} {'deg':>4} {'|lead|':>7}  status"]
    for r in reports:
        deg = r.poly.degree if r.poly is not None else None
        lead = abs(r.poly.leading) if r.poly is not None else None
        deg_text = "-inf" if deg == float("-inf") else str(deg)
        lines.append(
            f"{r.i:>3} {r.j:>3} {_dist(r.distance):>4} {r.path_count:>5} "
            f"{deg_text:>4} {lead:>7}  {r.status}"
        )
        rows.append({
            "i": r.i,
            "j": r.j,
            "distance": None if r.distance == paths.INF else int(r.distance),
            "path_count": r.path_count,
            "minor": list(r.poly.coeffs),
            "status": r.status,
        })
    _emit(args, {"pairs": rows}, "\n".join(lines))
    return EXIT_NEGATIVE if any(r.passed is False for r in reports) else EXIT_OK


def cmd_gen(args) -> int:
    g = graphio.random_digraph(args.n, args.p, random.Random(args.seed))
    graphio.dump_graph(g, args.out)
    print(f"wrote {args.out}: n={g.n}, {len(g.edges)} edges")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="consensus-fdi",
        description="Distinguishability and link-failure detectability for consensus digraphs.",
    )
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[fmt], help="summarise a digraph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("distinguish", parents=[fmt], help="exact distinguishability of two digraphs")
    s.add_argument("graph_a")
    s.add_argument("graph_b")
    s.add_argument("--observer", type=int, required=True)
    s.set_defaults(func=cmd_distinguish)

    s = sub.add_parser("detect", parents=[fmt], help="detectability of a link-failure set")
    s.add_argument("graph")
    what = s.add_mutually_exclusive_group(required=True)
    what.add_argument("--fail", help="failed edges, e.g. '1>2,3>4'")
    what.add_argument("--node", type=int, help="failed agent (all incident edges)")
    s.add_argument("--observer", type=int, required=True)
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("observe", parents=[fmt], help="greedy observation points")
    s.add_argument("graph")
    s.add_argument("--literal", action="store_true", help="mutate-and-recompute semantics")
    s.add_argument("--both", action="store_true", help="run both semantics for comparison")
    s.set_defaults(func=cmd_observe)

    s = sub.add_parser("simulate", parents=[fmt], help="write trajectory (and gap) CSVs")
    s.add_argument("graph")
    s.add_argument("graph_b", nargs="?")
    s.add_argument("--x0", default="random", help="comma list, 'random' or 'witness'")
    s.add_argument("--observer", type=int)
    s.add_argument("--tmax", type=float, default=sim.DEFAULT_TMAX)
    s.add_argument("--steps", type=int, default=sim.DEFAULT_STEPS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default="trajectory.csv")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("lemma1", parents=[fmt], help="check minor degrees against shortest paths")
    s.add_argument("graph")
    which = s.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="every ordered pair (default)")
    which.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    s.set_defaults(func=cmd_lemma1)

    s = sub.add_parser("gen", help="write a random digraph fixture")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.WARNING)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, DigraphError, OSError) as exc:
        kind = type(exc).__name__
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
