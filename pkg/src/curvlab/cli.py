"""Command-line interface: ``curvlab {curvature,classify,verify,export}``.

Exit codes: 0 success, 1 verification violation, 2 usage error, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .curvature import CurvatureError, curvature_report, edge_curvatures, format_fraction
from .enumeration import (
    ClassificationReport,
    classify_maximal_outerplanar,
    classify_positively_curved,
    classify_two_connected,
    write_dot_directory,
)
from .export import to_dot
from .graph import Graph, Graph6Error, GraphError, parse_edge_list, parse_graph6
from .lemmas import CHECKS, EXTRA_CHECKS, run_checks

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


# short numeric aliases accepted by ``verify --lemma``
CHECK_ALIASES = {
    "3.1": "coupling-bound",
    "3.2": "degree-pair",
    "3.3": "exterior-edge",
    "3.4": "degree-two",
    "3.5": "four-face",
    "3.6": "suppression",
}


class InputError(Exception):
    pass


def _parse_g6(code: str, where: str = "") -> Graph:
    try:
        return parse_graph6(code)
    except Graph6Error as exc:
        raise InputError(f"invalid graph6 {code!r}{where}: {exc}") from None


def _load_graphs(args) -> list[Graph]:
    if args.g6 and args.file:
        raise InputError("give either --g6 or --file, not both")
    if args.g6:
        return [_parse_g6(args.g6)]
    if not args.file:
        raise InputError("no graph given; use --g6 CODE or --file PATH")
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)
             if ln.strip() and not ln.lstrip().startswith("#") and ln.strip() != ">>graph6<<"]
    if not lines:
        raise InputError(f"{path} holds no graph")
    if all(len(ln.split()) == 1 and not ln.isdigit() for _, ln in lines):
        return [_parse_g6(ln, f" at {path}:{i}") for i, ln in lines]
    try:
        return [parse_edge_list(text)]
    except GraphError as exc:
        raise InputError(f"invalid edge list in {path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_curvature(args) -> int:
    graphs = _load_graphs(args)
    chunks = []
    for g in graphs:
        try:
            rep = curvature_report(g, edges_only=args.edges_only, cross_check=not args.no_cross_check)
        except CurvatureError as exc:
            raise InputError(str(exc)) from None
        if args.format == "json":
            chunks.append(rep.to_json() + "\n")
        elif args.format == "dot":
            labels = {(p.u, p.v): p.kappa for p in rep.pairs if g.has_edge(p.u, p.v)}
            chunks.append(to_dot(g, labels, decimal=args.decimal))
        else:
            lines = [f"{'u':>3} {'v':>3}  {'kappa':>10}  method"]
            for p in rep.pairs:
                lines.append(f"{p.u:>3} {p.v:>3}  {format_fraction(p.kappa, args.decimal):>10}  {p.method}")
            if args.decimal is not None:
                lines.append(f"(values rounded to {args.decimal} decimals for display only)")
            verdict = "positively curved" if rep.positively_curved else "not positively curved"
            scope = "edges" if args.edges_only else "pairs"
            lines.append(f"verdict: {verdict} (over all {scope})")
            chunks.append("\n".join(lines) + "\n")
    _emit("".join(chunks), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.maximal_only and args.two_connected_only:
        raise InputError("--maximal-only and --two-connected-only are exclusive")
    if args.maximal_only:
        rep = classify_maximal_outerplanar(args.n_max, jobs=args.jobs)
    elif args.two_connected_only:
        rep = classify_two_connected(args.n_max, jobs=args.jobs)
    else:
        rep = classify_positively_curved(args.n_max, jobs=args.jobs)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(rep.to_json() + "\n")
        write_dot_directory(rep, out / "dot")
    if args.format == "json":
        sys.stdout.write(rep.to_json() + "\n")
    else:
        counts = rep.counts()
        print(f"{'n':>3}  {'scanned':>8}  {'positive':>8}")
        for n in sorted(counts):
            print(f"{n:>3}  {rep.scanned.get(n, 0):>8}  {counts[n]:>8}")
        print(f"total positively curved: {rep.total}")
        if rep.graphs:
            print(f"max order: {max(c.n for c in rep.graphs)}  "
                  f"max degree: {max(c.graph.max_degree() for c in rep.graphs)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all or not args.lemma:
        checks = CHECKS
    else:
        checks = tuple(dict.fromkeys(CHECK_ALIASES.get(name, name) for name in args.lemma))
    results = run_checks(checks, n_max=args.n_max, samples=args.samples)
    payload = [r.to_dict() for r in results]
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.lemma:<15} {status}  instances={r.instances:<7} "
                  f"violations={len(r.violations):<4} {r.seconds:6.1f}s  [{r.corpus}]")
            for v in r.violations[:5]:
                print(f"    {json.dumps(v)}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def cmd_export(args) -> int:
    if args.from_report:
        try:
            data = json.loads(Path(args.from_report).read_text())
            rep = ClassificationReport.from_dict(data)
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot load report {args.from_report}: {exc}") from None
        items = [(c.graph, c.edge_kappa) for c in rep.graphs]
    else:
        items = []
        for g in _load_graphs(args):
            if not g.is_connected():
                raise InputError("graph is disconnected")
            items.append((g, edge_curvatures(g)))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, (g, labels) in enumerate(items):
            (out / f"n{g.n:02d}_{i:03d}.dot").write_text(to_dot(g, labels, name=f"G{i}", decimal=args.decimal))
        print(f"wrote {len(items)} DOT files to {out}")
    else:
        sys.stdout.write("".join(to_dot(g, labels, name=f"G{i}", decimal=args.decimal)
                                 for i, (g, labels) in enumerate(items)))
    return EXIT_OK


def _n_max(text: str) -> int:
    n = int(text)
    if not 3 <= n <= 11:
        raise argparse.ArgumentTypeError(f"--n-max must lie in [3, 11], got {n}")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {n}")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvlab", description="Exact Lin-Lu-Yau curvature on small graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("--g6", help="graph6 code of the input graph")
        sp.add_argument("--file", help="file with graph6 lines or a 'u v' edge list")

    def common(sp, formats):
        sp.add_argument("--format", choices=formats, default="table")
        sp.add_argument("--out", help="output path (file or directory)")
        sp.add_argument("--decimal", type=_nonneg, default=None,
                        help="render curvatures with this many decimals (display only)")

    c = sub.add_parser("curvature", help="curvature of every pair or edge of a graph")
    graph_input(c)
    common(c, ("table", "json", "dot"))
    c.add_argument("--edges-only", action="store_true")
    c.add_argument("--no-cross-check", action="store_true", help="skip the independent recomputation")
    c.set_defaults(func=cmd_curvature)

    k = sub.add_parser("classify", help="positively curved outerplanar graphs up to --n-max")
    k.add_argument("--n-max", type=_n_max, default=10)
    k.add_argument("--jobs", type=_positive, default=1)
    k.add_argument("--two-connected-only", action="store_true")
    k.add_argument("--maximal-only", action="store_true")
    common(k, ("table", "json"))
    k.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="corpus checks of the structural lemmas")
    v.add_argument("--all", action="store_true")
    v.add_argument("--lemma", action="append",
                   choices=tuple(CHECK_ALIASES) + CHECKS + EXTRA_CHECKS, metavar="CHECK",
                   help="check to run (repeatable): " + ", ".join(CHECKS + EXTRA_CHECKS)
                   + "; numeric aliases " + ", ".join(CHECK_ALIASES))
    v.add_argument("--samples", type=_nonneg, default=20, help="random couplings per edge")
    v.add_argument("--n-max", type=_n_max, default=10)
    common(v, ("table", "json"))
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="DOT files with curvature edge labels")
    graph_input(e)
    e.add_argument("--from-report", help="classification report.json to export")
    e.add_argument("--out", help="output directory")
    e.add_argument("--decimal", type=_nonneg, default=None)
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"curvlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
