"""Command line interface.

Exit status: 0 on success, 2 when a mathematical precondition fails (not a
train track, not primitive, ...), 3 when a spec file cannot be parsed.
Floats are written with 12 significant digits so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import fractal, graphs, itm, lamination, psa, spectral
from .specfile import AutoSpec, SpecParseError, load_spec
from .words import AlphabetMismatch, Letter, MalformedInput, verify_inverse_pair

EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE = 0, 2, 3


class PreconditionFailed(Exception):
    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check


def num(x: float) -> float:
    return float(f"{x:.12g}")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load(ref: str) -> AutoSpec:
    spec = load_spec(ref)
    try:
        spec.to_graph_map()
    except (graphs.GraphError, MalformedInput, AlphabetMismatch) as exc:
        # well-formed text describing an invalid map
        raise SpecParseError(str(exc), 0, 0, ref) from exc
    return spec


def _train_track(spec: AutoSpec) -> graphs.GraphMap:
    gm = spec.to_graph_map()
    cert = graphs.is_train_track(gm)
    if not cert:
        raise PreconditionFailed("train-track", cert.describe(gm.graph))
    return gm


def _pf(gm: graphs.GraphMap) -> spectral.PFData:
    m = spectral.transition_matrix(gm)
    if not spectral.is_primitive(m):
        raise PreconditionFailed("primitive", "transition matrix is not primitive")
    return spectral.pf_eigenpair(m)


def _edge(gm: graphs.GraphMap, name: str) -> Letter:
    sign = 1
    if name.startswith("~"):
        sign, name = -1, name[1:]
    while name.endswith("'"):
        sign, name = -sign, name[:-1]
    names = gm.graph.edge_names
    if name not in names:
        raise PreconditionFailed("edge", f"unknown edge {name!r}")
    return Letter(names.index(name), sign)


def cmd_validate(args, out) -> int:
    spec = _load(args.spec)
    if args.echo_spec:
        out.write(spec.dump())
        return EXIT_OK
    gm = spec.to_graph_map()
    cert = graphs.is_train_track(gm)
    irreducible = graphs.is_irreducible_representative(gm)
    m = spectral.transition_matrix(gm)
    primitive = spectral.is_primitive(m)
    checks = [("train-track", bool(cert), cert.describe(gm.graph)),
              ("irreducible", irreducible, "no valence 1/2 vertex, strongly connected transitions"),
              ("primitive", primitive, "some power of the transition matrix is positive")]
    inv = spec.inverse_path()
    if inv is not None and spec.mode == "basis":
        other = _load(str(inv))
        if other.mode == "basis":
            ok = verify_inverse_pair(spec.to_morphism(), other.to_morphism())
            checks.append(("inverse", ok, f"declared inverse {spec.inverse}"))
    for name, ok, detail in checks:
        out.write(f"{name}: {'pass' if ok else 'FAIL'} ({detail})\n")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_PRECONDITION


def cmd_eigen(args, out) -> int:
    gm = _train_track(_load(args.spec))
    m = spectral.transition_matrix(gm)
    pf = _pf(gm)
    names = list(gm.graph.edge_names)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["edge"] + names + ["mu"])
        for i, name in enumerate(names):
            w.writerow([name] + [int(v) for v in m[i]] + [fmt(pf.eigenvector[i])])
        w.writerow([])
        w.writerow(["lambda", fmt(pf.eigenvalue)])
        w.writerow(["lower", fmt(pf.enclosure[0])])
        w.writerow(["upper", fmt(pf.enclosure[1])])
        w.writerow(["residual", fmt(pf.residual)])
        w.writerow(["iterations", pf.iterations])
        out.write(buf.getvalue())
    else:
        report = {
            "edges": names,
            "matrix": m.tolist(),
            "charpoly": spectral.char_poly(m) if len(names) <= spectral.MAX_CHARPOLY_ORDER else None,
            "lambda": num(pf.eigenvalue),
            "mu": [num(v) for v in pf.eigenvector],
            "enclosure": [num(v) for v in pf.enclosure],
            "residual": num(pf.residual),
            "iterations": pf.iterations,
        }
        out.write(dump_json(report))
    return EXIT_OK


def cmd_psa(args, out) -> int:
    spec = _load(args.spec)
    gm = _train_track(spec)
    auto = psa.build_psa(gm)
    kind = "oriented"
    if args.unoriented:
        auto, kind = psa.build_unoriented_psa(auto), "unoriented"
    elif not args.full and spec.mode == "basis" and spec.to_morphism().is_positive():
        auto, kind = psa.positive_part(auto), "positive component"
    g = gm.graph
    out.write(f"# {kind} prefix-suffix automaton: {len(auto.vertices)} vertices, {len(auto.edges)} edges\n")
    for a in auto.edges:
        out.write(f"{auto.vertex_name(a.source)} -> {auto.vertex_name(a.target)}  "
                  f"[{g.format_path(a.prefix)} | {g.format_path(a.suffix)}]\n")
    if args.dot:
        Path(args.dot).write_text(psa.to_dot(auto, spec.name.replace("-", "_") or "psa"), encoding="utf-8")
    return EXIT_OK


def cmd_dimension(args, out) -> int:
    pf_phi = _pf(_train_track(_load(args.spec_phi)))
    pf_inv = _pf(_train_track(_load(args.spec_phi_inv)))
    report = fractal.hausdorff_dimension(pf_phi, pf_inv)
    out.write(dump_json({k: num(v) for k, v in report.as_dict().items()}))
    return EXIT_OK


def cmd_leaves(args, out) -> int:
    gm = _train_track(_load(args.spec))
    e = _edge(gm, args.edge)
    seg = lamination.iterate_edge(gm, e, args.depth, max_depth=args.max_depth)
    out.write(" ".join(gm.graph.edge_name(x) for x in seg.path) + "\n")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["edge", "count", "positions"])
            for x in gm.graph.oriented_edges():
                pos = seg.occurrences.get(x, [])
                w.writerow([gm.graph.edge_name(x), len(pos), " ".join(map(str, pos))])
    return EXIT_OK


def cmd_render(args, out) -> int:
    spec = _load(args.spec)
    if spec.mode != "basis" or not spec.to_morphism().is_positive():
        raise PreconditionFailed("positive", "render needs a positive substitution")
    m = spec.to_morphism()
    if args.letter not in m.names:
        raise PreconditionFailed("letter", f"unknown letter {args.letter!r}")
    if not spectral.is_primitive(spectral.transition_matrix(graphs.rose_of(m))):
        raise PreconditionFailed("primitive", "transition matrix is not primitive")
    cloud = fractal.rauzy_points(m, args.letter, args.depth)
    target = Path(args.out)
    if target.suffix == ".csv":
        with open(target, "w", newline="", encoding="utf-8") as fh:
            fh.write(f"# letter={cloud.letter} depth={cloud.depth} points={len(cloud)}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([f"x{i + 1}" for i in range(cloud.points.shape[1])])
            for row in cloud.points:
                w.writerow([fmt(v) for v in row])
    elif target.suffix in (".svg", ".png", ".pdf"):
        from .plotting import plot_point_cloud
        plot_point_cloud(cloud, target)
    else:
        raise PreconditionFailed("output", "expected a .csv, .svg, .png or .pdf file")
    out.write(f"{len(cloud)} points written to {target}\n")
    return EXIT_OK


def cmd_itm(args, out) -> int:
    cfg = itm.bk_config()
    seq = itm.itm_forward_sequence(cfg, args.depth)
    union = seq[-1]
    delta = fractal.hausdorff_dimension(_pf(_train_track(_load("bk"))), _pf(_train_track(_load("bk-inv"))))
    estimate = itm.itm_dimension_estimate(cfg, args.depth) if args.depth >= 6 else None
    boxes = fractal.box_counting_dimension(union)
    report = {
        "alpha": num(cfg.alpha),
        "depth": args.depth,
        "pieces": len(union),
        "totalLength": num(union.total_length),
        "dimensionEstimate": None if estimate is None else num(estimate),
        "boxCounting": num(boxes.dimension),
        "delta": num(delta.delta),
    }
    out.write(dump_json(report))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["depth", "left", "right"])
            for n, u in enumerate(seq):
                for lo, hi in u:
                    w.writerow([n, fmt(lo), fmt(hi)])
    if args.plot:
        from .plotting import plot_box_counting, plot_survivors
        plot_survivors(seq, args.plot)
        p = Path(args.plot)
        plot_box_counting(boxes, p.with_name(p.stem + "-boxes" + p.suffix), f"T^{args.depth}(I)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="traintrack", description="Train-track maps of free group automorphisms: "
                                "checks, automata, measures and limit-set dimensions.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="train-track and irreducibility checks")
    s.add_argument("spec")
    s.add_argument("--echo-spec", action="store_true", help="print the canonical spec and exit")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("eigen", help="transition matrix and Perron-Frobenius data")
    s.add_argument("spec")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_eigen)

    s = sub.add_parser("psa", help="prefix-suffix automaton")
    s.add_argument("spec")
    s.add_argument("--unoriented", action="store_true")
    s.add_argument("--full", action="store_true", help="keep both components of a substitution")
    s.add_argument("--dot", metavar="FILE")
    s.set_defaults(func=cmd_psa)

    s = sub.add_parser("dimension", help="Hausdorff dimension of the limit set")
    s.add_argument("spec_phi")
    s.add_argument("spec_phi_inv")
    s.set_defaults(func=cmd_dimension)

    s = sub.add_parser("leaves", help="iterated edge image f^N(E)")
    s.add_argument("spec")
    s.add_argument("--edge", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--max-depth", type=int, default=lamination.DEFAULT_MAX_DEPTH)
    s.add_argument("--csv", metavar="FILE", help="occurrence table")
    s.set_defaults(func=cmd_leaves)

    s = sub.add_parser("render", help="Rauzy point cloud of a positive substitution")
    s.add_argument("spec")
    s.add_argument("--letter", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("itm", help="Boshernitzan-Kornfeld interval translation report")
    s.add_argument("--depth", type=int, default=14)
    s.add_argument("--csv", metavar="FILE", help="survivor intervals for every depth")
    s.add_argument("--plot", metavar="FILE", help="figure of the survivor intervals")
    s.set_defaults(func=cmd_itm)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SpecParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except FileNotFoundError as exc:
        err.write(f"parse error: no such spec {exc}\n")
        return EXIT_PARSE
    except PreconditionFailed as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    except (graphs.GraphError, ValueError) as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
