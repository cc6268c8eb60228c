"""``hopspan`` command line: gen, build, verify, audit, demo.

Exit codes: 0 pass, 1 usage or validation error, 2 failed bound check.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .gen import KINDS, GenSpec, generate
from .geometry import ForeignEdgeError, SpannerGraph, udg_build
from .spanners import BUILDERS, build_hop2
from .svg import render_svg
from .verify import STRETCH_BOUNDS, BoundCheck, audit_bounds, hop_stretch, is_plane

EXIT_OK, EXIT_USAGE, EXIT_BOUND = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopspan", description="Sparse k-hop spanners of unit disk graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a point set")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--box", type=float, default=1.0)
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--groups", type=int, default=2)
    g.add_argument("--eps", type=float, default=0.02)
    g.add_argument("--r", type=float, default=1.0)
    g.add_argument("--out", required=True)

    algos = sorted(STRETCH_BOUNDS)
    b = sub.add_parser("build", help="build a spanner")
    b.add_argument("--algo", required=True, choices=algos)
    b.add_argument("--in", dest="inp", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--svg")
    b.add_argument("--dump-nets", help="hop2 only: write hull boundary and nets per cell pair")

    v = sub.add_parser("verify", help="check a spanner against its unit disk graph")
    v.add_argument("--graph", "--in", dest="inp", required=True)
    v.add_argument("--spanner", required=True)
    v.add_argument("--algo", choices=algos, help="also check this builder's bounds")
    v.add_argument("--report")

    a = sub.add_parser("audit", help="build, verify and check bounds in one pass")
    a.add_argument("--algo", required=True, choices=algos)
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--out", help="also write the edge list")
    a.add_argument("--svg")
    a.add_argument("--report")

    d = sub.add_parser("demo", help="run the acceptance experiments")
    d.add_argument("--only", help="comma-separated criterion numbers")
    d.add_argument("--report")
    return p


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _write_svg(path, ps, s: SpannerGraph, algo: str) -> None:
    Path(path).write_text(render_svg(ps.xy, s.edges, cells=algo != "circle4"))


def _build(ps, algo: str, dump_nets: str | None = None):
    g = udg_build(ps)
    if algo == "hop2" and dump_nets:
        trace = []
        s = build_hop2(g, trace)
        Path(dump_nets).write_text(json.dumps(trace) + "\n")
    else:
        s = BUILDERS[algo](g)
    return g, s


def cmd_gen(args) -> int:
    spec = GenSpec(args.kind, n=args.n, seed=args.seed, box=args.box, t=args.t,
                   groups=args.groups, eps=args.eps, r=args.r)
    ps, meta = generate(spec)
    io.write_points(args.out, ps, meta)
    return EXIT_OK


def cmd_build(args) -> int:
    if args.dump_nets and args.algo != "hop2":
        raise UsageError("--dump-nets only applies to --algo hop2")
    ps, _ = io.read_points(args.inp)
    _, s = _build(ps, args.algo, args.dump_nets)
    io.write_edges(args.out, s.edges)
    if args.svg:
        _write_svg(args.svg, ps, s, args.algo)
    return EXIT_OK


def cmd_verify(args) -> int:
    ps, _ = io.read_points(args.inp)
    g = udg_build(ps)
    s = SpannerGraph(g, io.read_edges(args.spanner, len(ps)))
    foreign = s.foreign_edges()
    if len(foreign):
        raise ForeignEdgeError(foreign)
    if args.algo:
        rep = audit_bounds(g, s, args.algo)
    else:
        rep = hop_stretch(g, s)
        rep.bound_checks = [BoundCheck("connected", 1, int(rep.stretch != float("inf")),
                                       rep.stretch != float("inf"))]
    if rep.planar is None:
        rep.planar, rep.crossing = is_plane(s)
    _emit(rep.to_json(), args.report)
    return EXIT_OK if rep.passed else EXIT_BOUND


def cmd_audit(args) -> int:
    ps, _ = io.read_points(args.inp)
    g, s = _build(ps, args.algo)
    if args.out:
        io.write_edges(args.out, s.edges)
    if args.svg:
        _write_svg(args.svg, ps, s, args.algo)
    rep = audit_bounds(g, s, args.algo)
    if rep.planar is None:
        rep.planar, rep.crossing = is_plane(s)
    doc = rep.to_json()
    doc.update({"algo": args.algo, "n": g.n, "udg_edges": g.m})
    _emit(doc, args.report)
    return EXIT_OK if rep.passed else EXIT_BOUND


def cmd_demo(args) -> int:
    from .acceptance import CRITERIA
    wanted = None
    if args.only:
        try:
            wanted = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise UsageError(f"--only expects comma-separated integers, got {args.only!r}")
    results = []
    for k, fn in enumerate(CRITERIA, 1):
        if wanted is not None and k not in wanted:
            continue
        res = fn()
        print(res.line(), flush=True)
        results.append(res)
    if args.report:
        Path(args.report).write_text(json.dumps(
            [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail,
              "seconds": round(r.seconds, 3)} for r in results], indent=2) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_BOUND


COMMANDS = {"gen": cmd_gen, "build": cmd_build, "verify": cmd_verify,
            "audit": cmd_audit, "demo": cmd_demo}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, RuntimeError) as e:
        print(f"hopspan: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
