"""Command line interface.

Exit codes: 0 yes, 1 no, 2 unknown, 3 for any error. Commands that do not
return a verdict exit 0 on success.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb

from . import construct, counting, decide, fpt, reductions
from .graph6 import emit_graph6, parse_graph6
from .graphs import CapExceeded, ColouredGraph, GraphError, LabelledGraph
from .serialize import SchemaError, dumps_instance, loads_instance

EXIT_ERROR = 3

COUNTERS = {
    "hom": counting.hom_count,
    "sub": counting.sub_count,
    "indsub": counting.indsub_count,
    "surj": counting.surj_count,
}


class CliError(Exception):
    pass


def _graph(text: str):
    return parse_graph6(text.strip())


def _read_instance(path: str):
    with open(path) as fh:
        return loads_instance(fh.read())


def _print_witness(G, out):
    out.write(f"witness {emit_graph6(G.graph if isinstance(G, (ColouredGraph, LabelledGraph)) else G)}\n")
    if isinstance(G, ColouredGraph):
        out.write(f"colours {json.dumps(list(G.colours))}\n")
    elif isinstance(G, LabelledGraph):
        out.write(f"labels {json.dumps([list(p) for p in G.labels])}\n")


def _emit_verdict(v: decide.Verdict, out) -> int:
    out.write(f"{v.status}\n")
    if v.bound is not None:
        out.write(f"bound {v.bound}\n")
    if v.reason:
        out.write(f"reason {v.reason}\n")
    if v.recipe is not None:
        out.write(f"recipe {json.dumps([[g, int(m)] for g, m in v.recipe])}\n")
    if v.witness is not None:
        _print_witness(v.witness, out)
    return v.exit_code


def cmd_count(args, out) -> int:
    F, G = _graph(args.pattern), _graph(args.host)
    out.write(f"{COUNTERS[args.kind](F, G)}\n")
    return 0


def cmd_decide(args, out) -> int:
    inst = _read_instance(args.instance)
    bound = args.bound if args.bound is not None else inst.size_bound
    if bound is not None:
        v = decide.decide_bounded(inst, bound, method=args.method, workers=args.threads)
    else:
        v = decide.decide_unbounded(inst, cap=args.cap)
    if args.verify and v.status == decide.YES and not decide.verify_witness(inst, v.witness, bound):
        raise CliError("witness failed verification")
    return _emit_verdict(v, out)


def cmd_construct(args, out) -> int:
    if args.what == "clique":
        G = construct.construct_clique_graph(args.n, args.k, args.h, part_cap=args.part_cap)
        got = construct.clique_count(G, args.k) if args.verify else None
        parts = construct.clique_parts(args.n, args.k, args.h, part_cap=args.part_cap)
        extra = f" parts={len(parts) if parts else 0}"
    else:
        G = construct.construct_triangle_graph(args.n, args.h)
        got = construct.direct_triangle_count(G) if args.verify else None
        extra = ""
    if got is not None and got != args.h:
        raise CliError(f"constructed graph has {got} copies, wanted {args.h}")
    out.write(emit_graph6(G) + "\n")
    status = "verified" if got is not None else "unverified"
    out.write(f"# vertices={G.order} count={args.h}{extra} {status}\n")
    return 0


def cmd_fpt(args, out) -> int:
    if args.what == "single":
        F = _graph(args.pattern)
        v = fpt.single_hom_decide(F, args.h, search_cap=args.search_cap)
        if args.verify and v.status == decide.YES:
            total = sum(m * counting.hom_count(F, _graph(g)) for g, m in v.recipe)
            if total != args.h:
                raise CliError("recipe failed verification")
    else:
        inst = _read_instance(args.instance)
        v = fpt.equisize_sub_decide(inst.constraints)
        if args.verify and v.status == decide.YES:
            for c in inst.constraints:
                total = sum(m * counting.sub_count(c.pattern, _graph(g)) for g, m in v.recipe)
                if total != c.count:
                    raise CliError("recipe failed verification")
    return _emit_verdict(v, out)


def cmd_region(args, out) -> int:
    pats = [_graph(t) for t in args.patterns.split(",")]
    vecs = decide.region_map(args.n, pats, kind=args.kind, exactly=not args.at_most, workers=args.threads)
    text = decide.region_csv(vecs, len(pats))
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
        out.write(f"# {len(vecs)} points written to {args.out}\n")
    else:
        out.write(text)
    return 0


def _parse_sets(text: str) -> list[set[int]]:
    return [{int(x) for x in part.split(",") if x.strip()} for part in text.split(";") if part.strip()]


def cmd_gen(args, out) -> int:
    if args.what == "setsplitting":
        inst = reductions.gen_setsplitting(reductions.SetSplittingInput(args.k, tuple(_parse_sets(args.sets))))
    elif args.what == "qpoly":
        inst = reductions.gen_qpoly(reductions.QPolyInput(args.a, args.b, args.c))
    else:
        subset = tuple(int(x) for x in args.subset.split(",") if x.strip()) if args.subset else ()
        inp = reductions.EC3ColInput(_graph(args.graph), subset, args.k)
        inst = reductions.gen_ec3col(inp, bounded=not args.unbounded)
    out.write(dumps_instance(inst) + "\n")
    return 0


def cmd_kamke(args, out) -> int:
    dec = construct.kamke_decompose(args.n, args.k, part_cap=args.part_cap)
    out.write(json.dumps({"n": args.n, "k": args.k, "parts": list(dec.parts),
                          "terms": [comb(a, args.k) for a in dec.parts]}) + "\n")
    return 0


def _threads(text: str) -> int:
    t = int(text)
    if t < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return t


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_threads, default=None,
                        help="worker processes for enumeration (output does not depend on it)")
    common.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                        help="re-count emitted witnesses before printing (default on)")
    p = argparse.ArgumentParser(prog="homrec", description="Homomorphism and subgraph count reconstruction.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count hom/sub/indsub/surj from pattern to host", parents=[common])
    c.add_argument("--pattern", required=True)
    c.add_argument("--host", required=True)
    c.add_argument("--kind", choices=sorted(COUNTERS), default="hom")
    c.set_defaults(func=cmd_count)

    d = sub.add_parser("decide", help="decide a JSON instance", parents=[common])
    d.add_argument("--instance", required=True)
    d.add_argument("--bound", type=int)
    d.add_argument("--cap", type=int, help="largest union-of-images bound searched when unbounded "
                                           "(default HOMREC_CAP or %d)" % decide.DEFAULT_UNBOUNDED_CAP)
    d.add_argument("--method", choices=["auto", "enumerate", "images"], default="auto")
    d.set_defaults(func=cmd_decide)

    k = sub.add_parser("construct", help="build a graph with a prescribed clique count")
    ks = k.add_subparsers(dest="what", required=True)
    kc = ks.add_parser("clique", parents=[common])
    kc.add_argument("--n", type=int, required=True)
    kc.add_argument("--k", type=int, required=True)
    kc.add_argument("--h", type=int, required=True)
    kc.add_argument("--part-cap", type=int)
    kt = ks.add_parser("triangle", parents=[common])
    kt.add_argument("--n", type=int, required=True)
    kt.add_argument("--h", type=int, required=True)
    k.set_defaults(func=cmd_construct)

    f = sub.add_parser("fpt", help="pattern-parameterised deciders")
    fs = f.add_subparsers(dest="what", required=True)
    f1 = fs.add_parser("single", parents=[common])
    f1.add_argument("--pattern", required=True)
    f1.add_argument("--h", type=int, required=True)
    f1.add_argument("--search-cap", type=int, default=fpt.DEFAULT_SEARCH_CAP)
    f2 = fs.add_parser("equisub", parents=[common])
    f2.add_argument("--instance", required=True)
    f.set_defaults(func=cmd_fpt)

    r = sub.add_parser("region", help="realised count vectors over all graphs on n vertices, as CSV", parents=[common])
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--patterns", required=True, help="comma separated graph6 strings")
    r.add_argument("--kind", choices=["sub", "hom", "indsub"], default="sub")
    r.add_argument("--at-most", action="store_true", help="hosts with at most n vertices")
    r.add_argument("--out", help="CSV path (default stdout)")
    r.set_defaults(func=cmd_region)

    g = sub.add_parser("gen", help="emit a reduction instance as JSON")
    gs = g.add_subparsers(dest="what", required=True)
    g1 = gs.add_parser("setsplitting", parents=[common])
    g1.add_argument("--k", type=int, required=True)
    g1.add_argument("--sets", required=True, help='subsets like "1,2;2,3"')
    g2 = gs.add_parser("qpoly", parents=[common])
    for name in ("a", "b", "c"):
        g2.add_argument(f"--{name}", type=int, required=True)
    g3 = gs.add_parser("ec3col", parents=[common])
    g3.add_argument("--graph", required=True)
    g3.add_argument("--subset", default="")
    g3.add_argument("--k", type=int, required=True)
    g3.add_argument("--unbounded", action="store_true")
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("kamke", help="short sum of binomial coefficients", parents=[common])
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--part-cap", type=int)
    m.set_defaults(func=cmd_kamke)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT_ERROR
    if args.threads is not None:
        os.environ["HOMREC_THREADS"] = str(args.threads)
    try:
        return args.func(args, out)
    except (GraphError, SchemaError, CliError, ValueError, OSError, CapExceeded) as exc:
        sys.stderr.write(f"homrec: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
