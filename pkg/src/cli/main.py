"""
Command-line front door.

    python -m src.cli construct s-star --n 4 --k 2 --out abp.json
    python -m src.cli expand --abp abp.json
    python -m src.cli eval ncdet --k 3 --point 1,2,3,4,5,6,7,8,9
    python -m src.cli count-paths --graph tri.txt --k 3 --method rdet
    python -m src.cli rdet --matrix entries.json
    python -m src.cli verify --suite all --max-n 5 --max-k 3
    python -m src.cli bench --max-n 6 --max-k 4

Exit codes: 0 ok, 1 bad input, 2 a size guard refused the work,
3 a verification suite failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from src import config
from src.abp.core import expand, eval_scalar
from src.abp.export import load_abp, save_json, to_dot, to_json
from src.abp.transforms import hadamard_abp
from src.algebra.algebras import AlgebraElement, MatrixAlgebra
from src.algebra.rectangular import parse_matrix_entries, rdet_dp, rper_algebra, rper_dp
from src.algebra.scalars import field_from_spec, field_of
from src.applications.graphs import graph_poly_abp, load_digraph
from src.applications.paths import COUNTERS, count_k_paths, filter_abp
from src.cli.bench import ratio_outliers, run_bench
from src.cli.verify import SUITES, run_suites
from src.constructions.determinant import (
    construct_ncdet,
    construct_positive_weak,
    construct_rdet,
    construct_rdet_nc,
    construct_rper_commutative,
    construct_Snc,
    construct_Snk_classic,
    construct_weak_S_star,
)
from src.constructions.symmetric import build_B1, build_B2, construct_rper_nc, construct_S_star
from src.errors import AbpError, GuardExceeded, InvalidParameterError, VerificationFailed
from src.poly.ncpoly import FlatVars, RectMatrixVars

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────
# CONSTRUCTIONS BY NAME
# ──────────────────────────────────────────────

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InvalidParameterError(f"--{name} is required for this construction")


def _graph_poly(args, field):
    if not args.graph:
        raise InvalidParameterError("--graph is required for graph-poly")
    G = load_digraph(args.graph)
    return graph_poly_abp(G, args.k, field), FlatVars(G.n, "z")


# name -> (required flags, builder(args, field) -> (ABP, namer))
CONSTRUCTIONS = {
    "s-star": (("n", "k"), lambda a, f: (construct_S_star(a.n, a.k, f), FlatVars(a.n))),
    "b1": (("n", "k"), lambda a, f: (build_B1(a.n, a.k, f), FlatVars(a.n))),
    "b2": (("n", "k"), lambda a, f: (build_B2(a.n, a.k, f), FlatVars(a.n))),
    "rper-nc": (("n", "k"), lambda a, f: (construct_rper_nc(a.k, a.n, f), RectMatrixVars(a.k, a.n))),
    "ncdet": (("k",), lambda a, f: (construct_ncdet(a.k, f), RectMatrixVars(a.k, a.k))),
    "weak-s-star": (("n", "k"), lambda a, f: (construct_weak_S_star(a.n, a.k, field=f), FlatVars(a.n))),
    "positive-weak": (("n", "k"), lambda a, f: (construct_positive_weak(a.n, a.k, field=f), FlatVars(a.n))),
    "snk-classic": (("n", "k"), lambda a, f: (construct_Snk_classic(a.n, a.k, f), FlatVars(a.n, "x"))),
    "snc": (("n", "k"), lambda a, f: (construct_Snc(a.n, a.k, f), FlatVars(a.n, "z"))),
    "rdet": (("n", "k"), lambda a, f: (construct_rdet(a.k, a.n, f), RectMatrixVars(a.k, a.n, "x"))),
    "rdet-nc": (("n", "k"), lambda a, f: (construct_rdet_nc(a.k, a.n, f), RectMatrixVars(a.k, a.n))),
    "rper-comm": (("n", "k"), lambda a, f: (construct_rper_commutative(a.k, a.n, f), RectMatrixVars(a.k, a.n, "x"))),
    "graph-poly": (("k",), _graph_poly),
    "filter": (("n", "k"), lambda a, f: (filter_abp(a.k, a.n, f), RectMatrixVars(2 * a.k, 2 * a.n))),
}


def build_named(args):
    """ABP plus variable namer from --abp or a construction name."""
    field = field_from_spec(args.field)
    if getattr(args, "abp", None):
        b = load_abp(args.abp)
        return b, FlatVars(b.nvars)
    if not args.name:
        raise InvalidParameterError("give a construction name or --abp FILE")
    if args.name not in CONSTRUCTIONS:
        raise InvalidParameterError(f"unknown construction {args.name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    required, builder = CONSTRUCTIONS[args.name]
    _need(args, *required)
    return builder(args, field)


def _emit(args, text):
    if args.out:
        save_json(args.out, text)
        if not args.quiet:
            print(f"✅ wrote {args.out}")
    else:
        sys.stdout.write(text)


# ──────────────────────────────────────────────
# VERBS
# ──────────────────────────────────────────────

def cmd_construct(args):
    b, namer = build_named(args)
    if not args.quiet:
        print(f"📐 {args.name}: {b.size} nodes, {b.num_edges} edges, {len(b.layers)} layers", file=sys.stderr)
    _emit(args, to_dot(b, namer) if args.format == "dot" else to_json(b))
    return 0


def cmd_expand(args):
    b, namer = build_named(args)
    _emit(args, expand(b).dump(namer))
    return 0


def _parse_point(args, b):
    field = b.field
    if args.ones:
        return {v: field.one for v in range(b.nvars)}
    if not args.point:
        raise InvalidParameterError("eval needs --point a,b,... or --ones")
    values = [field.parse(x) for x in args.point.split(",") if x.strip()]
    if len(values) != b.nvars:
        raise InvalidParameterError(f"--point has {len(values)} values, the ABP has {b.nvars} variables")
    return dict(enumerate(values))


def cmd_eval(args):
    b, _ = build_named(args)
    value = eval_scalar(b, _parse_point(args, b))
    print(b.field.format(value))
    return 0


def cmd_hadamard(args):
    if len(args.inputs) != 2:
        raise InvalidParameterError("hadamard takes exactly two ABP files")
    left, right = (load_abp(path) for path in args.inputs)
    product = hadamard_abp(left, right)
    if not args.quiet:
        print(f"🔗 product: {product.size} nodes, {product.num_edges} edges", file=sys.stderr)
    _emit(args, to_dot(product) if args.format == "dot" else to_json(product))
    return 0


def cmd_count_paths(args):
    if not args.graph:
        raise InvalidParameterError("count-paths needs --graph FILE")
    _need(args, "k")
    G = load_digraph(args.graph)
    print(count_k_paths(G, args.k, args.method, field_from_spec(args.field)))
    return 0


def _rectangular(args, signed):
    if not args.matrix:
        raise InvalidParameterError(f"{args.verb} needs --matrix FILE")
    with open(args.matrix, "r", encoding="utf-8") as f:
        data = json.load(f)
    A = parse_matrix_entries(data, field_from_spec(args.field), r=args.r)
    if isinstance(A[0][0], AlgebraElement):
        value = rper_algebra(A, signed)
        algebra = value.algebra
        if isinstance(algebra, MatrixAlgebra):
            for row in algebra.to_matrix(value):
                print(" ".join(algebra.field.format(c) for c in row))
        else:
            print(" ".join(algebra.field.format(c) for c in value.coords))
        return 0
    value = rdet_dp(A) if signed else rper_dp(A)
    print(field_of(A[0][0]).format(value))
    return 0


def cmd_rper(args):
    return _rectangular(args, signed=False)


def cmd_rdet(args):
    return _rectangular(args, signed=True)


def cmd_verify(args):
    for name in args.suite:
        if name != "all" and name not in SUITES:
            raise InvalidParameterError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    seed = config.SEED if args.seed is None else args.seed
    results = run_suites(args.suite, args.max_n, args.max_k, seed=seed, quiet=args.quiet)
    failed = [r for r in results if not r.passed]
    if not args.quiet:
        for r in results:
            mark = "✅" if r.passed else "❌"
            print(f"  {mark} {r.suite:<12} {r.case:<24} {r.detail} ({r.seconds:.2f}s)")
        print(f"\n📊 {len(results) - len(failed)}/{len(results)} cases passed")
    if failed:
        raise VerificationFailed(f"{len(failed)} case(s) failed, first: {failed[0].suite} {failed[0].case}")
    return 0


def cmd_bench(args):
    df = run_bench(args.max_n, args.max_k, quiet=args.quiet)
    if args.out:
        save_json(args.out, df.to_json(orient="records", indent=2) + "\n")
    print("📊 construction sizes and times")
    print(df.to_string(index=False))
    slow = ratio_outliers(df)
    if not slow.empty:
        print(f"\n⚠️ {len(slow)} row(s) over the time-per-node factor gate:")
        print(slow.to_string(index=False))
    return 0


VERBS = {
    "construct": cmd_construct,
    "expand": cmd_expand,
    "eval": cmd_eval,
    "hadamard": cmd_hadamard,
    "count-paths": cmd_count_paths,
    "rper": cmd_rper,
    "rdet": cmd_rdet,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="abp", description="Explicit ABP constructions and checks")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default from ABP_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--field", default=config.DEFAULT_FIELD, help="rational or fp:<p>")
        p.add_argument("--out", default=None)
        p.add_argument("--quiet", action="store_true")

    def shape(p):
        p.add_argument("name", nargs="?", default=None, help=", ".join(CONSTRUCTIONS))
        p.add_argument("--abp", default=None, help="load the ABP from a JSON file instead")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--graph", default=None, help="edge-list file for graph-poly")

    p = sub.add_parser("construct", help="build an ABP and write JSON or DOT")
    common(p)
    shape(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("expand", help="canonical polynomial dump")
    common(p)
    shape(p)

    p = sub.add_parser("eval", help="value at a scalar point")
    common(p)
    shape(p)
    p.add_argument("--point", default=None, help="comma-separated scalars, one per variable")
    p.add_argument("--ones", action="store_true", help="evaluate at all ones")

    p = sub.add_parser("hadamard", help="product ABP of two JSON ABPs")
    common(p)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("count-paths", help="count simple directed k-paths")
    common(p)
    p.add_argument("--graph", default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--method", choices=tuple(COUNTERS), default="direct")

    for verb in ("rper", "rdet"):
        p = sub.add_parser(verb, help=f"{verb} of a matrix-entry JSON file")
        common(p)
        p.add_argument("--matrix", default=None)
        p.add_argument("--r", type=int, default=None, help="size of M_r for coordinate cells")

    p = sub.add_parser("verify", help="run oracle suites")
    common(p)
    p.add_argument("--suite", nargs="+", default=["all"])
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("bench", help="size/time table")
    common(p)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-k", type=int, default=4)
    return parser


def run(argv=None):
    """Parse argv, run one verb, return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    config.setup_logging(args.log_level)
    try:
        if getattr(args, "n", None) is not None and args.n < 1:
            raise InvalidParameterError("--n must be >= 1")
        if getattr(args, "k", None) is not None and args.k < 1:
            raise InvalidParameterError("--k must be >= 1")
        return VERBS[args.verb](args)
    except GuardExceeded as exc:
        print(f"⚠️ {exc}", file=sys.stderr)
        return 2
    except VerificationFailed as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 3
    except AbpError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
