"""Command-line interface.

Verbs:
  check     run the verification suites of a problem, emit a JSON report
  resolve   print the windowed complete resolution of a stalk module
  endring   print the graded End cohomology table and its products
  homtable  print the module-level stable-Hom oracle table

Problems are JSON files; bundled problems (cyclic2, cyclic3, trunc2, trunc3,
nonformal3, dual_cyclic2, kxk_cyclic2, ikm_2_3) can be named without a path.
Exit code 0 means every assertion passed.
"""

import argparse
import sys
from importlib import resources

from .complexes import Window
from .dgworld import end_ring, oracle_stable_hom, build_dg_window
from .errors import StablehomError
from .problems import (
    DEFAULT_SEED,
    dumps_canonical,
    finalize_report,
    load_problem,
    new_report,
    parse_field_spec,
    validate_report,
)
from .qmodules import stalk
from .resolutions import complete_resolution
from .suites import ProblemContext, run_suite


def _find_problem(name):
    import os
    if os.path.exists(name):
        return name
    base = name if name.endswith(".json") else name + ".json"
    ref = resources.files("stablehom").joinpath("problems").joinpath(base)
    if ref.is_file():
        return str(ref)
    return name  # let load_problem report the error


def _apply_overrides(problem, args):
    if getattr(args, "field", None):
        problem.field_spec = parse_field_spec(args.field, "--field")
    if getattr(args, "window", None):
        lo, hi = args.window
        problem.window = (lo, hi)
    return problem


def _load(args):
    problem = load_problem(_find_problem(args.problem))
    return _apply_overrides(problem, args)


def cmd_check(args):
    problem = _load(args)
    suites = args.suites if args.suites else problem.suites
    ctx = ProblemContext(problem, seed=args.seed)
    report = new_report(problem, args.seed)
    for name in suites:
        frag = run_suite(ctx, name)
        report["suites"].append(frag)
        counts = sum(1 for c in frag["checks"] if c["status"] == "pass")
        print(f"suite {frag['name']}: {frag['status']} "
              f"({counts}/{len(frag['checks'])} checks)", file=sys.stderr)
    finalize_report(report)
    validate_report(report)
    text = dumps_canonical(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0 if report["num_failures"] == 0 else 1


def cmd_resolve(args):
    problem = _load(args)
    ctx = ProblemContext(problem, seed=args.seed)
    obj = args.object or ctx.shape.objects[0]
    if obj not in ctx.shape.objects:
        raise StablehomError(f"unknown object {obj!r}; have {ctx.shape.objects}")
    R = complete_resolution(stalk(ctx.shape, obj), Window(*problem.window))
    print(f"complete resolution of the stalk at {obj} over {problem.name}, "
          f"window [{problem.window[0]}, {problem.window[1]}]")
    for i in R.window.degrees():
        labels = " (+) ".join(f"P({q})" for q in R.labels[i]) or "0"
        print(f"  degree {i:>3}: {labels}  (total dim {R.comps[i].total_dim()})")
    if R.degenerate:
        print("  note: base module is projective; resolution is degenerate")
    return 0


def cmd_endring(args):
    problem = _load(args)
    ctx = ProblemContext(problem, seed=args.seed)
    obj = args.object or ctx.shape.objects[0]
    if obj not in ctx.shape.objects:
        raise StablehomError(f"unknown object {obj!r}; have {ctx.shape.objects}")
    x = ctx.shape.objects.index(obj)
    dg = ctx.dg
    degrees = dg.safe_degrees()
    ring = end_ring(dg, x, degrees, rng=ctx.rng("endring"))
    print(f"graded End cohomology of the resolution of the stalk at {obj} "
          f"({problem.name}, safe degrees {degrees[0]}..{degrees[-1]})")
    print("  dim H^i: " + "  ".join(f"{i}:{ring.dims[i]}" for i in degrees))
    print("  products (class of deg-i rep composed after deg-j rep):")
    for i in degrees:
        for j in degrees:
            table = ring.products[(i, j)]
            if table == "unavailable":
                continue
            if ring.dims[i] == 0 or ring.dims[j] == 0:
                continue
            zero = ring.product_is_zero(i, j)
            tag = "zero" if zero else "nonzero"
            if i + j == 0 and not zero:
                tag += ", hits identity" if ring.product_hits_identity(i, j) else ""
            print(f"    H^{i} x H^{j} -> H^{i + j}: {tag}")
    return 0


def cmd_homtable(args):
    problem = _load(args)
    ctx = ProblemContext(problem, seed=args.seed)
    dg = ctx.dg
    objs = ctx.shape.objects
    degrees = dg.safe_degrees()
    print(f"stable-Hom oracle table for {problem.name}: "
          f"sHom(syzygy^i of S(q), S(q')) on degrees {degrees[0]}..{degrees[-1]}")
    for x, qx in enumerate(objs):
        for y, qy in enumerate(objs):
            row = " ".join(str(oracle_stable_hom(dg, x, y, i)) for i in degrees)
            print(f"  S({qx}) -> S({qy}): {row}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stablehom",
        description="Exact verification of windowed Hom-complex comparisons "
                    "over quiver-presented self-injective categories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("problem", help="problem file path or bundled problem name")
        p.add_argument("--field", help="override the ground field: a prime or 'rationals'")
        p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"),
                       help="override the degree window")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="seed for the randomized checks (default %(default)s)")

    p = sub.add_parser("check", help="run verification suites and emit a report")
    common(p)
    p.add_argument("--suites", nargs="*", help="override the problem's suite list")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("resolve", help="print a windowed complete resolution")
    common(p)
    p.add_argument("--object", help="object whose stalk to resolve (default: first)")
    p.set_defaults(fn=cmd_resolve)

    p = sub.add_parser("endring", help="print the graded End cohomology and products")
    common(p)
    p.add_argument("--object", help="object whose stalk resolution to use (default: first)")
    p.set_defaults(fn=cmd_endring)

    p = sub.add_parser("homtable", help="print the stable-Hom oracle table")
    common(p)
    p.set_defaults(fn=cmd_homtable)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except StablehomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
