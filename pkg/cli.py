# ==========================================================
# SCHUBERTIST — COMMAND LINE
# poly / coeff / expand / verify / sweep
# ==========================================================

import argparse
import json
import random
import sys
import time

import config
from cache import flush_to_disk, warm_from_disk
from conjectures import CONJECTURES, sweep
from permutations import format_permutation, parse_permutation
from polyring import render_coefficient, render_poly
from relations import CATALOG, check_name, instances, render_value, run_batch
from schubert import (
    BASES,
    GROTHENDIECK,
    GROTHENDIECK_BETA,
    SCHUBERT,
    basis_poly,
    k_coeff,
    k_coeff_beta,
    k_product_expansion,
    product_expansion,
    structure_coeff,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# ---- HELPERS ----

def emit(payload):
    print(json.dumps(payload, ensure_ascii=False))


def permutation_arg(text):
    try:
        return parse_permutation(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def add_basis_flags(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--schubert", dest="basis", action="store_const", const=SCHUBERT)
    group.add_argument("--grothendieck", dest="basis", action="store_const", const=GROTHENDIECK)
    group.add_argument("--grothendieck-beta", dest="basis", action="store_const", const=GROTHENDIECK_BETA)
    parser.set_defaults(basis=SCHUBERT)


def with_cache(args, run):
    base = args.cache if args.cache is not None else config.CACHE_PATH
    if base:
        warm_from_disk(base, BASES)
    try:
        return run()
    finally:
        if base:
            flush_to_disk(base, BASES)


# ---- COMMANDS ----

def cmd_poly(args):
    poly = basis_poly(args.basis, args.w)
    if args.json:
        emit({"basis": args.basis, "w": format_permutation(args.w), "poly": render_poly(poly)})
    else:
        print(render_poly(poly))
    return EXIT_OK


def cmd_coeff(args):
    lookup = {SCHUBERT: structure_coeff, GROTHENDIECK: k_coeff, GROTHENDIECK_BETA: k_coeff_beta}
    value = lookup[args.basis](args.u, args.v, args.w)
    if args.json:
        emit({
            "basis": args.basis,
            "u": format_permutation(args.u),
            "v": format_permutation(args.v),
            "w": format_permutation(args.w),
            "coefficient": render_coefficient(value),
        })
    else:
        print(render_coefficient(value))
    return EXIT_OK


def cmd_expand(args):
    if args.basis == SCHUBERT:
        expansion = product_expansion(args.u, args.v)
    else:
        expansion = k_product_expansion(args.u, args.v, args.basis)
    if args.json:
        payload = {"u": format_permutation(args.u), "v": format_permutation(args.v)}
        payload.update(expansion.to_json())
        emit(payload)
    else:
        for w, c in expansion.items():
            print(f"{render_coefficient(c)} {format_permutation(w)}")
    return EXIT_OK


def explicit_inputs(args):
    fields = {"u": args.u, "v": args.v, "w": args.w, "k": args.k, "i": args.i, "alpha": args.alpha, "n": args.n}
    return {key: value for key, value in fields.items() if value is not None}


def describe(report):
    inputs = " ".join(
        f"{key}={format_permutation(value) if not isinstance(value, int) else value}"
        for key, value in report.inputs.items()
    )
    if report.parts:
        totals = "; ".join(f"{p.identity}: {'ok' if p.holds else 'FAILS'}" for p in report.parts)
    else:
        totals = f"{render_value(report.lhs_total)} vs {render_value(report.rhs_total)}"
        if report.comparison != "equal":
            totals += f" ({report.comparison})"
    return f"{'✅' if report.holds else '❌'} {report.identity} {inputs}: {totals}"


def cmd_verify(args):
    name = check_name(args.identity)
    if args.all_n is not None:
        batch = instances(name, args.all_n, alpha=args.alpha)
        if args.sample is not None and args.sample < len(batch):
            rng = random.Random(args.seed)
            picked = sorted(rng.sample(range(len(batch)), args.sample))
            batch = [batch[index] for index in picked]
    else:
        if args.sample is not None:
            raise ValueError("--sample needs --all-n")
        inputs = explicit_inputs(args)
        if not inputs:
            raise ValueError(f"verify {name} needs --all-n N or explicit inputs ({', '.join(CATALOG[name][1])})")
        batch = [inputs]

    started = time.perf_counter()
    reports = run_batch(name, batch, jobs=args.jobs)
    failed = 0
    for report in reports:
        if not report.holds:
            failed += 1
        if args.json:
            emit(report.to_json())
        else:
            print(describe(report))
    elapsed = time.perf_counter() - started
    if failed:
        config.log(f"❌ {name}: {failed} of {len(reports)} instance(s) fail")
    else:
        config.log(f"✅ {name}: all {len(reports)} instance(s) hold")
    config.log(f"⏱️ {elapsed:.2f}s")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_sweep(args):
    report = sweep(args.conjecture, args.n, jobs=args.jobs, allow_deep=args.deep)
    print(json.dumps(report.to_json(), indent=2, ensure_ascii=False))
    config.log(f"⏱️ {report.wall_time:.2f}s")
    return EXIT_OK if report.holds else EXIT_FAILED


# ---- PARSER ----

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache", metavar="PATH", default=None, help="polynomial cache file (default: $SCHUBERT_CACHE)")
    common.add_argument("--jobs", type=positive_int, default=config.DEFAULT_JOBS, metavar="J")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED, metavar="S")

    parser = argparse.ArgumentParser(
        prog="schubertist",
        description="Exact Schubert and Grothendieck polynomial calculations and relation checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {config.APP_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    poly = commands.add_parser("poly", parents=[common], help="print a basis polynomial")
    add_basis_flags(poly)
    poly.add_argument("w", type=permutation_arg)
    poly.set_defaults(handler=cmd_poly)

    coeff = commands.add_parser("coeff", parents=[common], help="one structure coefficient")
    add_basis_flags(coeff)
    for name in ("u", "v", "w"):
        coeff.add_argument(name, type=permutation_arg)
    coeff.set_defaults(handler=cmd_coeff)

    expand = commands.add_parser("expand", parents=[common], help="expand a product of two basis polynomials")
    add_basis_flags(expand)
    expand.add_argument("u", type=permutation_arg)
    expand.add_argument("v", type=permutation_arg)
    expand.set_defaults(handler=cmd_expand)

    verify = commands.add_parser("verify", parents=[common], help="check an identity")
    verify.add_argument("identity", help=", ".join(CATALOG))
    verify.add_argument("--all-n", type=positive_int, metavar="N", help="every instance over S_N")
    verify.add_argument("--sample", type=positive_int, metavar="K", help="K random instances of the --all-n scope")
    for name in ("u", "v", "w"):
        verify.add_argument(f"--{name}", type=permutation_arg)
    for name in ("k", "i", "alpha", "n"):
        verify.add_argument(f"--{name}", type=positive_int)
    verify.set_defaults(handler=cmd_verify)

    sweeper = commands.add_parser("sweep", parents=[common], help="exhaustive conjecture sweep")
    sweeper.add_argument("conjecture", choices=CONJECTURES)
    sweeper.add_argument("n", type=positive_int)
    sweeper.add_argument("--deep", action="store_true", help=f"allow ranks above {config.DESK_SWEEP_MAX_N}")
    sweeper.set_defaults(handler=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return with_cache(args, lambda: args.handler(args))
    except ValueError as e:
        config.log(f"❌ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
