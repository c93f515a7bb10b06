#!/usr/bin/env python3
"""
Schubertist — acceptance run
Worked examples, exhaustive relation sweeps and conjecture sweeps

• One status line per criterion, with timing
• --deep adds the rank-7 conjecture sweeps (hours)
• Exit status 1 if anything fails
"""

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(BASE_DIR))

import config  # noqa: E402
from conjectures import COVERS, MULTFREE, sweep  # noqa: E402
from permutations import left_s, parse_permutation  # noqa: E402
from relations import instances, run_batch  # noqa: E402
from schubert import clear_cache, product_expansion, structure_coeff  # noqa: E402

P = parse_permutation


# --------------------------------------------------
# WORKED EXAMPLES
# --------------------------------------------------

def worked_example():
    u = P("14253")
    a, b = P("152634"), P("162435")
    got = (
        structure_coeff(u, u, P("162534")),
        [structure_coeff(u, u, left_s(k, a)) for k in (1, 2, 3, 5, 6)],
        [structure_coeff(u, u, left_s(k, b)) for k in (1, 2, 4, 6)],
    )
    return got == (1, [1, 0, 0, 1, 0], [0, 1, 1, 0]), f"{got}"


def multiplicity_free_example():
    expansion = product_expansion(P("1562374"), P("4516273"))
    coefficients = {c for _, c in expansion.items()}
    return len(expansion) == 12 and coefficients == {1}, f"{len(expansion)} terms"


def negative_control():
    expansion = product_expansion(P("1457236"), P("3571246"))
    counts = Counter(c for _, c in expansion.items())
    twos = all(expansion.coefficient(P(w)) == 2 for w in ("479312568", "569312478", "57831246"))
    ok = counts == {1: 14, 2: 3, 3: 1} and expansion.coefficient(P("579213468")) == 3 and twos
    return ok, f"coefficients {dict(sorted(counts.items()))}"


def covers_example():
    expansion = product_expansion(P("3142567"), P("1527346"))
    coefficients = {c for _, c in expansion.items()}
    return len(expansion) == 11 and coefficients == {1}, f"{len(expansion)} terms"


# --------------------------------------------------
# SWEEPS
# --------------------------------------------------

def relation_sweep(name, n, jobs):
    def run():
        reports = run_batch(name, instances(name, n), jobs=jobs)
        failed = sum(1 for r in reports if not r.holds)
        return failed == 0, f"{len(reports)} instances, {failed} failing"
    return run


def stabilization_sweep(jobs):
    reports = run_batch("stabilization", instances("stabilization", 3), jobs=jobs)
    failed = sum(1 for r in reports if not r.holds)
    nonzero = [r for r in reports if r.details["extra_term"] != "0"]
    for report in nonzero[:1]:
        inputs = " ".join(f"{k}={v}" for k, v in report.to_json()["inputs"].items())
        print(f"   extra term {report.details['extra_term']} at {inputs}")
    return failed == 0 and bool(nonzero), f"{len(reports)} instances, {len(nonzero)} with an extra term"


def g_ones_values(jobs):
    reports = run_batch("g-ones", instances("g-ones", 5), jobs=jobs)
    return all(r.lhs_total == 1 for r in reports), f"{len(reports)} permutations"


def conjecture_sweep(tag, n, jobs, deep=False):
    def run():
        report = sweep(tag, n, jobs=jobs, allow_deep=deep)
        return report.holds, f"{report.pairs_examined} ordered pairs, max coefficient {report.max_coefficient}"
    return run


def determinism(jobs):
    serial = [r.to_json() for r in run_batch("main", instances("main", 4), jobs=1)]
    parallel = [r.to_json() for r in run_batch("main", instances("main", 4), jobs=max(jobs, 2))]
    a = json.dumps(sweep(MULTFREE, 5, jobs=1).to_json())
    clear_cache()
    b = json.dumps(sweep(MULTFREE, 5, jobs=max(jobs, 2)).to_json())
    return serial == parallel and a == b, "serial, parallel and cold-cache runs agree"


def criteria(jobs, deep):
    out = [
        ("worked example coefficients", worked_example),
        ("multiplicity-free product, 12 terms", multiplicity_free_example),
        ("Grassmannian negative control", negative_control),
        ("covers example, 11 terms", covers_example),
        ("main relation over S_4", relation_sweep("main", 4, jobs)),
        ("stabilization over S_3", lambda: stabilization_sweep(jobs)),
        ("Macdonald identity over S_5", relation_sweep("macdonald", 5, jobs)),
        ("iterated relation over S_4", relation_sweep("iterated", 4, jobs)),
        ("Kronecker relation over S_4", relation_sweep("kronecker", 4, jobs)),
        ("descent triviality over S_4", relation_sweep("dc", 4, jobs)),
        ("nabla of Schubert over S_5", relation_sweep("hpsw", 5, jobs)),
        ("powers of nabla over S_4", relation_sweep("nabla-power", 4, jobs)),
        ("Monk positivity over S_4", relation_sweep("monk", 4, jobs)),
        ("residues over S_4", relation_sweep("residue", 4, jobs)),
        ("nabla-beta identities over S_4", relation_sweep("psw", 4, jobs)),
        ("K-theoretic relation over S_3", relation_sweep("ktheory", 3, jobs)),
        ("G_w(1,...,1) = 1 over S_5", lambda: g_ones_values(jobs)),
    ]
    for n in range(2, config.DESK_SWEEP_MAX_N + 1):
        out.append((f"multfree sweep S_{n}", conjecture_sweep(MULTFREE, n, jobs)))
        out.append((f"covers sweep S_{n}", conjecture_sweep(COVERS, n, jobs)))
    out.append(("determinism", lambda: determinism(jobs)))
    if deep:
        n = config.DESK_SWEEP_MAX_N + 1
        out.append((f"multfree sweep S_{n}", conjecture_sweep(MULTFREE, n, jobs, deep=True)))
        out.append((f"covers sweep S_{n}", conjecture_sweep(COVERS, n, jobs, deep=True)))
    return out


# --------------------------------------------------
# MAIN
# --------------------------------------------------

def main():
    parser = argparse.ArgumentParser(description="Run the acceptance criteria")
    parser.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    parser.add_argument("--deep", action="store_true", help="add the rank-7 conjecture sweeps")
    parser.add_argument("--only", metavar="TEXT", help="run criteria whose name contains TEXT")
    args = parser.parse_args()

    config.CHECK_EXPANSIONS = True
    failures = 0
    started = time.perf_counter()

    print("\n🧮 Schubertist acceptance run")
    print(f"   jobs={args.jobs} deep={args.deep}\n")

    for name, run in criteria(args.jobs, args.deep):
        if args.only and args.only not in name:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = run()
        except (RuntimeError, ValueError) as e:
            ok, detail = False, f"error: {e}"
        elapsed = time.perf_counter() - t0
        failures += 0 if ok else 1
        print(f"{'✅' if ok else '❌'} {name:40} {elapsed:8.2f}s  {detail}")

    print("\n==========================")
    print(f"⏱️ total {time.perf_counter() - started:.1f}s, {failures} failing")
    print("==========================\n")

    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
