# ==========================================================
# SCHUBERTIST — CONJECTURE SWEEPS
# Multiplicity-freeness for inverse Grassmannian pairs, exhaustively by rank
# ==========================================================

import time
from dataclasses import dataclass, field

import config
from permutations import (
    all_permutations,
    format_permutation,
    is_grassmannian,
    is_inverse_grassmannian,
    left_descents,
    left_s,
    one_times,
    sort_key,
)
from schubert import (
    BASES,
    drain_fresh,
    product_expansion,
    seed_cache,
    structure_coeff,
    worker_pool,
)

MULTFREE = "multfree"
COVERS = "covers"
CONJECTURES = (MULTFREE, COVERS)

BOUND = 1


@dataclass(frozen=True)
class Violation:
    u: object
    v: object
    w: object
    coefficient: int
    expansion: tuple
    persists_at_next_rank: bool

    def to_json(self):
        return {
            "u": format_permutation(self.u),
            "v": format_permutation(self.v),
            "w": format_permutation(self.w),
            "coefficient": str(self.coefficient),
            "persists_at_next_rank": self.persists_at_next_rank,
            "expansion": [{"w": w, "coeff": c} for w, c in self.expansion],
        }


@dataclass(frozen=True)
class PairResult:
    u: object
    v: object
    max_coefficient: int
    violations: tuple = ()
    pieri: bool = False


@dataclass
class SweepReport:
    conjecture: str
    n: int
    permutations: int = 0
    pairs_examined: int = 0
    expected_pairs: int = 0
    unordered_pairs: int = 0
    pieri_pairs: int = 0
    max_coefficient: int = 0
    violations: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def holds(self):
        return not self.violations

    def to_json(self, include_timing=False):
        payload = {
            "conjecture": self.conjecture,
            "n": self.n,
            "permutations": self.permutations,
            "pairs_examined": self.pairs_examined,
            "expected_pairs": self.expected_pairs,
            "unordered_pairs": self.unordered_pairs,
            "pieri_pairs": self.pieri_pairs,
            "max_coefficient": str(self.max_coefficient),
            "violations": [v.to_json() for v in self.violations],
        }
        if include_timing:
            payload["wall_time"] = round(self.wall_time, 3)
        return payload


# ==========================================================
# ENUMERATION
# ==========================================================

def enumerate_inverse_grassmannian(n):
    if n < 2:
        raise ValueError(f"inverse Grassmannian permutations need n >= 2, got {n}")
    return sorted((w for w in all_permutations(n) if is_inverse_grassmannian(w)), key=sort_key)


def enumerate_grassmannian(n):
    if n < 2:
        raise ValueError(f"Grassmannian permutations need n >= 2, got {n}")
    return sorted((w for w in all_permutations(n) if is_grassmannian(w)), key=sort_key)


def _unique_left_descent(w, name):
    found = left_descents(w)
    if len(found) != 1:
        raise ValueError(
            f"{name}={format_permutation(w)} is not inverse Grassmannian (left descents {sorted(found)})"
        )
    return next(iter(found))


def persists_at_next_rank(u, v, w, coefficient):
    return structure_coeff(one_times(u), one_times(v), one_times(w)) == coefficient


# ==========================================================
# PAIR CHECKS
# ==========================================================

def _scan(a, b):
    expansion = product_expansion(a, b)
    listing = tuple((format_permutation(w), str(c)) for w, c in expansion.items())
    found = [
        Violation(a, b, w, c, listing, persists_at_next_rank(a, b, w, c))
        for w, c in expansion.items()
        if c > BOUND
    ]
    return expansion.max_coefficient(), found


def check_multfree(u, v, require_inverse_grassmannian=True):
    """
    Expand S_u S_v and flag every coefficient above 1.

    A pair where either side has its left descent at 1 is a Pieri product,
    which is always multiplicity-free; a violation there is an arithmetic bug.
    """
    pieri = False
    if require_inverse_grassmannian:
        pieri = 1 in (_unique_left_descent(u, "u"), _unique_left_descent(v, "v"))
    top, violations = _scan(u, v)
    if pieri and violations:
        raise RuntimeError(
            f"Pieri product S_{format_permutation(u)} S_{format_permutation(v)} "
            f"has coefficient {top}"
        )
    return PairResult(u, v, top, tuple(violations), pieri)


def check_covers(u, v):
    i = _unique_left_descent(u, "u")
    j = _unique_left_descent(v, "v")
    top_u, found_u = _scan(left_s(i, u), v)
    top_v, found_v = _scan(u, left_s(j, v))
    return PairResult(u, v, max(top_u, top_v), tuple(found_u + found_v), 1 in (i, j))


CHECKS = {MULTFREE: check_multfree, COVERS: check_covers}


# ==========================================================
# SWEEPS
# ==========================================================

def _sweep_pair(job):
    tag, u, v = job
    result = CHECKS[tag](u, v)
    return result, {basis: drain_fresh(basis) for basis in BASES}


def sweep(tag, n, jobs=1, allow_deep=False):
    """Run `tag` over every unordered pair of inverse Grassmannian permutations of S_n."""
    if tag not in CHECKS:
        raise ValueError(f"unknown conjecture {tag!r}; expected one of {', '.join(CONJECTURES)}")
    if n < 2:
        raise ValueError(f"sweeps need n >= 2, got {n}")
    if n > config.DESK_SWEEP_MAX_N and not (allow_deep or config.ALLOW_DEEP_SWEEPS):
        raise ValueError(
            f"rank {n} is a deep sweep (above {config.DESK_SWEEP_MAX_N}); pass --deep to run it"
        )

    started = time.perf_counter()
    perms = enumerate_inverse_grassmannian(n)
    work = [(tag, perms[a], perms[b]) for a in range(len(perms)) for b in range(a, len(perms))]
    config.log(f"ℹ️ {tag} S_{n}: {len(perms)} permutations, {len(work)} unordered pairs, {jobs} job(s)")

    if jobs > 1 and len(work) > 1:
        with worker_pool(jobs) as pool:
            outcomes = list(pool.map(_sweep_pair, work, chunksize=max(1, len(work) // (jobs * 4))))
        for _, fresh in outcomes:
            for basis, entries in fresh.items():
                seed_cache(basis, entries)
        results = [result for result, _ in outcomes]
    else:
        results = [CHECKS[tag](u, v) for _, u, v in work]

    report = SweepReport(conjecture=tag, n=n, permutations=len(perms))
    report.expected_pairs = len(perms) ** 2
    report.unordered_pairs = len(work)
    for result in results:
        weight = 1 if result.u == result.v else 2
        report.pairs_examined += weight
        if result.pieri:
            report.pieri_pairs += weight
        report.max_coefficient = max(report.max_coefficient, result.max_coefficient)
        report.violations.extend(result.violations)
    report.wall_time = time.perf_counter() - started

    if report.pairs_examined != report.expected_pairs:
        raise RuntimeError(
            f"examined {report.pairs_examined} ordered pairs, expected {report.expected_pairs}"
        )
    if bool(report.violations) != (report.max_coefficient > BOUND):
        raise RuntimeError("violation list disagrees with the maximum coefficient")

    if report.violations:
        config.log(f"❌ {tag} S_{n}: {len(report.violations)} violation(s), max coefficient {report.max_coefficient}")
    else:
        config.log(f"✅ {tag} S_{n}: no violations across {report.pairs_examined} ordered pairs")
    return report
