# ==========================================================
# SCHUBERTIST — RELATIONS
# Term-by-term checks of the linear relations among structure coefficients
# ==========================================================
"""
Every check evaluates both sides independently and returns a RelationReport
listing each contribution, zero ones included.

Sums over k with s_k w > w run over an infinite index set in S_infinity.
They are cut at the rank n of the inputs: for u, v, w in S_n and m > n the
coefficient c_{u,v}^{s_m w} vanishes because S_{s_m w} involves x_m while
S_u S_v does not. The first index past the window is still evaluated and
must come out zero.
"""

from dataclasses import dataclass, field, replace
from math import factorial

from permutations import (
    IDENTITY,
    Permutation,
    all_permutations,
    descents,
    format_permutation,
    inverse,
    left_descents,
    left_s,
    left_weak_leq,
    left_weak_lower,
    maj,
    mul as perm_mul,
    one_times,
    reduced_words,
    right_s,
    simple,
    sort_key,
    strip_one_times,
)
from polyring import (
    BETA,
    BETA_SQUARED,
    Z,
    ZB,
    SparsePoly,
    beta_poly,
    euler,
    is_zero_coefficient,
    nabla,
    nabla_beta,
    render_coefficient,
    render_poly,
    scale,
    specialize_ones,
    zero,
)
from schubert import (
    BASES,
    GROTHENDIECK_BETA,
    beta_grothendieck_poly,
    drain_fresh,
    grothendieck_poly,
    k_coeff_beta,
    k_product_expansion,
    product_expansion,
    schubert_poly,
    seed_cache,
    structure_coeff,
    worker_pool,
)


# ==========================================================
# REPORTS
# ==========================================================

def render_value(value):
    if isinstance(value, SparsePoly):
        return render_poly(value)
    return render_coefficient(value)


@dataclass(frozen=True)
class Term:
    label: str
    multiplier: int
    value: object

    @property
    def contribution(self):
        return self.multiplier * self.value

    def to_json(self):
        return {
            "label": self.label,
            "multiplier": str(self.multiplier),
            "value": render_value(self.value),
            "contribution": render_value(self.contribution),
        }


def _total(terms, start):
    total = start
    for term in terms:
        total = total + term.contribution
    return total


@dataclass(frozen=True)
class RelationReport:
    identity: str
    inputs: dict
    lhs: tuple
    rhs: tuple
    lhs_total: object
    rhs_total: object
    holds: bool
    comparison: str = "equal"
    details: dict = field(default_factory=dict)
    parts: tuple = ()

    def is_consistent(self):
        start = self.lhs_total - self.lhs_total
        if _total(self.lhs, start) != self.lhs_total or _total(self.rhs, start) != self.rhs_total:
            return False
        return all(part.is_consistent() for part in self.parts)

    def to_json(self):
        payload = {
            "identity": self.identity,
            "inputs": {
                key: format_permutation(value) if isinstance(value, Permutation) else value
                for key, value in self.inputs.items()
            },
            "comparison": self.comparison,
            "lhs": [term.to_json() for term in self.lhs],
            "rhs": [term.to_json() for term in self.rhs],
            "lhs_total": render_value(self.lhs_total),
            "rhs_total": render_value(self.rhs_total),
            "holds": self.holds,
        }
        if self.details:
            payload["details"] = self.details
        if self.parts:
            payload["parts"] = [part.to_json() for part in self.parts]
        return payload


def _report(identity, inputs, lhs, rhs, start=0, modulus=None, details=None):
    lhs = tuple(lhs)
    rhs = tuple(rhs)
    lhs_total = _total(lhs, start)
    rhs_total = _total(rhs, start)
    if modulus is None:
        holds, comparison = lhs_total == rhs_total, "equal"
    else:
        holds, comparison = (lhs_total - rhs_total) % modulus == 0, f"mod {modulus}"
    return RelationReport(
        identity=identity,
        inputs=dict(inputs),
        lhs=lhs,
        rhs=rhs,
        lhs_total=lhs_total,
        rhs_total=rhs_total,
        holds=holds,
        comparison=comparison,
        details=details or {},
    )


def _c_label(u, v, w, prefix="c"):
    return f"{prefix}({format_permutation(u)},{format_permutation(v)};{format_permutation(w)})"


# ==========================================================
# TRUNCATION WINDOW
# ==========================================================

def rank(*perms):
    return max([len(p.word) for p in perms] + [1])


def raising_indices(w, n):
    """k in 1..n with s_k w > w."""
    descending = left_descents(w)
    return [k for k in range(1, n + 1) if k not in descending]


def _check_outside_window(u, v, w, n, coefficient=structure_coeff):
    beyond = coefficient(u, v, left_s(n + 1, w))
    if not is_zero_coefficient(beyond):
        raise RuntimeError(
            f"coefficient at s_{n + 1} {format_permutation(w)} is {render_coefficient(beyond)}; "
            f"the window 1..{n} for ({format_permutation(u)}, {format_permutation(v)}) is too small"
        )


def _raising_terms(u, v, w, weight=lambda k: k):
    n = rank(u, v, w)
    _check_outside_window(u, v, w, n)
    return [
        Term(_c_label(u, v, left_s(k, w)), weight(k), structure_coeff(u, v, left_s(k, w)))
        for k in raising_indices(w, n)
    ]


def _lowering_terms(u, v, w, weight=lambda k: k):
    terms = []
    for i in sorted(left_descents(u)):
        lower = left_s(i, u)
        terms.append(Term(_c_label(lower, v, w), weight(i), structure_coeff(lower, v, w)))
    for j in sorted(left_descents(v)):
        lower = left_s(j, v)
        terms.append(Term(_c_label(u, lower, w), weight(j), structure_coeff(u, lower, w)))
    return terms


def _extra_term(u, v, w):
    shifted = left_s(1, one_times(w))
    return Term(
        _c_label(one_times(u), one_times(v), shifted),
        1,
        structure_coeff(one_times(u), one_times(v), shifted),
    )


# ==========================================================
# COHOMOLOGY CHECKS
# ==========================================================

def check_hpsw(w):
    """nabla S_w against the sum of k S_{s_k w} over left descents k."""
    lhs = [Term(f"nabla S_{format_permutation(w)}", 1, nabla(schubert_poly(w)))]
    rhs = []
    for k in sorted(left_descents(w)):
        lower = left_s(k, w)
        rhs.append(Term(f"S_{format_permutation(lower)}", k, schubert_poly(lower)))
    return _report("hpsw", {"w": w}, lhs, rhs, start=zero(Z))


def check_main(u, v, w):
    lhs = _lowering_terms(u, v, w)
    rhs = _raising_terms(u, v, w)
    return _report("main", {"u": u, "v": v, "w": w}, lhs, rhs)


def check_shifted_main(u, v, w):
    """The main relation for 1xu, 1xv, 1xw, re-indexed back to u, v, w."""
    lhs = _lowering_terms(u, v, w, weight=lambda i: i + 1)
    rhs = [_extra_term(u, v, w)] + _raising_terms(u, v, w, weight=lambda k: k + 1)
    return _report("shifted", {"u": u, "v": v, "w": w}, lhs, rhs)


def check_stabilization(u, v, w):
    lhs = _lowering_terms(u, v, w, weight=lambda i: 1)
    extra = _extra_term(u, v, w)
    rhs = [extra] + _raising_terms(u, v, w, weight=lambda k: 1)
    return _report(
        "stabilization", {"u": u, "v": v, "w": w}, lhs, rhs,
        details={"extra_term": str(extra.value)},
    )


def check_monk_like(v, i):
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"monk needs a positive index i, got {i!r}")
    s = simple(i)
    n = rank(s, v)
    _check_outside_window(s, v, v, n)
    lhs = []
    witnesses = []
    for k in raising_indices(v, n):
        target = left_s(k, v)
        c = structure_coeff(s, v, target)
        lhs.append(Term(_c_label(s, v, target), 1, c))
        if c > 0:
            witnesses.append(k)
    report = _report("monk", {"v": v, "i": i}, lhs, [], details={"witnesses": witnesses})
    return replace(report, holds=bool(witnesses), comparison="positive")


def check_residue(u, v, w, alpha):
    if not isinstance(alpha, int) or alpha < 1:
        raise ValueError(f"alpha must be a positive integer, got {alpha!r}")
    for name, perm in (("u", u), ("v", v)):
        bad = [d for d in sorted(left_descents(perm)) if d % alpha]
        if bad:
            raise ValueError(
                f"left descent {bad[0]} of {name}={format_permutation(perm)} is not a multiple of {alpha}"
            )
    modulus = 2 * alpha if u == v else alpha
    lhs = _raising_terms(u, v, w)
    return _report(
        "residue", {"u": u, "v": v, "w": w, "alpha": alpha}, lhs, [],
        modulus=modulus, details={"alpha": alpha, "modulus": modulus},
    )


def check_macdonald(w):
    k = w.length
    value = specialize_ones(schubert_poly(w))
    lhs = [Term(f"S_{format_permutation(w)}(1)", factorial(k), value)]
    rhs = []
    for word in reduced_words(w):
        product = 1
        for letter in word:
            product *= letter
        rhs.append(Term("".join(str(a) if a < 10 else f"({a})" for a in word) or "()", product, 1))
    return _report("macdonald", {"w": w}, lhs, rhs)


def check_nabla_power(w, k):
    if not isinstance(k, int) or not 1 <= k <= w.length:
        raise ValueError(f"nabla-power needs 1 <= k <= {w.length}, got {k!r}")
    poly = schubert_poly(w)
    for _ in range(k):
        poly = nabla(poly)
    lhs = [Term(f"nabla^{k} S_{format_permutation(w)}", 1, poly)]
    rhs = []
    for lower in left_weak_lower(w, w.length - k):
        weight = factorial(k) * specialize_ones(schubert_poly(perm_mul(w, inverse(lower))))
        rhs.append(Term(f"S_{format_permutation(lower)}", weight, schubert_poly(lower)))
    return _report("nabla-power", {"w": w, "k": k}, lhs, rhs, start=zero(Z))


def _ones(w):
    return specialize_ones(schubert_poly(w))


def check_iterated(u, v, w, k):
    total = u.length + v.length
    if not isinstance(k, int) or not 1 <= k <= total:
        raise ValueError(f"iterated needs 1 <= k <= {total}, got {k!r}")
    if w.length != total - k:
        raise ValueError(
            f"iterated needs length(w) = {total - k}, but {format_permutation(w)} has length {w.length}"
        )
    lhs = []
    for upper, c in product_expansion(u, v).items():
        if left_weak_leq(w, upper):
            lhs.append(Term(_c_label(u, v, upper), _ones(perm_mul(upper, inverse(w))), c))
    rhs = []
    for i in range(k + 1):
        for low_u in left_weak_lower(u, u.length - i):
            for low_v in left_weak_lower(v, v.length - (k - i)):
                weight = _ones(perm_mul(u, inverse(low_u))) * _ones(perm_mul(v, inverse(low_v)))
                rhs.append(Term(_c_label(low_u, low_v, w), weight, structure_coeff(low_u, low_v, w)))
    return _report("iterated", {"u": u, "v": v, "w": w, "k": k}, lhs, rhs)


def check_kronecker(u, v, i, n=None):
    if u == IDENTITY or v == IDENTITY:
        raise ValueError("kronecker needs nonidentity u and v")
    n = rank(u, v) if n is None else n
    if not isinstance(i, int) or not 1 <= i < n:
        raise ValueError(f"kronecker needs 1 <= i < {n}, got {i!r}")
    lhs = []
    for p, c in product_expansion(u, v).items():
        if i in descents(p):
            lhs.append(Term(_c_label(u, v, p), _ones(right_s(p, i)), c))
    rhs = []
    if i in descents(v):
        rhs.append(Term(
            f"S_{format_permutation(u)}(1)*S_{format_permutation(right_s(v, i))}(1)",
            _ones(u) * _ones(right_s(v, i)), 1,
        ))
    if i in descents(u):
        rhs.append(Term(
            f"S_{format_permutation(right_s(u, i))}(1)*S_{format_permutation(v)}(1)",
            _ones(right_s(u, i)) * _ones(v), 1,
        ))
    return _report("kronecker", {"u": u, "v": v, "i": i, "n": n}, lhs, rhs)


def check_dc_triviality(u, v):
    expansion = product_expansion(u, v)
    allowed = descents(u) | descents(v)
    lhs = []
    for p, c in expansion.items():
        for i in sorted(descents(p) - allowed):
            lhs.append(Term(f"{_c_label(u, v, p)} at descent {i}", 1, c))
    top = max([len(p.word) for p in expansion.support()] + [rank(u, v)])
    return _report(
        "dc", {"u": u, "v": v}, lhs, [],
        details={"checked_indices": [i for i in range(1, top) if i not in allowed]},
    )


# ==========================================================
# K-THEORY CHECKS
# ==========================================================

def check_psw(w):
    """Both parts: the nabla^beta relation over Z[b] and the (maj + nabla - E) relation over Z."""
    name = format_permutation(w)
    lowered = [(k, left_s(k, w)) for k in sorted(left_descents(w))]
    m = maj(inverse(w))

    g_beta = beta_grothendieck_poly(w)
    beta_part = _report(
        "psw-beta", {"w": w},
        [Term(f"nabla^b G^b_{name}", 1, nabla_beta(g_beta))],
        [Term(f"b*(maj(w^-1)-inv(w)) G^b_{name}", 1, scale(g_beta, beta_poly([0, m - w.length])))]
        + [Term(f"G^b_{format_permutation(x)}", k, beta_grothendieck_poly(x)) for k, x in lowered],
        start=zero(ZB),
    )

    g = grothendieck_poly(w)
    k_part = _report(
        "psw-k", {"w": w},
        [
            Term(f"maj(w^-1) G_{name}", m, g),
            Term(f"nabla G_{name}", 1, nabla(g)),
            Term(f"E G_{name}", -1, euler(g)),
        ],
        [Term(f"G_{format_permutation(x)}", k, grothendieck_poly(x)) for k, x in lowered],
        start=zero(Z),
    )
    return RelationReport(
        identity="psw",
        inputs={"w": w},
        lhs=(),
        rhs=(),
        lhs_total=0,
        rhs_total=0,
        holds=beta_part.holds and k_part.holds,
        comparison="all-parts",
        parts=(beta_part, k_part),
    )


def check_ktheory_main(u, v, w):
    shift = maj(inverse(u)) + maj(inverse(v)) - maj(inverse(w)) - u.length - v.length + w.length
    here = k_coeff_beta(u, v, w)
    lhs = [Term(f"b*{_c_label(u, v, w, 'K')}", shift, beta_poly([0, 1]) * here)]
    lhs += _lowering_terms_k(u, v, w)
    n = rank(u, v, w)
    _check_outside_window(u, v, w, n, coefficient=k_coeff_beta)
    rhs = [
        Term(_c_label(u, v, left_s(k, w), "K"), k, k_coeff_beta(u, v, left_s(k, w)))
        for k in raising_indices(w, n)
    ]
    # b^2 d/db also acts on K(u,v;w), homogeneous of b-degree l(w) - l(u) - l(v).
    rhs.append(Term(f"b^2 d/db {_c_label(u, v, w, 'K')}", 1, BETA_SQUARED * here.diff(BETA)))
    return _report("ktheory", {"u": u, "v": v, "w": w}, lhs, rhs, start=beta_poly([]))


def _lowering_terms_k(u, v, w):
    terms = []
    for i in sorted(left_descents(u)):
        lower = left_s(i, u)
        terms.append(Term(_c_label(lower, v, w, "K"), i, k_coeff_beta(lower, v, w)))
    for j in sorted(left_descents(v)):
        lower = left_s(j, v)
        terms.append(Term(_c_label(u, lower, w, "K"), j, k_coeff_beta(u, lower, w)))
    return terms


def check_g_ones(w):
    value = specialize_ones(grothendieck_poly(w))
    return _report(
        "g-ones", {"w": w},
        [Term(f"G_{format_permutation(w)}(1)", 1, value)],
        [Term("1", 1, 1)],
    )


# ==========================================================
# TARGETS
# ==========================================================

def _canonical(perms):
    return sorted(set(perms), key=sort_key)


def _lowered_support(expansion):
    for p in expansion.support():
        for k in left_descents(p):
            yield left_s(k, p)


def main_targets(u, v):
    """Every w for which some term of the main relation at (u, v, w) is nonzero."""
    found = list(_lowered_support(product_expansion(u, v)))
    for i in left_descents(u):
        found += product_expansion(left_s(i, u), v).support()
    for j in left_descents(v):
        found += product_expansion(u, left_s(j, v)).support()
    return _canonical(found)


def stabilization_targets(u, v):
    found = main_targets(u, v)
    for q in product_expansion(one_times(u), one_times(v)).support():
        if 1 in left_descents(q):
            lowered = left_s(1, q)
            if lowered(1) == 1:
                found.append(strip_one_times(lowered))
    return _canonical(found)


def iterated_targets(u, v, k):
    target_length = u.length + v.length - k
    found = []
    for upper in product_expansion(u, v).support():
        found += left_weak_lower(upper, target_length)
    for i in range(k + 1):
        for low_u in left_weak_lower(u, u.length - i):
            for low_v in left_weak_lower(v, v.length - (k - i)):
                found += product_expansion(low_u, low_v).support()
    return _canonical(w for w in found if w.length == target_length)


def k_targets(u, v):
    product = k_product_expansion(u, v, GROTHENDIECK_BETA)
    found = list(product.support()) + list(_lowered_support(product))
    for i in left_descents(u):
        found += k_product_expansion(left_s(i, u), v, GROTHENDIECK_BETA).support()
    for j in left_descents(v):
        found += k_product_expansion(u, left_s(j, v), GROTHENDIECK_BETA).support()
    return _canonical(found)


# ==========================================================
# CATALOG AND BATCHES
# ==========================================================

CATALOG = {
    "hpsw": (check_hpsw, ("w",)),
    "main": (check_main, ("u", "v", "w")),
    "monk": (check_monk_like, ("v", "i")),
    "residue": (check_residue, ("u", "v", "w", "alpha")),
    "stabilization": (check_stabilization, ("u", "v", "w")),
    "shifted": (check_shifted_main, ("u", "v", "w")),
    "macdonald": (check_macdonald, ("w",)),
    "iterated": (check_iterated, ("u", "v", "w", "k")),
    "kronecker": (check_kronecker, ("u", "v", "i")),
    "dc": (check_dc_triviality, ("u", "v")),
    "psw": (check_psw, ("w",)),
    "ktheory": (check_ktheory_main, ("u", "v", "w")),
    "g-ones": (check_g_ones, ("w",)),
    "nabla-power": (check_nabla_power, ("w", "k")),
}


def check_name(name):
    if name not in CATALOG:
        raise ValueError(f"unknown identity {name!r}; expected one of {', '.join(CATALOG)}")
    return name


def run_check(name, inputs):
    function, parameters = CATALOG[check_name(name)]
    missing = [p for p in parameters if p not in inputs]
    if missing:
        raise ValueError(f"{name} needs --{' --'.join(missing)}")
    kwargs = {p: inputs[p] for p in parameters}
    if name == "kronecker" and inputs.get("n") is not None:
        kwargs["n"] = inputs["n"]
    return function(**kwargs)


def _pairs(n):
    perms = sorted(all_permutations(n), key=sort_key)
    return [(u, v) for u in perms for v in perms]


def instances(name, n, alpha=None):
    """Every instance of `name` over S_n in canonical order, as input dicts."""
    check_name(name)
    if n < 1:
        raise ValueError(f"rank must be at least 1, got {n}")
    perms = sorted(all_permutations(n), key=sort_key)
    out = []
    if name in ("hpsw", "macdonald", "psw", "g-ones"):
        out = [{"w": w} for w in perms]
    elif name == "nabla-power":
        out = [{"w": w, "k": k} for w in perms for k in range(1, w.length + 1)]
    elif name == "monk":
        out = [{"v": v, "i": i} for v in perms for i in range(1, n + 1)]
    elif name in ("main", "shifted"):
        out = [{"u": u, "v": v, "w": w} for u, v in _pairs(n) for w in main_targets(u, v)]
    elif name == "stabilization":
        out = [{"u": u, "v": v, "w": w} for u, v in _pairs(n) for w in stabilization_targets(u, v)]
    elif name == "residue":
        moduli = [alpha] if alpha is not None else list(range(2, max(n, 2)))
        for a in moduli:
            for u, v in _pairs(n):
                if all(d % a == 0 for d in left_descents(u) | left_descents(v)):
                    out += [{"u": u, "v": v, "w": w, "alpha": a} for w in main_targets(u, v)]
    elif name == "iterated":
        for u, v in _pairs(n):
            for k in range(1, u.length + v.length + 1):
                out += [{"u": u, "v": v, "w": w, "k": k} for w in iterated_targets(u, v, k)]
    elif name == "kronecker":
        out = [
            {"u": u, "v": v, "i": i, "n": n}
            for u, v in _pairs(n)
            if u != IDENTITY and v != IDENTITY
            for i in range(1, n)
        ]
    elif name == "dc":
        out = [{"u": u, "v": v} for u, v in _pairs(n)]
    elif name == "ktheory":
        out = [{"u": u, "v": v, "w": w} for u, v in _pairs(n) for w in k_targets(u, v)]
    return out


def _run_one(job):
    name, inputs = job
    return run_check(name, inputs), {basis: drain_fresh(basis) for basis in BASES}


def run_batch(name, batch, jobs=1):
    """Reports in the order of `batch`, whatever the worker count."""
    check_name(name)
    work = [(name, inputs) for inputs in batch]
    if jobs <= 1 or len(work) < 2:
        return [run_check(name, inputs) for name, inputs in work]
    with worker_pool(jobs) as pool:
        outcomes = list(pool.map(_run_one, work, chunksize=max(1, len(work) // (jobs * 4))))
    for _, fresh in outcomes:
        for basis, entries in fresh.items():
            seed_cache(basis, entries)
    return [report for report, _ in outcomes]
