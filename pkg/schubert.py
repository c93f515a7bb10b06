# ==========================================================
# SCHUBERTIST — BASES
# Schubert / Grothendieck generation, expansion, structure coefficients
# ==========================================================
"""
Schubert, Grothendieck and b-Grothendieck polynomials and the structure
coefficients of their products.

Generation starts at the dominant permutation reached by climbing code
ascents: for a dominant w (weakly decreasing Lehmer code) both the Schubert
and the Grothendieck polynomial are the single monomial x^code(w). Walking
back down applies one divided difference per step, so a polynomial costs
roughly (number of code ascents to resolve) operators instead of a full
descent from the longest element of S_n. The staircase recursion from the
longest element is kept as `basis_poly_from_staircase` and tests hold the
two against each other.
"""

import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import config
from permutations import (
    Permutation,
    format_permutation,
    from_lehmer_code,
    lehmer_code,
    long_element,
    mul as perm_mul,
    right_s,
    sort_key,
)
from polyring import (
    Z,
    ZB,
    SparsePoly,
    beta_isobaric_divided_difference,
    beta_rescale,
    coerce_coefficient,
    degree,
    divided_difference,
    homogeneous_part,
    isobaric_divided_difference,
    min_degree,
    monomial,
    mul,
    render_coefficient,
    render_poly,
    scale,
    sub,
    to_ring,
    zero,
)

SCHUBERT = "schubert"
GROTHENDIECK = "grothendieck"
GROTHENDIECK_BETA = "grothendieck-beta"
BASES = (SCHUBERT, GROTHENDIECK, GROTHENDIECK_BETA)

BASIS_RING = {SCHUBERT: Z, GROTHENDIECK: Z, GROTHENDIECK_BETA: ZB}


def check_basis(basis):
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {', '.join(BASES)}")
    return basis


# ==========================================================
# GENERATION CACHE
# ==========================================================

_CACHE = {basis: {} for basis in BASES}
_FRESH = {basis: set() for basis in BASES}
_LOCK = threading.Lock()


def _store(basis, code, poly):
    with _LOCK:
        if code not in _CACHE[basis]:
            _CACHE[basis][code] = poly
            _FRESH[basis].add(code)


def cache_snapshot(basis):
    with _LOCK:
        return dict(_CACHE[check_basis(basis)])


def seed_cache(basis, entries):
    """Insert already-known polynomials; seeded entries are not reported as fresh."""
    check_basis(basis)
    ring = BASIS_RING[basis]
    with _LOCK:
        for code, poly in entries.items():
            if poly.ring != ring:
                raise ValueError(f"{basis} cache entry for code {code} is over {poly.ring}, not {ring}")
            _CACHE[basis].setdefault(tuple(code), poly)


def drain_fresh(basis):
    """Entries computed since the last drain (or seed), removed from the fresh set."""
    check_basis(basis)
    with _LOCK:
        codes = sorted(_FRESH[basis])
        _FRESH[basis].clear()
        return {code: _CACHE[basis][code] for code in codes}


def clear_cache():
    with _LOCK:
        for basis in BASES:
            _CACHE[basis].clear()
            _FRESH[basis].clear()
    _product_expansion.cache_clear()
    _k_product_expansion.cache_clear()


def _seed_all(snapshots):
    for basis, entries in snapshots.items():
        seed_cache(basis, entries)


def worker_pool(jobs):
    """Process pool whose workers start from this process's polynomial cache."""
    snapshots = {basis: cache_snapshot(basis) for basis in BASES}
    return ProcessPoolExecutor(max_workers=jobs, initializer=_seed_all, initargs=(snapshots,))


def _first_code_ascent(code):
    for i in range(1, len(code)):
        if code[i - 1] < code[i]:
            return i
    return None


def _generate(basis, w, operator):
    table = _CACHE[basis]
    path = []
    current = w
    while True:
        code = lehmer_code(current)
        poly = table.get(code)
        if poly is not None:
            break
        ascent = _first_code_ascent(code)
        if ascent is None:
            poly = monomial(code, 1, BASIS_RING[basis])
            _store(basis, code, poly)
            break
        path.append((code, ascent))
        current = right_s(current, ascent)
    for code, i in reversed(path):
        poly = operator(i, poly)
        _store(basis, code, poly)
    return poly


def schubert_poly(w: Permutation) -> SparsePoly:
    return _generate(SCHUBERT, w, divided_difference)


def grothendieck_poly(w: Permutation) -> SparsePoly:
    return _generate(GROTHENDIECK, w, isobaric_divided_difference)


def beta_grothendieck_poly(w: Permutation) -> SparsePoly:
    """(-b)^(-inv(w)) G_w(-b x1, -b x2, ...)."""
    code = lehmer_code(w)
    cached = _CACHE[GROTHENDIECK_BETA].get(code)
    if cached is not None:
        return cached
    poly = beta_rescale(grothendieck_poly(w), w.length)
    _store(GROTHENDIECK_BETA, code, poly)
    return poly


def beta_grothendieck_poly_by_recursion(w: Permutation) -> SparsePoly:
    """Same polynomial through N_i((1 + b x_{i+1}) f), uncached."""
    path = []
    current = w
    while (ascent := _first_code_ascent(lehmer_code(current))) is not None:
        path.append(ascent)
        current = right_s(current, ascent)
    poly = monomial(lehmer_code(current), 1, ZB)
    for i in reversed(path):
        poly = beta_isobaric_divided_difference(i, poly)
    return poly


_GENERATORS = {
    SCHUBERT: schubert_poly,
    GROTHENDIECK: grothendieck_poly,
    GROTHENDIECK_BETA: beta_grothendieck_poly,
}


def basis_poly(basis, w):
    return _GENERATORS[check_basis(basis)](w)


def basis_poly_from_staircase(basis, w):
    """
    The defining recursion: start from x1^(n-1) x2^(n-2) ... for the longest
    element of the smallest S_n holding w and apply one operator per letter
    of a reduced word of w0 w. Uncached; used to audit the fast generator.
    """
    check_basis(basis)
    n = max(len(w.word), 1)
    w0 = long_element(n)
    rest = perm_mul(w0, w)
    letters = []
    while rest.word:
        i = min(rest.descents)
        letters.append(i)
        rest = right_s(rest, i)
    staircase = tuple(range(n - 1, -1, -1))
    if basis == SCHUBERT:
        poly, operator = monomial(staircase), divided_difference
    elif basis == GROTHENDIECK:
        poly, operator = monomial(staircase), isobaric_divided_difference
    else:
        poly, operator = monomial(staircase, 1, ZB), beta_isobaric_divided_difference
    for i in reversed(letters):
        poly = operator(i, poly)
    return poly


# ==========================================================
# EXPANSIONS
# ==========================================================

@dataclass(frozen=True)
class SchubertExpansion:
    basis: str
    terms: dict = field(default_factory=dict)

    @property
    def ring(self):
        return BASIS_RING[self.basis]

    def coefficient(self, w):
        value = self.terms.get(w)
        if value is None:
            return coerce_coefficient(0, self.ring)
        return value

    def support(self):
        return sorted(self.terms, key=sort_key)

    def items(self):
        return [(w, self.terms[w]) for w in self.support()]

    def __len__(self):
        return len(self.terms)

    def recompose(self):
        total = zero(self.ring)
        for w, c in self.items():
            total = total + scale(basis_poly(self.basis, w), c)
        return total

    def max_coefficient(self):
        if self.ring != Z:
            raise ValueError("max_coefficient is only defined for integer expansions")
        return max(self.terms.values(), default=0)

    def to_json(self):
        return {
            "basis": self.basis,
            "terms": [
                {"w": format_permutation(w), "coeff": render_coefficient(c)}
                for w, c in self.items()
            ],
        }


def leading_monomial(f):
    """Among the top-degree monomials of f, the lexicographically smallest."""
    top = degree(f)
    return min(a for a in f.terms if sum(a) == top)


def _peel_schubert(f):
    # Subtract c * S_w for the leading monomial x^a = x^code(w) until f vanishes.
    residual = f
    found = {}
    if not f:
        return found
    k = f.num_variables
    bound = comb(degree(f) + k, k)
    while residual:
        if len(found) >= bound:
            raise RuntimeError(
                f"Schubert expansion of {render_poly(f)} did not terminate within {bound} steps"
            )
        lead = leading_monomial(residual)
        c = residual.terms[lead]
        w = from_lehmer_code(lead)
        if w in found:
            raise RuntimeError(f"Schubert expansion revisited {format_permutation(w)} at x^{lead}")
        residual = sub(residual, scale(to_ring(schubert_poly(w), f.ring), c))
        if lead in residual.terms:
            raise RuntimeError(
                f"leading monomial x^{lead} did not cancel against S_{format_permutation(w)}"
            )
        found[w] = c
    return found


def _verified(expansion, f):
    if config.CHECK_EXPANSIONS and expansion.recompose() != f:
        raise RuntimeError(
            f"{expansion.basis} expansion does not recompose to {render_poly(f)}"
        )
    return expansion


def expand_in_schubert(f: SparsePoly) -> SchubertExpansion:
    if f.ring != Z:
        raise ValueError("expand_in_schubert needs an integer polynomial")
    return _verified(SchubertExpansion(SCHUBERT, _peel_schubert(f)), f)


def expand_in_grothendieck(f: SparsePoly) -> SchubertExpansion:
    """
    Peel lowest degree first: the bottom homogeneous component of the
    residual is expanded in Schubert polynomials, and the matching
    Grothendieck polynomials (whose bottom component is that Schubert
    polynomial) are subtracted. The bottom degree strictly rises each round.
    Over Z[b] the b-Grothendieck basis is used.
    """
    basis = GROTHENDIECK if f.ring == Z else GROTHENDIECK_BETA
    residual = f
    found = {}
    ceiling = degree(f)
    last = -1
    while residual:
        d = min_degree(residual)
        if d <= last or d > ceiling:
            raise RuntimeError(
                f"Grothendieck expansion of {render_poly(f)} stalled at degree {d}"
            )
        last = d
        for w, c in _peel_schubert(homogeneous_part(residual, d)).items():
            g = basis_poly(basis, w)
            ceiling = max(ceiling, degree(g))
            residual = sub(residual, scale(g, c))
            found[w] = c
    return _verified(SchubertExpansion(basis, found), f)


# ==========================================================
# STRUCTURE COEFFICIENTS
# ==========================================================

def _ordered(u, v):
    return tuple(sorted((u, v), key=sort_key))


@lru_cache(maxsize=8192)
def _product_expansion(u, v):
    return expand_in_schubert(mul(schubert_poly(u), schubert_poly(v)))


def product_expansion(u: Permutation, v: Permutation) -> SchubertExpansion:
    return _product_expansion(*_ordered(u, v))


def structure_coeff(u: Permutation, v: Permutation, w: Permutation) -> int:
    if w.length != u.length + v.length:
        return 0
    return product_expansion(u, v).coefficient(w)


@lru_cache(maxsize=4096)
def _k_product_expansion(u, v, basis):
    return expand_in_grothendieck(mul(basis_poly(basis, u), basis_poly(basis, v)))


def k_product_expansion(u, v, basis=GROTHENDIECK):
    if basis not in (GROTHENDIECK, GROTHENDIECK_BETA):
        raise ValueError(f"k_product_expansion needs a Grothendieck basis, got {basis!r}")
    return _k_product_expansion(*_ordered(u, v), basis)


def k_coeff(u, v, w):
    return k_product_expansion(u, v, GROTHENDIECK).coefficient(w)


def k_coeff_beta(u, v, w):
    return k_product_expansion(u, v, GROTHENDIECK_BETA).coefficient(w)
