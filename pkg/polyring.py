# ==========================================================
# SCHUBERTIST — POLYNOMIAL RING
# Sparse polynomials in x1, x2, ... over Z or Z[b]
# ==========================================================
"""
Exact sparse multivariate polynomials.

A polynomial maps trimmed exponent vectors (no trailing zeros) to nonzero
coefficients. Ring "Z" carries plain Python ints; ring "Z[b]" carries dense
univariate `sympy.Poly` objects over ZZ in the symbol b, which plays the part
of the K-theory parameter beta. The x variables and b never mix: derivatives
in x leave b alone and b-derivatives only touch coefficients.
"""

import re
from itertools import zip_longest

from sympy import Poly, Symbol, ZZ

Z = "Z"
ZB = "Z[b]"
RINGS = (Z, ZB)

BETA = Symbol("b")


# ==========================================================
# COEFFICIENTS
# ==========================================================

def exact_int(c):
    value = int(c)
    if value != c:
        raise ValueError(f"coefficient {c!r} is not an integer")
    return value


def beta_poly(ascending):
    """Z[b] coefficient from its ascending integer coefficients, e.g. [1, 2] -> 1 + 2b."""
    descending = [exact_int(c) for c in reversed(list(ascending))]
    return Poly.from_list(descending or [0], BETA, domain=ZZ)


BETA_ONE = beta_poly([1])
BETA_SQUARED = beta_poly([0, 0, 1])


def _check_ring(ring):
    if ring not in RINGS:
        raise ValueError(f"unknown coefficient ring {ring!r}; expected one of {RINGS}")


def coerce_coefficient(c, ring):
    if ring == Z:
        if isinstance(c, Poly):
            raise ValueError("a Z[b] coefficient cannot live in ring Z")
        return exact_int(c)
    if isinstance(c, Poly):
        return c
    return beta_poly([c])


def is_zero_coefficient(c):
    if isinstance(c, Poly):
        return c.is_zero
    return c == 0


def beta_coefficients(c):
    """Ascending integer coefficients of a Z[b] value (ints count as constants)."""
    if not isinstance(c, Poly):
        return [int(c)] if c else []
    if c.is_zero:
        return []
    return [int(v) for v in reversed(c.all_coeffs())]


def render_coefficient(c):
    """
    Canonical text of a coefficient: ints as decimal, Z[b] values ascending
    in b, e.g. "1+2*b-b^2".
    """
    if not isinstance(c, Poly):
        return str(c)
    coefficients = beta_coefficients(c)
    if not coefficients:
        return "0"
    pieces = []
    for power, value in enumerate(coefficients):
        if value == 0:
            continue
        if power == 0:
            body = str(abs(value))
        else:
            letter = "b" if power == 1 else f"b^{power}"
            body = letter if abs(value) == 1 else f"{abs(value)}*{letter}"
        sign = "-" if value < 0 else "+"
        if not pieces:
            pieces.append(body if value > 0 else f"-{body}")
        else:
            pieces.append(f"{sign}{body}")
    return "".join(pieces)


_BETA_TERM = re.compile(r"^(?:(\d+)\*)?b(?:\^(\d+))?$")


def parse_coefficient(text, ring):
    raw = text.strip()
    if ring == Z:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"bad integer coefficient {raw!r}") from None
    pieces = re.findall(r"[+-]?[^+-]+", raw.replace(" ", ""))
    if not pieces or "".join(pieces) != raw.replace(" ", ""):
        raise ValueError(f"bad Z[b] coefficient {raw!r}")
    ascending = []
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        if body.isdigit():
            power, value = 0, int(body)
        else:
            match = _BETA_TERM.match(body)
            if not match:
                raise ValueError(f"bad Z[b] coefficient term {piece!r} in {raw!r}")
            value = int(match.group(1) or 1)
            power = int(match.group(2) or 1)
        while len(ascending) <= power:
            ascending.append(0)
        ascending[power] += sign * value
    return beta_poly(ascending)


# ==========================================================
# EXPONENT VECTORS
# ==========================================================

def trim(exponents):
    exponents = tuple(exponents)
    end = len(exponents)
    while end and exponents[end - 1] == 0:
        end -= 1
    return exponents[:end]


def _add_exponents(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    return tuple(x + y for x, y in zip_longest(a, b, fillvalue=0))


def _pad(a, size):
    return a + (0,) * (size - len(a)) if len(a) < size else a


def monomial_sort_key(exponents):
    return (sum(exponents), exponents)


# ==========================================================
# SPARSE POLYNOMIAL
# ==========================================================

class SparsePoly:
    """Immutable sparse polynomial; build through the constructors below."""

    __slots__ = ("ring", "terms")

    def __init__(self, terms=None, ring=Z):
        _check_ring(ring)
        clean = {}
        for exponents, coeff in (terms or {}).items():
            for e in exponents:
                if not isinstance(e, int) or e < 0:
                    raise ValueError(f"exponents must be nonnegative integers: {exponents!r}")
            key = trim(exponents)
            value = coerce_coefficient(coeff, ring)
            if key in clean:
                value = clean[key] + value
            clean[key] = value
        object.__setattr__(self, "ring", ring)
        object.__setattr__(
            self, "terms",
            {k: v for k, v in clean.items() if not is_zero_coefficient(v)},
        )

    @classmethod
    def _from_clean(cls, terms, ring):
        # Caller guarantees trimmed keys and nonzero coefficients of the right kind.
        poly = cls.__new__(cls)
        object.__setattr__(poly, "ring", ring)
        object.__setattr__(poly, "terms", terms)
        return poly

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    def __reduce__(self):
        return (_rebuild, (self.terms, self.ring))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = constant(other, self.ring)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        return add(self, _lift(other, self.ring))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other, self.ring))

    def __rsub__(self, other):
        return sub(_lift(other, self.ring), self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"SparsePoly[{self.ring}]({render_poly(self)})"

    def items(self):
        """Terms in the canonical order (highest degree first)."""
        return sorted(self.terms.items(), key=lambda t: monomial_sort_key(t[0]), reverse=True)

    @property
    def num_variables(self):
        return max((len(a) for a in self.terms), default=0)


def _rebuild(terms, ring):
    return SparsePoly._from_clean(terms, ring)


def _lift(value, ring):
    if isinstance(value, SparsePoly):
        return value
    return constant(value, ring)


def zero(ring=Z):
    return SparsePoly._from_clean({}, ring)


def constant(c, ring=Z):
    return SparsePoly({(): c}, ring)


def one(ring=Z):
    return constant(1, ring)


def monomial(exponents, coeff=1, ring=Z):
    return SparsePoly({tuple(exponents): coeff}, ring)


def variable(i, ring=Z):
    if i < 1:
        raise ValueError(f"variables are x1, x2, ...; got index {i}")
    return monomial((0,) * (i - 1) + (1,), 1, ring)


def to_ring(f, ring):
    """Z -> Z[b] inclusion (the identity when the ring already matches)."""
    if f.ring == ring:
        return f
    if f.ring == ZB:
        raise ValueError("cannot move a Z[b] polynomial into ring Z; use specialize_beta")
    return SparsePoly._from_clean({a: beta_poly([c]) for a, c in f.terms.items()}, ring)


# ==========================================================
# RING OPERATIONS
# ==========================================================

def _same_ring(f, g):
    if f.ring != g.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {g.ring}")
    return f.ring


def _accumulate(target, key, value):
    current = target.get(key)
    total = value if current is None else current + value
    if is_zero_coefficient(total):
        target.pop(key, None)
    else:
        target[key] = total


def add(f, g):
    ring = _same_ring(f, g)
    out = dict(f.terms)
    for a, c in g.terms.items():
        _accumulate(out, a, c)
    return SparsePoly._from_clean(out, ring)


def sub(f, g):
    ring = _same_ring(f, g)
    out = dict(f.terms)
    for a, c in g.terms.items():
        _accumulate(out, a, -c)
    return SparsePoly._from_clean(out, ring)


def scale(f, c):
    c = coerce_coefficient(c, f.ring)
    if is_zero_coefficient(c):
        return zero(f.ring)
    out = {}
    for a, v in f.terms.items():
        product = v * c
        if not is_zero_coefficient(product):
            out[a] = product
    return SparsePoly._from_clean(out, f.ring)


def mul(f, g):
    ring = _same_ring(f, g)
    if len(f.terms) > len(g.terms):
        f, g = g, f
    out = {}
    for a, c in f.terms.items():
        for b, d in g.terms.items():
            _accumulate(out, _add_exponents(a, b), c * d)
    return SparsePoly._from_clean(out, ring)


def mul_monomial(f, exponents, coeff=1):
    exponents = trim(exponents)
    coeff = coerce_coefficient(coeff, f.ring)
    out = {}
    for a, c in f.terms.items():
        product = c * coeff
        if not is_zero_coefficient(product):
            out[_add_exponents(a, exponents)] = product
    return SparsePoly._from_clean(out, f.ring)


def coeff_of(f, exponents):
    value = f.terms.get(trim(exponents))
    if value is None:
        return coerce_coefficient(0, f.ring)
    return value


def degree(f):
    """Total degree; -1 for the zero polynomial."""
    return max((sum(a) for a in f.terms), default=-1)


def min_degree(f):
    return min((sum(a) for a in f.terms), default=-1)


def homogeneous_part(f, d):
    return SparsePoly._from_clean({a: c for a, c in f.terms.items() if sum(a) == d}, f.ring)


def lowest_degree_part(f):
    if not f:
        return f
    return homogeneous_part(f, min_degree(f))


def is_homogeneous(f):
    return len({sum(a) for a in f.terms}) <= 1


# ==========================================================
# DIVIDED DIFFERENCES
# ==========================================================

def _check_index(i):
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"divided difference index must be a positive integer, got {i!r}")


def swap_variables(f, i):
    """s_i . f: exchange x_i and x_{i+1}."""
    _check_index(i)
    out = {}
    for a, c in f.terms.items():
        b = list(_pad(a, i + 1))
        b[i - 1], b[i] = b[i], b[i - 1]
        out[trim(b)] = c
    return SparsePoly._from_clean(out, f.ring)


def divided_difference(i, f):
    """
    N_i(f) = (f - s_i f) / (x_i - x_{i+1}), by exact synthetic division.

    Terms of the numerator are grouped by the exponents of the other
    variables and by p + q, where x_i^p x_{i+1}^q; each group is a binary
    form of degree d = p + q in (x_i, x_{i+1}) and is divided by x_i - x_{i+1}
    with a running carry. A nonzero remainder means the numerator was not
    antisymmetric, which is an arithmetic bug.
    """
    _check_index(i)
    numerator = sub(f, swap_variables(f, i))
    groups = {}
    for a, c in numerator.terms.items():
        a = _pad(a, i + 1)
        key = (a[: i - 1], a[i + 1:], a[i - 1] + a[i])
        groups.setdefault(key, {})[a[i - 1]] = c
    out = {}
    for (head, tail, d), by_power in groups.items():
        carry = 0
        for p in range(d, 0, -1):
            carry = by_power.get(p, 0) + carry
            if not is_zero_coefficient(carry):
                out[trim(head + (p - 1, d - p) + tail)] = carry
        remainder = by_power.get(0, 0) + carry
        if not is_zero_coefficient(remainder):
            raise RuntimeError(
                f"divided difference N_{i} left remainder {render_coefficient(remainder)} "
                f"on the degree-{d} block of {render_poly(f)}"
            )
    return SparsePoly._from_clean(out, f.ring)


def isobaric_divided_difference(i, f):
    """N_i((1 - x_{i+1}) f)."""
    if f.ring != Z:
        raise ValueError("isobaric_divided_difference works over Z; use the beta version on Z[b]")
    shifted = sub(f, mul(variable(i + 1, Z), f))
    return divided_difference(i, shifted)


def beta_isobaric_divided_difference(i, f):
    """N_i((1 + b x_{i+1}) f) over Z[b]."""
    if f.ring != ZB:
        raise ValueError("beta_isobaric_divided_difference needs ring Z[b]")
    unit = (0,) * i + (1,)
    shifted = add(f, mul_monomial(f, unit, beta_poly([0, 1])))
    return divided_difference(i, shifted)


# ==========================================================
# DIFFERENTIAL OPERATORS
# ==========================================================

def partial(f, i):
    _check_index(i)
    out = {}
    for a, c in f.terms.items():
        if len(a) >= i and a[i - 1]:
            b = list(a)
            b[i - 1] -= 1
            _accumulate(out, trim(b), c * a[i - 1])
    return SparsePoly._from_clean(out, f.ring)


def nabla(f):
    """Sum of the partial derivatives in every x variable."""
    out = {}
    for a, c in f.terms.items():
        for j, e in enumerate(a):
            if e:
                b = list(a)
                b[j] -= 1
                _accumulate(out, trim(b), c * e)
    return SparsePoly._from_clean(out, f.ring)


def euler(f):
    """Multiply each term by its total x-degree; b-degree is ignored."""
    out = {}
    for a, c in f.terms.items():
        d = sum(a)
        if d:
            out[a] = c * d
    return SparsePoly._from_clean(out, f.ring)


def beta_derivative(f):
    if f.ring != ZB:
        raise ValueError("beta_derivative needs ring Z[b]")
    out = {}
    for a, c in f.terms.items():
        derived = c.diff(BETA)
        if not derived.is_zero:
            out[a] = derived
    return SparsePoly._from_clean(out, ZB)


def nabla_beta(f):
    """nabla plus b^2 d/db acting on the coefficients."""
    if f.ring != ZB:
        raise ValueError("nabla_beta needs ring Z[b]")
    return add(nabla(f), scale(beta_derivative(f), BETA_SQUARED))


# ==========================================================
# SPECIALIZATIONS AND VARIABLE CHANGES
# ==========================================================

def specialize_ones(f):
    """f(1, 1, 1, ...): an int over Z, a Z[b] value over Z[b]."""
    total = coerce_coefficient(0, f.ring)
    for c in f.terms.values():
        total = total + c
    return total


def specialize_beta(f, b):
    if f.ring != ZB:
        raise ValueError("specialize_beta needs ring Z[b]")
    out = {}
    for a, c in f.terms.items():
        value = int(c.eval(b))
        if value:
            out[a] = value
    return SparsePoly._from_clean(out, Z)


def beta_rescale(f, shift):
    """
    Z -> Z[b]: c x^a becomes c (-b)^(|a| - shift) x^a.

    With shift = inv(w) this turns the Grothendieck polynomial of w into its
    b-deformation.
    """
    if f.ring != Z:
        raise ValueError("beta_rescale maps Z polynomials into Z[b]")
    out = {}
    for a, c in f.terms.items():
        power = sum(a) - shift
        if power < 0:
            raise ValueError(f"term x^{a} has degree below the rescaling shift {shift}")
        ascending = [0] * power + [c * (-1) ** power]
        out[a] = beta_poly(ascending)
    return SparsePoly._from_clean(out, ZB)


def drop_first_variable(f):
    """f(0, x1, x2, ...)."""
    out = {}
    for a, c in f.terms.items():
        if not a or a[0] == 0:
            out[a[1:]] = c
    return SparsePoly._from_clean(out, f.ring)


def shift_variables(f):
    """f(x2, x3, ...); inverse of drop_first_variable on polynomials free of x1."""
    return SparsePoly._from_clean(
        {((0,) + a if a else a): c for a, c in f.terms.items()}, f.ring
    )


# ==========================================================
# TEXT FORM
# ==========================================================

def render_monomial(exponents):
    factors = []
    for index, e in enumerate(exponents, 1):
        if e == 1:
            factors.append(f"x{index}")
        elif e > 1:
            factors.append(f"x{index}^{e}")
    return "*".join(factors)


def render_poly(f):
    """
    Canonical text, highest degree first and lexicographically descending
    inside a degree. Over Z: "x1^2*x2 + 3*x1*x3 - 2". Over Z[b] every
    coefficient is parenthesized and terms join with " + ".
    """
    if not f.terms:
        return "0"
    pieces = []
    if f.ring == ZB:
        for a, c in f.items():
            mono = render_monomial(a)
            coeff = f"({render_coefficient(c)})"
            pieces.append(f"{coeff}*{mono}" if mono else coeff)
        return " + ".join(pieces)
    for position, (a, c) in enumerate(f.items()):
        mono = render_monomial(a)
        magnitude = abs(c)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if position == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(pieces)


_FACTOR = re.compile(r"^x([1-9][0-9]*)(?:\^([0-9]+))?$")


def _parse_monomial(text):
    exponents = []
    for factor in text.split("*"):
        match = _FACTOR.match(factor)
        if not match:
            raise ValueError(f"bad monomial factor {factor!r}")
        index = int(match.group(1))
        power = int(match.group(2) or 1)
        while len(exponents) < index:
            exponents.append(0)
        exponents[index - 1] += power
    return tuple(exponents)


def _parse_z_term(text):
    body = text
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:]
    if not body:
        raise ValueError(f"empty term in {text!r}")
    head, _, rest = body.partition("*")
    if head.isdigit():
        coeff = int(head)
        mono = _parse_monomial(rest) if rest else ()
    else:
        coeff = 1
        mono = _parse_monomial(body)
    return mono, sign * coeff


def parse_poly(text, ring=Z):
    """Read back the output of `render_poly`."""
    _check_ring(ring)
    raw = (text or "").strip()
    if not raw:
        raise ValueError("empty polynomial text")
    if raw == "0":
        return zero(ring)
    terms = {}
    if ring == Z:
        parts = re.split(r" ([+-]) ", raw)
        signed = [("+", parts[0])] + list(zip(parts[1::2], parts[2::2]))
        for sign, chunk in signed:
            mono, c = _parse_z_term(chunk.strip())
            if sign == "-":
                c = -c
            terms[mono] = terms.get(mono, 0) + c
        return SparsePoly(terms, Z)
    for chunk in raw.split(" + "):
        chunk = chunk.strip()
        if not chunk.startswith("("):
            raise ValueError(f"Z[b] term {chunk!r} must start with a parenthesized coefficient")
        close = chunk.find(")")
        if close < 0:
            raise ValueError(f"unbalanced parenthesis in term {chunk!r}")
        coeff = parse_coefficient(chunk[1:close], ZB)
        rest = chunk[close + 1:]
        if rest and not rest.startswith("*"):
            raise ValueError(f"bad Z[b] term {chunk!r}")
        mono = _parse_monomial(rest[1:]) if rest else ()
        terms[mono] = terms[mono] + coeff if mono in terms else coeff
    return SparsePoly(terms, ZB)
