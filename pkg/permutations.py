# ==========================================================
# SCHUBERTIST — PERMUTATIONS
# Elements of S_infinity in trimmed one-line notation
# ==========================================================
"""
A permutation is stored as w(1) w(2) ... w(m) with trailing fixed points
removed, so S_n sits inside S_{n+1} without any bookkeeping: 132 and 1324
are the same object. Composition is (uv)(k) = u(v(k)) everywhere.
"""

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations as _itertools_permutations


# ==========================================================
# PERMUTATION
# ==========================================================

@dataclass(frozen=True)
class Permutation:
    """An element of S_infinity; `word` is the canonical trimmed one-line notation."""
    word: tuple = ()

    def __post_init__(self):
        entries = tuple(self.word)
        m = len(entries)
        if any(not isinstance(e, int) or isinstance(e, bool) for e in entries):
            raise ValueError(f"permutation entries must be integers: {entries!r}")
        if sorted(entries) != list(range(1, m + 1)):
            bad = [e for e in entries if e < 1 or e > m]
            if bad:
                raise ValueError(f"entry {bad[0]} outside 1..{m} in {entries!r}")
            raise ValueError(f"duplicate entries in {entries!r}")
        while m and entries[m - 1] == m:
            m -= 1
        object.__setattr__(self, "word", entries[:m])

    def __call__(self, i):
        if 1 <= i <= len(self.word):
            return self.word[i - 1]
        return i

    def __str__(self):
        return format_permutation(self)

    def __repr__(self):
        return f"Permutation({format_permutation(self)})"

    @cached_property
    def length(self):
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    @cached_property
    def descents(self):
        w = self.word
        return frozenset(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])

    @cached_property
    def inverse(self):
        inv = [0] * len(self.word)
        for position, letter in enumerate(self.word, 1):
            inv[letter - 1] = position
        return Permutation(tuple(inv))


IDENTITY = Permutation()


# ==========================================================
# TEXT FORM
# ==========================================================

_TOKEN = re.compile(r"^[1-9][0-9]*$")


def from_one_line(entries):
    return Permutation(tuple(entries))


def parse_permutation(text: str) -> Permutation:
    """Read "14253" (compact, every entry a single digit) or "4,7,9,3,1,2,5,6,8,10"."""
    raw = (text or "").strip()
    if not raw:
        raise ValueError("empty permutation text")
    tokens = [t.strip() for t in raw.split(",")] if "," in raw else list(raw)
    for token in tokens:
        if not _TOKEN.match(token):
            raise ValueError(f"bad permutation token {token!r} in {raw!r}")
    return from_one_line(int(t) for t in tokens)


def format_permutation(w: Permutation) -> str:
    if not w.word:
        return "1"
    if all(e <= 9 for e in w.word):
        return "".join(str(e) for e in w.word)
    return ",".join(str(e) for e in w.word)


def sort_key(w):
    return (w.length, w.word)


# ==========================================================
# STATISTICS
# ==========================================================

def length(w):
    return w.length


def descents(w):
    return w.descents


def left_descents(w):
    return w.inverse.descents


def maj(w):
    return sum(w.descents)


# ==========================================================
# GROUP OPERATIONS
# ==========================================================

def inverse(w):
    return w.inverse


def mul(u, v):
    m = max(len(u.word), len(v.word))
    return Permutation(tuple(u(v(k)) for k in range(1, m + 1)))


def _check_index(i):
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"simple transposition index must be a positive integer, got {i!r}")


def left_s(i, w):
    """s_i * w: swap the letters i and i+1."""
    _check_index(i)
    m = max(len(w.word), i + 1)
    swap = {i: i + 1, i + 1: i}
    return Permutation(tuple(swap.get(w(k), w(k)) for k in range(1, m + 1)))


def right_s(w, i):
    """w * s_i: swap the entries in positions i and i+1."""
    _check_index(i)
    m = max(len(w.word), i + 1)
    entries = [w(k) for k in range(1, m + 1)]
    entries[i - 1], entries[i] = entries[i], entries[i - 1]
    return Permutation(tuple(entries))


def simple(i):
    return right_s(IDENTITY, i)


def transposition(i, j):
    if i == j or min(i, j) < 1:
        raise ValueError(f"transposition needs two distinct positive indices, got {i}, {j}")
    m = max(i, j)
    entries = list(range(1, m + 1))
    entries[i - 1], entries[j - 1] = entries[j - 1], entries[i - 1]
    return Permutation(tuple(entries))


def long_element(n):
    if n < 1:
        raise ValueError(f"long element needs n >= 1, got {n}")
    return Permutation(tuple(range(n, 0, -1)))


# ==========================================================
# LEHMER CODES AND REDUCED WORDS
# ==========================================================

def lehmer_code(w: Permutation) -> tuple:
    """code(i) = #{j > i : w(j) < w(i)}, one entry per position of the trimmed word."""
    word = w.word
    return tuple(
        sum(1 for j in range(i + 1, len(word)) if word[j] < word[i])
        for i in range(len(word))
    )


def from_lehmer_code(code, n=None):
    """
    Inverse of `lehmer_code`.

    With `n` given the code must fit S_n (code(i) <= n - i); otherwise the
    smallest S_m holding the code is used.
    """
    entries = tuple(code)
    for c in entries:
        if not isinstance(c, int) or c < 0:
            raise ValueError(f"infeasible Lehmer code {entries!r}: entries must be nonnegative integers")
    if n is None:
        m = max([len(entries)] + [i + c for i, c in enumerate(entries, 1)])
    else:
        m = n
        if len(entries) > n or any(c > n - i for i, c in enumerate(entries, 1)):
            raise ValueError(f"infeasible Lehmer code {entries!r} for S_{n}")
    available = list(range(1, m + 1))
    word = []
    for i in range(m):
        c = entries[i] if i < len(entries) else 0
        word.append(available.pop(c))
    return Permutation(tuple(word))


@lru_cache(maxsize=None)
def reduced_words(w):
    """
    All reduced words of w, lexicographically sorted.

    The last letter of a reduced word is a right descent, so the words are
    grown depth-first from the descents. The count grows exponentially with
    the length of w; keep this to small ranks.
    """
    if not w.word:
        return ((),)
    found = []
    for i in sorted(w.descents):
        for prefix in reduced_words(right_s(w, i)):
            found.append(prefix + (i,))
    return tuple(sorted(found))


# ==========================================================
# WEAK ORDERS
# ==========================================================

def left_weak_leq(u, w):
    """u <=_L w iff w = v u with l(v) + l(u) = l(w)."""
    return mul(w, u.inverse).length + u.length == w.length


def right_weak_leq(v, w):
    return mul(v.inverse, w).length + v.length == w.length


@lru_cache(maxsize=4096)
def left_weak_lower(w, target_length):
    """Every u <=_L w of the given length, in canonical order."""
    if target_length < 0 or target_length > w.length:
        return ()
    layer = {w}
    for _ in range(w.length - target_length):
        layer = {left_s(i, x) for x in layer for i in left_descents(x)}
    return tuple(sorted(layer, key=sort_key))


# ==========================================================
# EMBEDDINGS AND SHAPES
# ==========================================================

def one_times(w):
    if not w.word:
        return IDENTITY
    return Permutation((1,) + tuple(e + 1 for e in w.word))


def strip_one_times(w):
    if w(1) != 1:
        raise ValueError(f"{w} does not fix 1, so it is not of the form 1 x v")
    return Permutation(tuple(e - 1 for e in w.word[1:]))


def is_grassmannian(w):
    return len(w.descents) == 1


def is_inverse_grassmannian(w):
    return len(left_descents(w)) == 1


def all_permutations(n):
    return [Permutation(p) for p in _itertools_permutations(range(1, n + 1))]
