# ==========================================================
# SCHUBERTIST — POLYNOMIAL CACHE FILE
# Plain-text store of generated basis polynomials, one file per basis
# ==========================================================
"""
File layout:

    SCHUBCACHE 1 schubert
    code= poly=1
    code=0,1,0 poly=x1 + x2
    code=1,0 poly=x1

One record per line, keyed by Lehmer code, polynomial in canonical text.
A file whose format version differs is ignored as a whole; any malformed
line rejects the whole file with its line number.
"""

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import config
from polyring import parse_poly, render_poly
from schubert import BASIS_RING, SCHUBERT, cache_snapshot, check_basis, seed_cache

MAGIC = "SCHUBCACHE"
FORMAT_VERSION = 1


class CacheError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class CacheFile:
    basis: str
    entries: dict = field(default_factory=dict)
    version: int = FORMAT_VERSION


def cache_path(base, basis):
    check_basis(basis)
    base = str(base)
    return Path(base if basis == SCHUBERT else f"{base}.{basis}")


def render_cache(cache):
    lines = [f"{MAGIC} {cache.version} {cache.basis}"]
    for code in sorted(cache.entries, key=lambda c: (sum(c), c)):
        lines.append(f"code={','.join(str(c) for c in code)} poly={render_poly(cache.entries[code])}")
    return "\n".join(lines) + "\n"


def _parse_code(raw, line):
    if not raw:
        return ()
    try:
        code = tuple(int(piece) for piece in raw.split(","))
    except ValueError:
        raise CacheError(f"bad Lehmer code {raw!r}", line) from None
    if any(c < 0 for c in code):
        raise CacheError(f"negative entry in Lehmer code {raw!r}", line)
    return code


def parse_cache(text, basis):
    """CacheFile for `basis`, or None when the file was written by another format version."""
    check_basis(basis)
    lines = text.splitlines()
    if not lines:
        raise CacheError("empty cache file", 1)
    header = lines[0].split()
    if len(header) != 3 or header[0] != MAGIC:
        raise CacheError(f"bad header {lines[0]!r}; expected '{MAGIC} <version> <basis>'", 1)
    try:
        version = int(header[1])
    except ValueError:
        raise CacheError(f"bad format version {header[1]!r}", 1) from None
    if version != FORMAT_VERSION:
        return None
    if header[2] != basis:
        raise CacheError(f"file holds basis {header[2]!r}, expected {basis!r}", 1)

    ring = BASIS_RING[basis]
    entries = {}
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if not line.startswith("code=") or " poly=" not in line:
            raise CacheError(f"expected 'code=<ints> poly=<text>', got {line!r}", number)
        code_text, poly_text = line[len("code="):].split(" poly=", 1)
        code = _parse_code(code_text.strip(), number)
        if code in entries:
            raise CacheError(f"duplicate record for code {code_text!r}", number)
        try:
            entries[code] = parse_poly(poly_text, ring)
        except ValueError as e:
            raise CacheError(str(e), number) from None
    return CacheFile(basis=basis, entries=entries, version=version)


def cache_load(path, basis):
    path = Path(path)
    if not path.exists():
        return None
    return parse_cache(path.read_text(encoding="utf-8"), basis)


def cache_store(path, cache):
    """Write through a temp file in the same directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_file = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}-", suffix=".tmp", delete=False
    )
    try:
        with tmp_file:
            tmp_file.write(render_cache(cache))
        os.replace(tmp_file.name, path)
    except BaseException:
        try:
            os.unlink(tmp_file.name)
        except OSError:
            pass
        raise


# ==========================================================
# MEMORY <-> DISK
# ==========================================================

def warm_from_disk(base, bases):
    """Seed the in-memory cache; problems become warnings and the run goes on uncached."""
    loaded = 0
    for basis in bases:
        path = cache_path(base, basis)
        try:
            cache = cache_load(path, basis)
        except (OSError, CacheError) as e:
            config.warn(f"ignoring cache {path}: {e}")
            continue
        if cache is None:
            if path.exists():
                config.warn(f"ignoring cache {path}: written by another format version")
            continue
        seed_cache(basis, cache.entries)
        loaded += len(cache.entries)
    if loaded:
        config.log(f"📂 loaded {loaded} cached polynomial(s) from {base}")
    return loaded


def flush_to_disk(base, bases):
    for basis in bases:
        entries = cache_snapshot(basis)
        if not entries:
            continue
        path = cache_path(base, basis)
        try:
            cache_store(path, CacheFile(basis=basis, entries=entries))
        except OSError as e:
            config.warn(f"could not write cache {path}: {e}")
