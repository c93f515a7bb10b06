import pytest

from cache import (
    FORMAT_VERSION,
    MAGIC,
    CacheError,
    CacheFile,
    cache_load,
    cache_path,
    cache_store,
    flush_to_disk,
    parse_cache,
    render_cache,
    warm_from_disk,
)
from permutations import lehmer_code, parse_permutation
from polyring import ZB, monomial, to_ring, variable
from schubert import (
    BASES,
    GROTHENDIECK_BETA,
    SCHUBERT,
    beta_grothendieck_poly,
    cache_snapshot,
    clear_cache,
    schubert_poly,
)

P = parse_permutation
x1, x2 = variable(1), variable(2)


@pytest.fixture(autouse=True)
def fresh_memory_cache():
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def loud(monkeypatch):
    monkeypatch.setenv("SCHUBERT_QUIET", "0")


def small_cache():
    return CacheFile(basis=SCHUBERT, entries={(): monomial(()), (1, 0): x1, (0, 1, 0): x1 + x2})


def test_render_layout():
    text = render_cache(small_cache())
    assert text == (
        f"{MAGIC} {FORMAT_VERSION} schubert\n"
        "code= poly=1\n"
        "code=0,1,0 poly=x1 + x2\n"
        "code=1,0 poly=x1\n"
    )


def test_parse_reads_back_render():
    cache = small_cache()
    parsed = parse_cache(render_cache(cache), SCHUBERT)
    assert parsed.entries == cache.entries
    assert parsed.version == FORMAT_VERSION


def test_beta_records():
    g = beta_grothendieck_poly(P("132"))
    cache = CacheFile(basis=GROTHENDIECK_BETA, entries={lehmer_code(P("132")): g})
    text = render_cache(cache)
    assert "poly=(b)*x1*x2 + (1)*x1 + (1)*x2" in text
    assert parse_cache(text, GROTHENDIECK_BETA).entries[(0, 1, 0)] == g


def test_other_format_version_is_ignored_whole():
    text = f"{MAGIC} {FORMAT_VERSION + 1} schubert\ncode=1 this is not a record\n"
    assert parse_cache(text, SCHUBERT) is None


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("NOTACACHE 1 schubert\n", 1),
        (f"{MAGIC} one schubert\n", 1),
        (f"{MAGIC} 1 grothendieck\ncode=1,0 poly=x1\n", 1),
        (f"{MAGIC} 1 schubert\ncode=1,0 poly=x1\ncode=1,x poly=x1\n", 3),
        (f"{MAGIC} 1 schubert\ncode=1,0 poly=x1 +\n", 2),
        (f"{MAGIC} 1 schubert\ncode=1,0 poly=x1\n\ncode=1,0 poly=x1\n", 4),
        (f"{MAGIC} 1 schubert\nx1 + x2\n", 2),
        (f"{MAGIC} 1 schubert\ncode=-1 poly=x1\n", 2),
    ],
)
def test_corrupt_files_name_the_line(text, line):
    with pytest.raises(CacheError) as excinfo:
        parse_cache(text, SCHUBERT)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_paths_are_per_basis(tmp_path):
    base = tmp_path / "polys.cache"
    assert cache_path(base, SCHUBERT) == base
    assert cache_path(base, GROTHENDIECK_BETA) == tmp_path / "polys.cache.grothendieck-beta"
    with pytest.raises(ValueError):
        cache_path(base, "double")


def test_store_and_load(tmp_path):
    path = tmp_path / "nested" / "polys.cache"
    cache_store(path, small_cache())
    assert cache_load(path, SCHUBERT).entries == small_cache().entries
    assert cache_load(tmp_path / "missing", SCHUBERT) is None
    assert [p.name for p in path.parent.iterdir()] == ["polys.cache"]


def test_flush_then_warm(tmp_path):
    base = tmp_path / "polys.cache"
    schubert_poly(P("1432"))
    beta_grothendieck_poly(P("21"))
    written = {basis: cache_snapshot(basis) for basis in BASES}
    flush_to_disk(base, BASES)
    assert cache_path(base, SCHUBERT).exists()
    assert cache_path(base, GROTHENDIECK_BETA).exists()

    clear_cache()
    loaded = warm_from_disk(base, BASES)
    assert loaded == sum(len(entries) for entries in written.values())
    for basis in BASES:
        assert cache_snapshot(basis) == written[basis]


def test_warm_turns_problems_into_warnings(tmp_path, loud, capsys):
    base = tmp_path / "polys.cache"
    base.write_text(f"{MAGIC} 1 schubert\ncode=1,0 poly=x1 +\n", encoding="utf-8")
    cache_path(base, GROTHENDIECK_BETA).write_text(f"{MAGIC} 99 grothendieck-beta\n", encoding="utf-8")
    assert warm_from_disk(base, BASES) == 0
    err = capsys.readouterr().err
    assert "⚠️ ignoring cache" in err
    assert "line 2" in err
    assert "another format version" in err
    assert cache_snapshot(SCHUBERT) == {}


def test_warm_loads_beta_records(tmp_path):
    base = tmp_path / "polys.cache"
    cache_store(cache_path(base, GROTHENDIECK_BETA), CacheFile(
        basis=GROTHENDIECK_BETA,
        entries={(1, 0): to_ring(x1, ZB)},
    ))
    assert warm_from_disk(base, [GROTHENDIECK_BETA]) == 1
    assert cache_snapshot(GROTHENDIECK_BETA)[(1, 0)] == beta_grothendieck_poly(P("21"))


def test_flush_reports_unwritable_target(tmp_path, loud, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    schubert_poly(P("21"))
    flush_to_disk(blocker / "polys.cache", [SCHUBERT])
    assert "could not write cache" in capsys.readouterr().err
