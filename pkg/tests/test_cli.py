import json
from dataclasses import replace
from pathlib import Path

import pytest

import cli
from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from permutations import parse_permutation
from relations import check_main
from schubert import clear_cache

GOLDEN = Path(__file__).parent / "golden"

pytestmark = pytest.mark.usefixtures("no_disk_cache")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def json_lines(out):
    return [json.loads(line) for line in out.splitlines()]


# ---- poly / coeff / expand ----

def test_poly(capsys):
    assert run(capsys, "poly", "321") == (EXIT_OK, "x1^2*x2\n")
    assert run(capsys, "poly", "1") == (EXIT_OK, "1\n")
    assert run(capsys, "poly", "--grothendieck", "132") == (EXIT_OK, "-x1*x2 + x1 + x2\n")


def test_poly_beta_matches_golden_file(capsys):
    code, out = run(capsys, "poly", "--grothendieck-beta", "132")
    assert code == EXIT_OK
    assert out == (GOLDEN / "poly_grothendieck_beta_132.txt").read_text(encoding="utf-8")


def test_poly_json(capsys):
    code, out = run(capsys, "poly", "321", "--json")
    assert code == EXIT_OK
    assert json_lines(out) == [{"basis": "schubert", "w": "321", "poly": "x1^2*x2"}]


def test_coeff(capsys):
    assert run(capsys, "coeff", "14253", "14253", "162534") == (EXIT_OK, "1\n")
    assert run(capsys, "coeff", "14253", "1", "14253") == (EXIT_OK, "1\n")
    assert run(capsys, "coeff", "--grothendieck-beta", "132", "132", "2413") == (EXIT_OK, "b\n")
    assert run(capsys, "coeff", "--grothendieck", "132", "132", "2413") == (EXIT_OK, "-1\n")


def test_expand(capsys):
    assert run(capsys, "expand", "132", "132") == (EXIT_OK, "1 1423\n1 231\n")
    code, out = run(capsys, "expand", "21", "21", "--json")
    assert json_lines(out) == [
        {"u": "21", "v": "21", "basis": "schubert", "terms": [{"w": "312", "coeff": "1"}]}
    ]


def test_expand_multiplicity_free_example(capsys):
    code, out = run(capsys, "expand", "1562374", "4516273")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 12
    assert all(line.startswith("1 ") for line in lines)


# ---- verify ----

def test_verify_worked_example(capsys):
    code, out = run(capsys, "verify", "main", "--u", "14253", "--v", "14253", "--w", "152634", "--json")
    assert code == EXIT_OK
    (report,) = json_lines(out)
    assert report["holds"] is True
    assert report["lhs_total"] == report["rhs_total"] == "6"


def test_verify_residue_text(capsys):
    code, out = run(
        capsys, "verify", "residue", "--u", "14253", "--v", "14253", "--w", "162435", "--alpha", "3"
    )
    assert code == EXIT_OK
    assert out.startswith("✅ residue u=14253 v=14253 w=162435 alpha=3: 6 vs 0 (mod 6)")


def test_verify_all_n(capsys):
    code, out = run(capsys, "verify", "macdonald", "--all-n", "4")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 24
    assert all(line.startswith("✅ macdonald") for line in lines)

    code, out = run(capsys, "verify", "g-ones", "--all-n", "5", "--json")
    assert code == EXIT_OK
    assert len(json_lines(out)) == 120


def test_verify_psw_text_lists_both_parts(capsys):
    code, out = run(capsys, "verify", "psw", "--w", "21")
    assert code == EXIT_OK
    assert out == "✅ psw w=21: psw-beta: ok; psw-k: ok\n"


def test_verify_sample_is_seeded(capsys):
    args = ("verify", "main", "--all-n", "3", "--sample", "5", "--seed", "7", "--json")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert len(json_lines(first[1])) == 5


def test_verify_parallel_output_matches_serial(capsys):
    serial = run(capsys, "verify", "main", "--all-n", "3", "--json")
    parallel = run(capsys, "verify", "main", "--all-n", "3", "--json", "--jobs", "2")
    assert serial == parallel


def test_verify_exit_code_reflects_failures(capsys, monkeypatch):
    report = check_main(parse_permutation("21"), parse_permutation("21"), parse_permutation("21"))
    monkeypatch.setattr(cli, "run_batch", lambda name, batch, jobs=1: [replace(report, holds=False)])
    code, out = run(capsys, "verify", "main", "--u", "21", "--v", "21", "--w", "21")
    assert code == EXIT_FAILED
    assert out.startswith("❌ main")


@pytest.mark.parametrize(
    "argv",
    [
        ["poly", "1a3"],
        ["poly", "13"],
        ["verify", "nope", "--all-n", "3"],
        ["verify", "main"],
        ["verify", "main", "--sample", "3"],
        ["verify", "main", "--u", "21", "--v", "21"],
        ["verify", "residue", "--u", "14253", "--v", "21", "--w", "1", "--alpha", "2"],
        ["verify", "macdonald", "--all-n", "0"],
        ["sweep", "lr", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("schubertist ")


# ---- sweep ----

def test_sweep(capsys):
    code, out = run(capsys, "sweep", "multfree", "2")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["pairs_examined"] == 1
    assert report["violations"] == []
    assert "wall_time" not in report


def test_sweep_output_is_repeatable(capsys):
    assert run(capsys, "sweep", "covers", "4") == run(capsys, "sweep", "covers", "4", "--jobs", "2")


def test_deep_sweep_is_refused_without_flag(capsys, monkeypatch):
    monkeypatch.setattr(cli.config, "ALLOW_DEEP_SWEEPS", False)
    assert main(["sweep", "multfree", "7"]) == EXIT_USAGE


# ---- cache ----

def test_cold_and_warm_cache_give_identical_output(capsys, tmp_path):
    path = tmp_path / "polys.cache"
    clear_cache()
    cold = run(capsys, "expand", "1432", "132", "--cache", str(path))
    assert path.exists()
    clear_cache()
    warm = run(capsys, "expand", "1432", "132", "--cache", str(path))
    assert cold == warm
    assert cold[0] == EXIT_OK


def test_unreadable_cache_only_warns(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SCHUBERT_QUIET", "0")
    path = tmp_path / "polys.cache"
    path.write_text("garbage\n", encoding="utf-8")
    code = main(["poly", "321", "--cache", str(path)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.out == "x1^2*x2\n"
    assert "⚠️ ignoring cache" in captured.err


def test_cold_and_warm_cache_sweeps_match(capsys, tmp_path):
    path = tmp_path / "polys.cache"
    clear_cache()
    cold = run(capsys, "sweep", "multfree", "4", "--cache", str(path))
    clear_cache()
    warm = run(capsys, "sweep", "multfree", "4", "--cache", str(path), "--jobs", "2")
    assert cold == warm
