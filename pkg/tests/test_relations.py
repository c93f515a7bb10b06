import pytest

from permutations import IDENTITY, all_permutations, parse_permutation
from polyring import ZB, beta_poly, specialize_beta
from relations import (
    CATALOG,
    check_dc_triviality,
    check_g_ones,
    check_hpsw,
    check_iterated,
    check_kronecker,
    check_ktheory_main,
    check_macdonald,
    check_main,
    check_monk_like,
    check_nabla_power,
    check_psw,
    check_residue,
    check_shifted_main,
    check_stabilization,
    instances,
    iterated_targets,
    k_targets,
    main_targets,
    run_batch,
    run_check,
    stabilization_targets,
)
from schubert import SCHUBERT, cache_snapshot, clear_cache

P = parse_permutation
S3 = all_permutations(3)


def assert_holds(report):
    assert report.holds, report.to_json()
    assert report.is_consistent()


# ---- nabla of a Schubert polynomial ----

def test_hpsw_examples():
    report = check_hpsw(P("321"))
    assert_holds(report)
    assert [(t.label, t.multiplier) for t in report.rhs] == [("S_312", 1), ("S_231", 2)]
    assert str(report.lhs_total) == "x1^2 + 2*x1*x2"
    empty = check_hpsw(IDENTITY)
    assert_holds(empty)
    assert empty.rhs == ()


def test_hpsw_on_s5():
    for w in all_permutations(5):
        assert_holds(check_hpsw(w))


def test_nabla_power_on_s4():
    for w in all_permutations(4):
        for k in range(1, w.length + 1):
            assert_holds(check_nabla_power(w, k))
    with pytest.raises(ValueError):
        check_nabla_power(P("21"), 2)


# ---- main relation ----

def test_main_worked_examples():
    u = P("14253")
    report = check_main(u, u, P("152634"))
    assert_holds(report)
    assert report.rhs_total == 6
    assert [(t.multiplier, t.value) for t in report.rhs if t.value] == [(1, 1), (5, 1)]

    report = check_main(u, u, P("162435"))
    assert_holds(report)
    assert report.rhs_total == 6
    assert [(t.multiplier, t.value) for t in report.rhs if t.value] == [(2, 1), (4, 1)]


def test_main_lists_zero_terms_inside_the_window():
    report = check_main(P("14253"), P("14253"), P("152634"))
    assert [t.multiplier for t in report.rhs] == [1, 2, 3, 5, 6]


def test_main_trivial():
    assert_holds(check_main(IDENTITY, IDENTITY, IDENTITY))


def test_window_reaches_past_w():
    # w is the identity but u = s_3 pulls k = 3 into the window
    report = check_main(P("1243"), IDENTITY, IDENTITY)
    assert_holds(report)
    assert report.lhs_total == 3


def test_main_on_s3_targets():
    for u in S3:
        for v in S3:
            targets = main_targets(u, v)
            for w in targets:
                assert_holds(check_main(u, v, w))


@pytest.mark.slow
def test_main_on_s4_targets():
    for u in all_permutations(4):
        for v in all_permutations(4):
            for w in main_targets(u, v):
                assert_holds(check_main(u, v, w))


def test_shifted_main_and_stabilization_on_s3():
    for u in S3:
        for v in S3:
            for w in stabilization_targets(u, v):
                shifted = check_shifted_main(u, v, w)
                stable = check_stabilization(u, v, w)
                main = check_main(u, v, w)
                assert_holds(shifted)
                assert_holds(stable)
                # shifted minus main is stabilization
                assert shifted.lhs_total - main.lhs_total == stable.lhs_total
                assert shifted.rhs_total - main.rhs_total == stable.rhs_total


def test_stabilization_extra_term_can_be_nonzero():
    report = check_stabilization(P("21"), P("21"), P("21"))
    assert_holds(report)
    assert report.details["extra_term"] == "1"
    assert report.rhs[0].label == "c(132,132;231)"
    seen = [
        check_stabilization(u, v, w).details["extra_term"]
        for u in S3 for v in S3 for w in stabilization_targets(u, v)
    ]
    assert "1" in seen


def test_stabilization_trivial():
    report = check_stabilization(IDENTITY, IDENTITY, IDENTITY)
    assert_holds(report)
    assert report.rhs_total == 0


# ---- corollaries ----

def test_monk_like():
    report = check_monk_like(IDENTITY, 1)
    assert report.holds
    assert report.details["witnesses"] == [1]
    assert check_monk_like(P("14253"), 3).holds
    for v in all_permutations(4):
        for i in range(1, 5):
            assert check_monk_like(v, i).holds


def test_residue_examples():
    u = P("14253")
    for w in ("152634", "162435"):
        report = check_residue(u, u, P(w), 3)
        assert_holds(report)
        assert report.comparison == "mod 6"
        assert report.lhs_total == 6


def test_residue_alpha_one_always_holds():
    for u in S3:
        for v in S3:
            for w in main_targets(u, v):
                assert check_residue(u, v, w, 1).holds


def test_residue_precondition_is_invalid_input():
    with pytest.raises(ValueError, match="not a multiple of 2"):
        check_residue(P("14253"), P("21"), IDENTITY, 2)


def test_macdonald():
    report = check_macdonald(P("321"))
    assert_holds(report)
    assert report.lhs_total == 6
    assert [t.multiplier for t in report.rhs] == [2, 4]
    assert_holds(check_macdonald(IDENTITY))
    for w in all_permutations(5):
        assert_holds(check_macdonald(w))


def test_iterated_reduces_to_main_when_k_is_one():
    for u in S3:
        for v in S3:
            if u.length + v.length == 0:
                continue
            for w in iterated_targets(u, v, 1):
                iterated = check_iterated(u, v, w, 1)
                main = check_main(u, v, w)
                assert_holds(iterated)
                assert iterated.lhs_total == main.rhs_total
                assert iterated.rhs_total == main.lhs_total


def test_iterated_small_instance():
    report = check_iterated(P("21"), P("21"), P("21"), 1)
    assert_holds(report)
    assert report.lhs_total == 2


def test_iterated_on_s3_all_k():
    for u in S3:
        for v in S3:
            for k in range(1, u.length + v.length + 1):
                for w in iterated_targets(u, v, k):
                    assert_holds(check_iterated(u, v, w, k))


def test_iterated_preconditions():
    with pytest.raises(ValueError):
        check_iterated(P("21"), P("21"), P("21"), 3)
    with pytest.raises(ValueError):
        check_iterated(P("21"), P("21"), IDENTITY, 1)


def test_kronecker():
    report = check_kronecker(P("21"), P("21"), 1)
    assert_holds(report)
    assert report.lhs_total == 2
    assert [t.multiplier for t in report.lhs] == [2]
    assert report.rhs_total == 2
    with pytest.raises(ValueError):
        check_kronecker(IDENTITY, P("21"), 1)
    with pytest.raises(ValueError):
        check_kronecker(P("21"), P("21"), 2)


def test_kronecker_on_s4():
    for name_inputs in instances("kronecker", 4):
        assert_holds(run_check("kronecker", name_inputs))


def test_dc_triviality():
    assert_holds(check_dc_triviality(IDENTITY, IDENTITY))
    report = check_dc_triviality(P("132"), P("132"))
    assert_holds(report)
    assert 1 in report.details["checked_indices"]
    for u in all_permutations(4):
        for v in all_permutations(4):
            assert_holds(check_dc_triviality(u, v))


# ---- K-theory ----

def test_psw_examples():
    report = check_psw(P("21"))
    assert_holds(report)
    _, k_part = report.parts
    assert str(k_part.lhs_total) == "1"
    assert k_part.rhs_total == 1
    assert_holds(check_psw(IDENTITY))
    for w in all_permutations(4):
        assert_holds(check_psw(w))


def test_psw_beta_part_reduces_to_hpsw_at_bottom_degree():
    for w in all_permutations(4):
        beta_part = check_psw(w).parts[0]
        bottom = specialize_beta(beta_part.rhs_total, 0)
        assert bottom == check_hpsw(w).rhs_total


def test_ktheory_examples():
    assert_holds(check_ktheory_main(IDENTITY, IDENTITY, IDENTITY))
    report = check_ktheory_main(P("21"), P("21"), P("21"))
    assert_holds(report)
    assert report.lhs_total == beta_poly([2])
    assert [t.multiplier for t in report.rhs] == [2, 1]
    report = check_ktheory_main(P("21"), P("21"), P("312"))
    assert_holds(report)
    assert report.rhs_total == beta_poly([])


@pytest.mark.parametrize("u, v, w", [("132", "132", "2413"), ("132", "21", "321")])
def test_ktheory_counts_the_beta_derivative_of_the_coefficient(u, v, w):
    # K(u,v;w) = b here, so b^2 d/db contributes b^2 on the right
    report = check_ktheory_main(P(u), P(v), P(w))
    assert_holds(report)
    derivative = report.rhs[-1]
    assert derivative.label.startswith("b^2 d/db K(")
    assert derivative.contribution == beta_poly([0, 0, 1])


def test_ktheory_on_s3():
    for u in S3:
        for v in S3:
            for w in k_targets(u, v):
                assert_holds(check_ktheory_main(u, v, w))


@pytest.mark.slow
def test_ktheory_on_s4():
    for inputs in instances("ktheory", 4):
        assert_holds(run_check("ktheory", inputs))


def test_g_ones():
    assert_holds(check_g_ones(IDENTITY))
    assert_holds(check_g_ones(P("321")))
    for w in all_permutations(5):
        report = check_g_ones(w)
        assert report.lhs_total == 1


# ---- catalog and batches ----

def test_catalog_names():
    assert set(CATALOG) == {
        "hpsw", "main", "monk", "residue", "stabilization", "shifted", "macdonald",
        "iterated", "kronecker", "dc", "psw", "ktheory", "g-ones", "nabla-power",
    }


def test_instances_counts():
    assert len(instances("macdonald", 4)) == 24
    assert len(instances("g-ones", 5)) == 120
    assert len(instances("monk", 3)) == 18
    assert all(inputs["u"] != IDENTITY for inputs in instances("kronecker", 3))
    with pytest.raises(ValueError):
        instances("nope", 3)


def test_run_check_reports_missing_inputs():
    with pytest.raises(ValueError, match="--w"):
        run_check("main", {"u": IDENTITY, "v": IDENTITY})


def test_parallel_batch_matches_serial_on_s3():
    batch = instances("main", 3)
    serial = [r.to_json() for r in run_batch("main", batch, jobs=1)]
    parallel = [r.to_json() for r in run_batch("main", batch, jobs=2)]
    assert serial == parallel


def test_report_json_shape():
    payload = check_main(P("14253"), P("14253"), P("152634")).to_json()
    assert payload["identity"] == "main"
    assert payload["inputs"] == {"u": "14253", "v": "14253", "w": "152634"}
    assert payload["holds"] is True
    assert payload["lhs_total"] == "6" and payload["rhs_total"] == "6"
    assert {"label", "multiplier", "value", "contribution"} <= set(payload["rhs"][0])


def test_psw_json_has_parts():
    payload = check_psw(P("132")).to_json()
    assert [part["identity"] for part in payload["parts"]] == ["psw-beta", "psw-k"]
    assert payload["comparison"] == "all-parts"


def test_beta_totals_render_as_text():
    report = check_psw(P("132")).parts[0]
    assert "b" in report.to_json()["lhs_total"]
    assert report.lhs_total.ring == ZB


def test_parallel_batch_keeps_worker_polynomials():
    batch = instances("macdonald", 4)
    clear_cache()
    run_batch("macdonald", batch, jobs=1)
    serial = cache_snapshot(SCHUBERT)
    clear_cache()
    run_batch("macdonald", batch, jobs=2)
    parallel = cache_snapshot(SCHUBERT)
    clear_cache()
    assert serial
    assert all(parallel.get(code) == poly for code, poly in serial.items())
