"""End-to-end and unit coverage for the verification check registry.

The full registry runs once per module; individual assertions then pick
apart statuses and details.  Two checks are expected to fail honestly
(the reduced pair table is one entry short of the mechanical count, and
the shipped multiplier set loses two local obstructions) and one check
is skipped without its optional input.  Everything else must pass.
"""

import json

import pytest

from qlat.paperlab import (
    CHECK_GROUPS,
    InvalidAlpha,
    SameSquareClass,
    VerifyConfig,
    construct_avoiding_binary,
    even_theorem_counts,
    find_third_integer,
    n_alpha,
    n_alpha_variants,
    prop_conditions_check,
    results_to_json,
    run_checks,
    run_group,
    verify_progressions,
    verify_remark35,
)
from qlat.forms_core import diagonal, unit_lattice
from qlat.enumerate import is_isometric

EXPECTED_FAILS = {"thm2.5/a-reduced-pairs", "thm2.5/g-avoid-n-39"}
EXPECTED_SKIPS = {"thm4.1/a7-glue"}


@pytest.fixture(scope="module")
def full_run():
    return run_checks()


@pytest.fixture(scope="module")
def by_check(full_run):
    return {r.check: r for r in full_run}


def test_every_group_contributes(full_run):
    prefixes = {r.check.split("/")[0] for r in full_run}
    assert prefixes == set(CHECK_GROUPS)


def test_expected_statuses(full_run):
    for r in full_run:
        if r.check in EXPECTED_FAILS:
            assert r.status == "Fail", r.check
        elif r.check in EXPECTED_SKIPS:
            assert r.status == "Skipped", r.check
        else:
            assert r.status == "Pass", (r.check, r.details)


def test_fail_results_carry_counterexample(by_check):
    for check in EXPECTED_FAILS:
        assert "counterexample" in by_check[check].details


def test_skipped_results_carry_reason(by_check):
    for check in EXPECTED_SKIPS:
        assert by_check[check].reason


def test_eleven_candidates(by_check):
    d = by_check["thm2.3/11-candidates"].details
    assert d["count"] == 11
    assert d["exhaustive"] and d["matches_published_list"] and d["closure_adds_nothing"]


def test_candidate_misses_counts_kappa(by_check):
    d = by_check["thm2.3/candidate-misses"].details
    assert d["kappa_1_3"] == 6
    assert all(miss is not None for _, miss in d["first_missed_value"])


def test_reduced_pair_table_shortfall(by_check):
    d = by_check["thm2.5/a-reduced-pairs"].details
    assert d["printed_count"] == 15
    assert d["mechanical_count"] == 16
    assert d["counterexample"] == [2, 2]
    assert d["distinct_classes"] == 14
    assert sorted(d["isometric_duplicates"]) == [[[0, 3], [2, 1]], [[1, 4], [3, 0]]]


def test_cascade_counts(by_check):
    assert by_check["thm2.5/b-candidates"].details["count"] == 52
    c = by_check["thm2.5/c-probe-failures"].details
    assert (c["failing"], c["surviving"]) == (34, 18)
    d = by_check["thm2.5/d-superlattice-exception"].details
    assert d["exception_count"] == 1
    assert d["cases"][0][2] == 14
    e = by_check["thm2.5/e-cube-split"].details
    assert (e["inside_cube"], e["outside_cube"]) == (9, 9)
    assert by_check["thm2.5/f-remaining-nine"].details["count"] == 9


def test_alpha_variants(by_check):
    variants = by_check["thm2.5/n-alpha"].details["variants"]
    assert [v["alpha"] for v in variants] == [34465, 7167]
    assert variants[0]["degenerate_symbol_pairs"] == [[39, 13], [13, 39]]
    assert variants[1]["degenerate_symbol_pairs"] == []
    for v in variants:
        assert v["n_value"] == 4 * v["alpha"] * _product(v["multipliers"])
        assert (v["n_value"] // 4) % 8 == 7


def _product(values):
    out = 1
    for v in values:
        out *= v
    return out


def test_local_obstruction_split(by_check):
    bad = by_check["thm2.5/g-avoid-n-39"].details
    unobstructed = [row for row in bad["blocking_place"] if row[1] is None]
    assert len(unobstructed) == 2
    good = by_check["thm2.5/g-avoid-n-41"].details
    assert [row[1] for row in good["blocking_place"]] == [7, 11, 13, 17, 23, 29, 31, 37, 13]


def test_ramanujan_odd_list(by_check):
    d = by_check["prop2.4/ramanujan-odd"].details
    assert d["missing_odd"] == d["expected"]
    assert len(d["missing_odd"]) == 18
    assert d["missing_odd"][:3] == [3, 7, 21] and d["missing_odd"][-1] == 2719


def test_remark33_members(by_check):
    d = by_check["rem3.3/candidates"].details
    assert d["count"] == 6 and d["exhaustive"] and d["contains_orthogonal_split"]
    assert by_check["rem3.3/avoidance"].details["script_with_avoided_target_empty"]


def test_burial_examples(by_check):
    d = by_check["ex3.10/smallest-common-value"].details
    assert d["common_values"] == [3080]
    w = by_check["ex3.10/buried-witness"].details
    assert w["witness_det"] == 260
    assert by_check["ex3.8/not-buried-rank3"].details["bound"] == 1000


def test_conjecture_scan_scope(by_check):
    d = by_check["conjecture/scan"].details
    assert d["d_max"] == 300
    assert d["pairs_checked"] == 4746
    assert d["errors"] == []


def test_details_are_json_plain(full_run):
    def walk(x):
        if isinstance(x, dict):
            for k, v in x.items():
                assert isinstance(k, str)
                walk(v)
        elif isinstance(x, (list, tuple)):
            for v in x:
                walk(v)
        else:
            assert x is None or isinstance(x, (str, int, bool))

    for r in full_run:
        walk(r.details)


def test_json_round_trip_is_deterministic(full_run):
    text = results_to_json(full_run)
    assert results_to_json(full_run) == text
    payload = json.loads(text)
    assert len(payload) == len(full_run)
    fresh = results_to_json(run_checks(["rem3.5", "lem3.4"]))
    again = results_to_json(run_checks(["rem3.5", "lem3.4"]))
    assert fresh == again


# unit-level checks for the public operations


def test_progression_sweep_examples():
    r = verify_progressions("L6", 500)
    assert r.status == "Pass"
    assert r.details["excluded_head"][:4] == [7, 15, 23, 28]
    r = verify_progressions("L5", 10)
    assert r.status == "Pass" and r.details["excluded_head"] == [10]
    r = verify_progressions("M2", 500)
    assert r.status == "Pass"
    assert {6, 15, 24, 33} <= set(r.details["excluded_head"])
    with pytest.raises(KeyError):
        verify_progressions("L9", 100)


def test_conditions_hold_for_the_seven_targets():
    report = prop_conditions_check((1, 2, 3, 5, 10, 14, 15))
    assert report["failed"] == []


def test_conditions_catch_square_class_collision():
    report = prop_conditions_check((1, 4, 3, 5, 10, 14, 15))
    assert report["failed"] == ["i"]


def test_conditions_need_seven_values():
    with pytest.raises(ValueError):
        prop_conditions_check((1, 2, 3))


def test_find_third_integer_classic_pair():
    rep = find_third_integer(1, 2)
    assert rep.prime == 7
    assert len(rep.binaries) == 2
    dets = sorted(l.det() for l in rep.binaries)
    assert dets == [1, 2]


def test_find_third_integer_one_three():
    rep = find_third_integer(1, 3)
    assert rep.prime == 5
    assert sorted(l.det() for l in rep.binaries) == [2, 3]


def test_find_third_integer_rejects_square_ratio():
    with pytest.raises(SameSquareClass):
        find_third_integer(1, 4)
    with pytest.raises(SameSquareClass):
        find_third_integer(3, 12)
    with pytest.raises(ValueError):
        find_third_integer(0, 5)


def test_avoiding_binary_identity_target():
    rep = construct_avoiding_binary((unit_lattice(4),))
    assert (rep.prime, rep.alpha) == (5, 7)
    assert is_isometric(rep.lattice, diagonal((5, 35)))
    assert all(row[3] for row in rep.evidence)


def test_avoiding_binary_needs_rank_four():
    with pytest.raises(ValueError):
        construct_avoiding_binary((unit_lattice(3),))


def test_alpha_search_variants():
    alpha, n_value = n_alpha()
    assert (alpha, n_value % alpha) == (34465, 0)
    variants = n_alpha_variants()
    assert [v["alpha"] for v in variants] == [34465, 7167]
    assert [v["residue_mod_8"] for v in variants] == [1, 7]
    for v in variants:
        assert v["alpha"] % 8 == v["residue_mod_8"]


def test_explicit_alpha_is_validated():
    with pytest.raises(InvalidAlpha):
        even_theorem_counts(alpha=1)
    with pytest.raises(InvalidAlpha):
        even_theorem_counts(alpha=2)


def test_remark35_distinguishes_field_and_ring():
    r = verify_remark35()
    assert r.status == "Pass"
    assert r.details["rational_dyadic"] is True
    assert r.details["integral_dyadic"] is False


def test_run_group_rejects_unknown_names():
    with pytest.raises(KeyError):
        run_group("thm9.9")
    with pytest.raises(KeyError):
        run_checks(["nope"])


def test_selected_groups_preserve_registry_order():
    res = run_checks(["rem3.5", "prop2.2"])
    assert res[0].check.startswith("prop2.2/")
    assert res[-1].check == "rem3.5/field-vs-ring"


def test_a7_gram_file_is_consumed(tmp_path):
    from qlat.forms_core import write_lattice_file, root_A

    path = tmp_path / "glue.json"
    write_lattice_file(str(path), root_A(7))
    res = run_group("thm4.1", VerifyConfig(a7_gram_path=str(path)))
    glue = {r.check: r for r in res}["thm4.1/a7-glue"]
    assert glue.status in ("Pass", "Fail")
    assert glue.details["gram"] == [list(row) for row in root_A(7).gram]
