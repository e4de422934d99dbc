"""Acceptance gate: one test per shipped contract target.

Every test prints a single "acceptance pass/FAIL" line before asserting,
so the -v listing doubles as the criterion scoreboard.  Two tests fail
on purpose and stay red:

* test_even_cascade_pair_count_matches_table: the displayed reduced pair
  table has 15 rows but the mechanical sweep finds 16 pairs (14 classes
  up to isometry); the extra pair and the isometric duplicates are in
  the check details.
* test_even_cascade_avoidance_shipped_multipliers: with the shipped
  multiplier run ending in the composite 39, two of the nine survivors
  have no local obstruction at any place dividing the target value.  The
  companion test with the repaired run ending in 41 must pass.

Both reproduce frozen inputs faithfully instead of patching them; the
analysis lives with the registry details and the repository notes.

Runtime: the whole module is dominated by the embedding oracle sweep
(about twelve minutes single core); everything else is under a minute
per test.
"""

import random
import time

import pytest
from sympy import primefactors

from qlat.enumerate import enumerate_binary_by_det, short_vectors
from qlat.forms_core import diagonal, direct_sum, make_lattice, root_A
from qlat.localfield import (
    REAL_PLACE,
    buried_in_genus,
    buried_over_qp,
    buried_over_zp,
    hilbert,
    qp_invariants,
    qp_space_represents,
    same_genus,
    square_class,
    zp_represents,
)
from qlat.buried import buried3
from qlat.represent import embeds, is_isometric, primitive_value_map
from qlat import paperlab as pl

from oracles import box_short_vectors, naive_embeds

PASS = pl.PASS
SKIPPED = pl.SKIPPED


def _criterion(label, ok, note=""):
    line = f"acceptance {'pass' if ok else 'FAIL'}: {label}"
    if note:
        line += f" ({note})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def registry():
    """Full check registry, one timed run per group."""
    results = {}
    times = {}
    for name in pl.CHECK_GROUPS:
        t0 = time.perf_counter()
        for res in pl.run_group(name):
            results[res.check] = res
        times[name] = time.perf_counter() - t0
    return results, times


# representability sweeps ---------------------------------------------------


def test_ternary_progression_sweeps(registry):
    results, times = registry
    bad = [
        f"thm2.3/progression-L{i}"
        for i in range(1, 8)
        if results[f"thm2.3/progression-L{i}"].status != PASS
    ]
    _criterion(
        "seven ternary families match their excluded progressions to 2000",
        not bad and times["thm2.3"] < 10.0,
        f"mismatching={bad} took {times['thm2.3']:.1f}s",
    )


def test_eleven_candidate_upper_bound(registry):
    results, _ = registry
    cand = results["thm2.3/11-candidates"]
    misses = results["thm2.3/candidate-misses"]
    _criterion(
        "the 11 escalation candidates are exact and each misses a probe value",
        cand.status == PASS
        and cand.details["count"] == 11
        and cand.details["kappa_1_3"] == 6
        and misses.status == PASS,
    )


def test_quaternary_progressions_and_odd_exceptions(registry):
    results, _ = registry
    names = [f"prop2.4/progression-M{i}" for i in range(1, 5)]
    names += ["prop2.4/progression-RamanujanN", "prop2.4/ramanujan-odd"]
    bad = [n for n in names if results[n].status != PASS]
    _criterion(
        "quaternary families to 2000 plus the 18 odd exceptions to 3000",
        not bad,
        f"failing={bad}",
    )


# even cascade --------------------------------------------------------------


def test_even_cascade_pair_count_matches_table(registry):
    # honest red: the displayed table is one isometry class short of the
    # sweep (16 reduced pairs, 14 distinct classes, 15 rows displayed)
    results, _ = registry
    res = results["thm2.5/a-reduced-pairs"]
    _criterion(
        "reduced pair table matches the mechanical sweep",
        res.status == PASS,
        f"displayed={res.details['printed_count']} "
        f"mechanical={res.details['mechanical_count']} "
        f"first_extra={res.details.get('counterexample')}",
    )


def test_even_cascade_counts_and_exception(registry):
    results, times = registry
    b = results["thm2.5/b-candidates"]
    c = results["thm2.5/c-probe-failures"]
    d = results["thm2.5/d-superlattice-exception"]
    e = results["thm2.5/e-cube-split"]
    f = results["thm2.5/f-remaining-nine"]
    ok = (
        b.status == PASS
        and b.details["count"] == 52
        and c.status == PASS
        and c.details["failing"] == 34
        and c.details["surviving"] == 18
        and d.status == PASS
        and d.details["exception_count"] == 1
        and e.status == PASS
        and e.details["inside_cube"] == 9
        and f.status == PASS
        and f.details["count"] == 9
        and results["thm2.5/n-alpha"].status == PASS
        and times["thm2.5"] < 120.0
    )
    _criterion(
        "cascade counts 52/34/18/9, the lone superlattice exception, "
        "and the final nine up to isometry",
        ok,
        f"took {times['thm2.5']:.1f}s",
    )


def test_even_cascade_avoidance_shipped_multipliers(registry):
    # honest red: the composite trailing multiplier 39 doubles the place
    # 13 valuation of the target, so two survivors keep local solutions
    results, _ = registry
    res = results["thm2.5/g-avoid-n-39"]
    open_members = [row[0] for row in res.details["blocking_place"] if row[1] is None]
    _criterion(
        "every survivor is locally blocked for the shipped multiplier run",
        res.status == PASS,
        f"alpha={res.details['alpha']} unobstructed={len(open_members)}",
    )


def test_even_cascade_avoidance_repaired_multipliers(registry):
    results, _ = registry
    res = results["thm2.5/g-avoid-n-41"]
    _criterion(
        "every survivor is locally blocked for the prime multiplier run",
        res.status == PASS
        and all(row[1] is not None for row in res.details["blocking_place"]),
        f"alpha={res.details['alpha']}",
    )


# worked burial examples ----------------------------------------------------


def test_binary_pair_burial_small_example(registry):
    results, _ = registry
    l1 = diagonal((1, 23))
    l2 = diagonal((2, 3))
    verdict = buried3(l1, l2, 1000)
    g1 = direct_sum(diagonal((1,)), make_lattice(((5, 1), (1, 23))))
    g2 = diagonal((2, 3, 19))
    ok = (
        verdict.status == "NotBuriedUpTo"
        and verdict.bound == 1000
        and same_genus(g1, g2)
        and buried_in_genus(l1, l2, 3)
        and results["ex3.8/not-buried-rank3"].status == PASS
        and results["ex3.8/buried-in-genus"].status == PASS
    )
    _criterion("not buried in one ternary to 1000, buried in a genus", ok)


def test_binary_pair_burial_large_value(registry):
    results, _ = registry
    l1 = make_lattice(((21, 5), (5, 64)))
    l2 = make_lattice(((24, 1), (1, 55)))
    common = sorted(
        set(primitive_value_map(l1, 3080)) & set(primitive_value_map(l2, 3080))
    )
    verdict = buried3(l1, l2, 3080)
    w = verdict.witness
    ok = (
        common == [3080]
        and verdict.status == "Buried"
        and w is not None
        and w.det() == 260
        and embeds(l1, w) is not None
        and embeds(l2, w) is not None
        and results["ex3.10/smallest-common-value"].status == PASS
        and results["ex3.10/buried-witness"].status == PASS
    )
    _criterion(
        "first common primitive value 3080 glues to a determinant 260 witness",
        ok,
        f"common={common[:3]} det={None if w is None else w.det()}",
    )


def test_no_quaternary_represents_three_binaries(registry):
    results, times = registry
    ok = (
        results["rem3.3/candidates"].status == PASS
        and results["rem3.3/avoidance"].status == PASS
        and times["rem3.3"] < 300.0
    )
    _criterion(
        "no rank four lattice represents the three listed binaries",
        ok,
        f"took {times['rem3.3']:.1f}s",
    )


def test_rank_gap_chain(registry):
    results, times = registry
    six = [
        "thm4.1/quinary-avoids-a5-extension",
        "thm4.1/k-outside-cube",
        "thm4.1/k-complements",
        "thm4.1/a6-avoids-cube-e6",
        "thm4.1/equal-rank-gap",
        "thm4.1/corank-one-gap",
    ]
    bad = [n for n in six if results[n].status != PASS]
    ok = (
        not bad
        and results["thm4.1/a7-glue"].status == SKIPPED
        and times["thm4.1"] < 300.0
    )
    _criterion(
        "all six rank gap sub-checks pass and the optional glue input is skipped",
        ok,
        f"failing={bad} took {times['thm4.1']:.1f}s",
    )


def test_field_vs_ring_burial(registry):
    results, _ = registry
    l1 = diagonal((1, 28))
    l2 = root_A(2)
    ok = (
        buried_over_qp(l1, l2, 3, 2)
        and not buried_over_zp(l1, l2, 3, 2)
        and results["rem3.5/field-vs-ring"].status == PASS
    )
    _criterion("dyadic burial holds over the field but not the ring", ok)


def test_conjecture_scan_small_discriminants(registry):
    results, times = registry
    res = results["conjecture/scan"]
    ok = (
        res.status == PASS
        and res.details["d_max"] == 300
        and res.details["pairs_checked"] == 4746
        and res.details["errors"] == []
        and times["conjecture"] < 1800.0
    )
    _criterion(
        "no counterexample pair for discriminants up to 300",
        ok,
        f"pairs={res.details['pairs_checked']} took {times['conjecture']:.1f}s",
    )


# property suites -----------------------------------------------------------


def _reduced_ternary_grams(dmax):
    """Reduced boxes covering every ternary class of determinant <= dmax:
    a <= b <= c diagonal, abc <= 2*dmax, off diagonals at most half the
    smaller diagonal entries, with the first off diagonal made nonnegative
    by sign flips."""
    out, seen = [], set()
    for a in range(1, dmax + 1):
        for b in range(a, dmax + 1):
            if a * b > 2 * dmax:
                break
            for c in range(b, dmax + 1):
                if a * b * c > 2 * dmax:
                    break
                for r in range(0, a // 2 + 1):
                    for s in range(-(a // 2), a // 2 + 1):
                        for t in range(-(b // 2), b // 2 + 1):
                            g = ((a, r, s), (r, b, t), (s, t, c))
                            d = (
                                a * (b * c - t * t)
                                - r * (r * c - t * s)
                                + s * (r * t - b * s)
                            )
                            if 0 < d <= dmax and g not in seen:
                                seen.add(g)
                                out.append(make_lattice(g))
    return out


def _ternary_classes(dmax):
    buckets = {}
    for lat in _reduced_ternary_grams(dmax):
        buckets.setdefault(lat.det(), []).append(lat)
    out = []
    for _, group in sorted(buckets.items()):
        reps = []
        for lat in group:
            if not any(is_isometric(lat, rep) for rep in reps):
                reps.append(lat)
        out.extend(reps)
    return out


def _unaries(dmax):
    return [diagonal((d,)) for d in range(1, dmax + 1)]


def _binaries(dmax):
    return [lat for d in range(1, dmax + 1) for lat in enumerate_binary_by_det(d)]


def test_hilbert_reciprocity_exhaustive():
    checked = 0
    for a in range(-200, 201):
        if a == 0:
            continue
        for b in range(-200, 201):
            if b == 0:
                continue
            places = [REAL_PLACE] + sorted(set(primefactors(2 * abs(a) * abs(b))))
            prod = 1
            for v in places:
                prod *= hilbert(a, b, v)
            assert prod == 1, (a, b)
            checked += 1
    _criterion("Hilbert symbol product is 1 over all places", checked == 160000)


def test_embeds_matches_bruteforce_oracle():
    # every class pair with target rank <= 3 and both determinants <= 60;
    # the ternary target phase is the long haul (measured near twelve
    # minutes on one core)
    rank2 = _unaries(60) + _binaries(60)
    pairs = 0
    for tgt in rank2:
        gt = tgt.gram_rows()
        for src in rank2:
            if src.rank > tgt.rank:
                continue
            got = embeds(src, tgt)
            want = naive_embeds(src.gram_rows(), gt)
            assert (got is None) == (want is None), (src.gram, tgt.gram)
            pairs += 1
    assert pairs == 81100

    terns = _ternary_classes(60)
    assert len(terns) == 549
    hits = 0
    for tgt in terns:
        gt = tgt.gram_rows()
        for src in rank2 + terns:
            got = embeds(src, tgt)
            want = naive_embeds(src.gram_rows(), gt)
            assert (got is None) == (want is None), (src.gram, tgt.gram)
            pairs += 1
            hits += got is not None
    assert hits >= 696
    _criterion(
        "embedding decisions agree with the assignment search oracle",
        pairs == 81100 + 859 * 549,
        f"pairs={pairs}",
    )


def test_local_representation_implied_by_embeds():
    # wherever a global embedding exists, every local check must come back
    # True; the digit search may punt with ArithmeticError on deeply
    # singular odd places, which is undecided rather than a refusal
    decided = undecided = successes = 0

    def sweep(sources, targets):
        nonlocal decided, undecided, successes
        for tgt in targets:
            for src in sources:
                if src.rank > tgt.rank or embeds(src, tgt) is None:
                    continue
                successes += 1
                for p in sorted(set(primefactors(2 * src.det() * tgt.det()))):
                    try:
                        ok = zp_represents(src, tgt, p)
                    except ArithmeticError:
                        undecided += 1
                        continue
                    assert ok, (src.gram, tgt.gram, p)
                    decided += 1

    tern12 = _ternary_classes(12)
    sweep(_unaries(12) + _binaries(12) + tern12, tern12)
    rank2 = _unaries(60) + _binaries(60)
    sweep(rank2, rank2)
    _criterion(
        "all local checks behind global embeddings hold",
        successes > 4000 and decided > 10000 and undecided <= 4,
        f"successes={successes} decided={decided} undecided={undecided}",
    )


def test_short_vectors_match_box_oracle():
    lats = _reduced_ternary_grams(20) + _binaries(50) + _unaries(50)
    for lat in lats:
        got = list(short_vectors(lat, 30))
        want = [(tuple(x), q) for x, q in box_short_vectors(lat.gram_rows(), 30)]
        assert got == want, lat.gram
    _criterion(
        "enumerated short vectors equal the box search on every lattice",
        len(lats) == 460,
    )


def _extension_criterion_holds(l1, l2, alpha, p):
    """One dimensional extension identity: the space of l1 is represented
    by the space of l2 extended by alpha iff the displayed symbol equality
    holds, except when the two spaces coincide and d1*d2 is a square,
    where representation is automatic."""
    ext = make_lattice(
        [list(row) + [0] for row in l2.gram] + [[0] * l2.rank + [alpha]]
    )
    lhs = qp_space_represents(l1, ext, p)
    d1, d2 = l1.det(), l2.det()
    i1 = qp_invariants(l1, p)
    i2 = qp_invariants(l2, p)
    if i1 == i2 and square_class(d1 * d2, p) == 1:
        return lhs
    rhs = hilbert(d1 * d2, alpha, p) == i1.hasse * i2.hasse * hilbert(d1 * d2, d2, p)
    return lhs == rhs


def test_extension_criterion_identity():
    # exhaustive on the small box, seeded sample across the stated box
    # (dets <= 60, alpha <= 60, p < 30; full enumeration is hours, the
    # conjecture scan precedent applies)
    small = _binaries(12)
    cases = 0
    for l1 in small:
        for l2 in small:
            for alpha in range(1, 13):
                for p in (2, 3, 5, 7, 11):
                    assert _extension_criterion_holds(l1, l2, alpha, p), (
                        l1.gram,
                        l2.gram,
                        alpha,
                        p,
                    )
                    cases += 1
    assert cases == 43740

    rng = random.Random(20260816)
    wide = _binaries(60)
    primes = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    for _ in range(30000):
        l1 = rng.choice(wide)
        l2 = rng.choice(wide)
        alpha = rng.randint(1, 60)
        p = rng.choice(primes)
        assert _extension_criterion_holds(l1, l2, alpha, p), (
            l1.gram,
            l2.gram,
            alpha,
            p,
        )
        cases += 1
    _criterion(
        "extension representation matches the symbol criterion",
        cases == 73740,
    )
