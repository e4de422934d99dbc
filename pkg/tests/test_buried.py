import random
from math import isqrt

import pytest

from oracles import buried_pair_oracle
from qlat.buried import (
    AlreadyBuriedInRank2,
    BuriedVerdict,
    NotPrimitiveInput,
    ScanReport,
    buried3,
    conjecture_scan,
    scan_discriminant,
    witness_L,
)
from qlat.enumerate import enumerate_binary_by_det, is_isometric, is_primitive
from qlat.forms_core import (
    NotPositiveDefinite,
    NotPositiveSemidefinite,
    diagonal,
    make_lattice,
    unit_lattice,
)
from qlat.localfield import buried_in_genus
from qlat.represent import embeds, primitive_value_map

rng = random.Random(20260816)

EX_L1 = make_lattice(((21, 5), (5, 64)))
EX_L2 = make_lattice(((24, 1), (1, 55)))


def primitive_pool(cap):
    pool = []
    for d in range(1, cap + 1):
        pool.extend(l for l in enumerate_binary_by_det(d) if is_primitive(l))
    return pool


def test_witness_examples():
    assert witness_L(1, 0, 1, 0, 1, 0).gram == unit_lattice(3).gram
    w = witness_L(3080, 1321, 567, 1409, 645, 604)
    assert w.det() == 260
    assert w.gram == (
        (3080, 1321, 1409),
        (1321, 567, 604),
        (1409, 604, 645),
    )
    with pytest.raises(NotPositiveSemidefinite):
        witness_L(3080, 1321, 567, 1409, 645, 605)
    with pytest.raises(NotPositiveDefinite):
        witness_L(2, 3, 1, 0, 1, 0)


def test_witness_det_identity():
    for _ in range(200):
        a = rng.randrange(1, 30)
        b1, b2 = rng.randrange(0, a), rng.randrange(0, a)
        c1 = rng.randrange(b1 * b1 // a + 1, b1 * b1 // a + 30)
        c2 = rng.randrange(b2 * b2 // a + 1, b2 * b2 // a + 30)
        d1, d2 = a * c1 - b1 * b1, a * c2 - b2 * b2
        if d1 <= 0 or d2 <= 0:
            continue
        t = rng.randrange(-(a + 5), a + 6)
        gap = a * t - b1 * b2
        if gap * gap > d1 * d2:
            with pytest.raises(NotPositiveSemidefinite):
                witness_L(a, b1, c1, b2, c2, t)
            continue
        w = witness_L(a, b1, c1, b2, c2, t)
        assert w.det() * a == d1 * d2 - gap * gap


def test_separated_pair_stays_unburied():
    l1, l2 = diagonal((1, 23)), diagonal((2, 3))
    v = buried3(l1, l2, 1000)
    assert v.status == "NotBuriedUpTo"
    assert v.bound == 1000
    assert v.witness is None
    # the trace covers every common primitive value with every completion
    # pair and both signs of a nonzero second inner product
    t1 = primitive_value_map(l1, 1000)
    t2 = primitive_value_map(l2, 1000)
    want = 0
    for a in set(t1) & set(t2):
        for _ in t1[a]:
            for b2, _ in t2[a]:
                want += 2 if b2 else 1
    assert len(v.trace) == want
    seen_a = {entry[0] for entry in v.trace}
    assert seen_a == set(t1) & set(t2)


def test_genus_pair_is_buried():
    v = buried3(EX_L1, EX_L2, 4000)
    assert v.status == "Buried"
    assert v.witness.det() == 260
    assert is_isometric(v.witness, witness_L(3080, 1321, 567, 1409, 645, 604))
    assert embeds(EX_L1, v.witness) is not None
    assert embeds(EX_L2, v.witness) is not None
    # the hit value was the last one examined
    assert v.trace[-1][0] == 3080


def test_small_pair_is_buried():
    v = buried3(diagonal((1, 1)), make_lattice(((2, 1), (1, 2))), 10)
    assert v.status == "Buried"
    assert v.trace[-1][0] == 2
    assert embeds(diagonal((1, 1)), v.witness) is not None
    assert embeds(make_lattice(((2, 1), (1, 2))), v.witness) is not None


def test_input_errors():
    with pytest.raises(NotPrimitiveInput):
        buried3(diagonal((1, 4)), diagonal((2, 3)), 10)
    with pytest.raises(NotPrimitiveInput):
        buried3(diagonal((2, 3)), diagonal((2, 2)), 10)
    with pytest.raises(ValueError):
        buried3(diagonal((1, 1, 1)), diagonal((1, 1)), 10)
    with pytest.raises(ValueError):
        buried3(diagonal((1, 2)), diagonal((1, 3)), 0)


def test_rank2_pairs_raise_with_trivial_verdict():
    l1 = diagonal((2, 3))
    l2 = make_lattice(((3, 0), (0, 2)))
    with pytest.raises(AlreadyBuriedInRank2) as info:
        buried3(l1, l2, 10)
    verdict = info.value.verdict
    assert verdict.status == "Buried"
    assert verdict.witness.rank == 3
    assert verdict.trace[0][0] == "rank2"
    assert embeds(l1, verdict.witness) is not None
    assert embeds(l2, verdict.witness) is not None


def test_interval_shortcut_matches_window_scan():
    for _ in range(400):
        a = rng.randrange(1, 60)
        prod = rng.randrange(-600, 601)
        dd = rng.randrange(1, 1200)
        r = prod % a
        shortcut = min(r, a - r) ** 2 < dd
        center = prod // a
        window = any(
            (a * t - prod) ** 2 < dd for t in range(center - 2, center + 3)
        )
        assert shortcut == window, (a, prod, dd)


def test_guarantee_zone_always_buries():
    pool = primitive_pool(20)
    tried = 0
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            l1, l2 = pool[i], pool[j]
            if is_isometric(l1, l2):
                continue
            zone = 2 * isqrt(l1.det() * l2.det())
            common = set(primitive_value_map(l1, zone)) & set(
                primitive_value_map(l2, zone)
            )
            if not common:
                continue
            tried += 1
            assert buried3(l1, l2, zone).status == "Buried", (l1.gram, l2.gram)
    assert tried > 50


def test_agrees_with_pairing_oracle_small_dets():
    pool = primitive_pool(18)
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            l1, l2 = pool[i], pool[j]
            if is_isometric(l1, l2):
                continue
            want = buried_pair_oracle(l1.gram, l2.gram)
            v = buried3(l1, l2, 4 * l1.det() * l2.det())
            assert (v.status == "Buried") == want, (l1.gram, l2.gram)
            if v.status == "Buried":
                assert buried_in_genus(l1, l2, 3)


def test_agrees_with_pairing_oracle_sampled():
    pool = primitive_pool(40)
    for _ in range(60):
        l1, l2 = rng.sample(pool, 2)
        if is_isometric(l1, l2):
            continue
        want = buried_pair_oracle(l1.gram, l2.gram)
        v = buried3(l1, l2, 4 * l1.det() * l2.det())
        assert (v.status == "Buried") == want, (l1.gram, l2.gram)


def test_scan_examples():
    assert conjecture_scan(1, 0) == []
    reports = conjecture_scan(1, 50)
    assert [r.d for r in reports] == list(range(1, 51))
    for r in reports:
        assert isinstance(r, ScanReport)
        assert r.counterexamples == ()
        assert r.errors == ()
        assert r.a_bound == 4 * r.d
    assert sum(r.pairs_checked for r in reports) > 100


def test_scan_honors_policy():
    rep = scan_discriminant(3, a_max_policy=lambda d: 7)
    assert rep.a_bound == 7
    assert rep.d == 3


def test_scan_at_example_determinant():
    rep = scan_discriminant(1319)
    assert rep.counterexamples == ()
    assert rep.errors == ()
    classes = [l for l in enumerate_binary_by_det(1319) if is_primitive(l)]
    assert rep.pairs_checked == len(classes) * (len(classes) - 1) // 2
    # the documented genus pair is among the scanned classes and is buried
    r1 = next(l for l in classes if is_isometric(l, EX_L1))
    r2 = next(l for l in classes if is_isometric(l, EX_L2))
    assert buried_in_genus(r1, r2, 3)
    assert buried3(r1, r2, 4 * 1319).status == "Buried"
