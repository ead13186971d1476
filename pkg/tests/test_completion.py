import random

import pytest

from pmqhur import fixtures
from pmqhur.completion import complete, decompositions, hq_conj, hq_product
from pmqhur.errors import NormUnavailable, TruncationOverflow

from helpers import orbit_oracle


def _partition(tc):
    return sorted(sorted(tc.members(c)) for c in tc.classes)


@pytest.mark.parametrize("name,bound", [("free1", 3), ("triv", 5), ("trans3", 2), ("trans3", 3), ("s3norm", 3)])
def test_classes_match_orbit_oracle(name, bound):
    spec = fixtures.pmq(name)
    assert _partition(complete(spec, bound)) == sorted(orbit_oracle(spec, bound))


def test_free1_classes(free1):
    tc = complete(free1, 3)
    assert [str(c) for c in tc.classes] == ["1", "a", "a.a", "a.a.a"]
    assert [c.norm for c in tc.classes] == [0, 1, 2, 3]
    assert tc.parse("a").in_q == "a" and tc.parse("a.a").in_q is None


def test_triv_single_class(triv):
    tc = complete(triv, 5)
    assert len(tc) == 1 and tc.classes[0].is_unit


def test_trans3_counts(tc_trans3_2):
    by_norm = {}
    for c in tc_trans3_2.classes:
        by_norm[c.norm] = by_norm.get(c.norm, 0) + 1
    # hand orbit count: the 9 two-letter words fall into 5 braid orbits
    assert by_norm == {0: 1, 1: 3, 2: 5}


def test_q_classes_are_single_letters(s3norm):
    tc = complete(s3norm, 3)
    for a in s3norm.nonunit:
        c = tc.letter(a)
        assert c.word == (a,) and c.in_q == a
    assert len({tc.letter(a) for a in s3norm.nonunit}) == 5


def test_not_locally_finite():
    with pytest.raises(NormUnavailable):
        complete(fixtures.pmq("z2"), 2)


def test_product_examples(tc_free1_3, tc_trans3_2):
    tc = tc_free1_3
    assert hq_product(tc, tc.parse("a"), tc.parse("a.a")) == tc.parse("a.a.a")
    for u in tc.classes:
        assert hq_product(tc, u, tc.unit) == u
    with pytest.raises(TruncationOverflow):
        hq_product(tc, tc.parse("a.a"), tc.parse("a.a"))
    t = tc_trans3_2
    x = hq_product(t, t.letter("(12)"), t.letter("(12)"))
    assert x == t.of_word(("(12)", "(12)")) != t.of_word(("(13)", "(13)"))


def test_conj_examples(tc_free1_3, tc_trans3_2):
    t = tc_trans3_2
    assert hq_conj(t, t.letter("(12)"), t.letter("(23)")) == t.letter("(13)")
    for u in t.classes:
        assert hq_conj(t, u, t.unit) == u
    f = tc_free1_3
    assert hq_conj(f, f.parse("a.a"), f.parse("a")) == f.parse("a.a")


def test_decompositions(tc_free1_3, tc_trans3_2, triv, pair_trans3):
    assert decompositions(tc_free1_3, tc_free1_3.parse("a.a")) == [("a", "a")]
    t = tc_trans3_2
    ws = decompositions(t, t.of_word(("(12)", "(23)")))
    assert len(ws) == 3
    assert len({pair_trans3.e_word(w) for w in ws}) == 1
    assert decompositions(complete(triv, 2), complete(triv, 2).unit) == [()]


@pytest.mark.parametrize("pair_name,bound", [("pair_trans3_s3", 3), ("pair_s3norm_s3", 3)])
def test_e_image_constant_on_classes(pair_name, bound):
    pair = fixtures.pair(pair_name)
    tc = complete(pair.pmq, bound)
    for c in tc.classes:
        assert len({pair.e_word(w) for w in tc.members(c)}) == 1


def test_norm_constant_on_classes(tc_trans3_4):
    tc = tc_trans3_4
    for c in tc.classes:
        assert {tc.weight(w) for w in tc.members(c)} == {c.norm}


def test_conj_independent_of_representatives(tc_trans3_4):
    rng = random.Random(7)
    tc = tc_trans3_4
    small = [c for c in tc.classes if c.norm <= 2]
    for _ in range(300):
        u, w = rng.choice(small), rng.choice(small)
        mu, mw = rng.choice(tc.members(u)), rng.choice(tc.members(w))
        assert tc.of_word(tc.conj_word(mu, mw)) == hq_conj(tc, u, w)


def test_product_associative(tc_trans3_4):
    rng = random.Random(3)
    tc = tc_trans3_4
    small = [c for c in tc.classes if c.norm <= 1]
    for _ in range(300):
        u, v, w = (rng.choice(small) for _ in range(3))
        assert hq_product(tc, u, hq_product(tc, v, w)) == hq_product(tc, hq_product(tc, u, v), w)


def test_braid_random_walk_stays_in_class(tc_trans3_4, trans3):
    rng = random.Random(11)
    tc = tc_trans3_4
    for _ in range(200):
        w = tuple(rng.choice(trans3.nonunit) for _ in range(rng.randint(2, 4)))
        start = tc.of_word(w)
        for _ in range(10):
            k = rng.randrange(len(w) - 1)
            w = w[:k] + (w[k + 1], trans3.cj(w[k], w[k + 1])) + w[k + 2:]
        assert tc.of_word(w) == start


def test_ideal_property(s3norm):
    tc = complete(s3norm, 3)
    for c in tc.classes:
        if c.in_q is None and not c.is_unit:
            assert all(len(w) >= 2 for w in tc.members(c))
