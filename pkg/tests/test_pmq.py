import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from pmqhur import fixtures
from pmqhur.errors import MalformedSpec, NormUnavailable
from pmqhur.pmq import (
    PairSpec,
    PmqSpec,
    classify,
    norms_of,
    pmq_conj,
    pmq_product,
    sub_pmq_norm_le,
    validate_pair,
    validate_pmq,
)


@pytest.mark.parametrize("name", ["triv", "free1", "trans3", "s3norm", "z2"])
def test_bundled_pmqs_valid(name):
    assert validate_pmq(fixtures.pmq(name)) == []


def test_planted_defect_reports_idempotence():
    v = validate_pmq(fixtures.pmq("free1_broken"))
    assert any(x.axiom == "a^a = a" and x.witness == ("a",) for x in v)


def test_unknown_symbol_is_structural_error():
    d = fixtures.pmq("free1").to_dict()
    d["conj"]["a|a"] = "zzz"
    with pytest.raises(MalformedSpec):
        PmqSpec.from_dict(d)


def test_lookups(free1, trans3, triv):
    assert pmq_product(triv, "1", "1") == "1"
    assert pmq_product(free1, "a", "a") is None
    assert pmq_product(trans3, "(12)", "(13)") is None
    assert pmq_conj(free1, "a", "a") == "a"
    assert pmq_conj(trans3, "(12)", "(23)") == "(13)"
    assert pmq_conj(trans3, "(12)", "(12)") == "(12)"


def test_classify_examples(free1, triv):
    r = classify(free1)
    assert (r.augmented, r.complete, r.locally_finite) == (True, False, True)
    assert r.norms == {"1": 0, "a": 1}
    r = classify(triv)
    assert (r.augmented, r.complete, r.locally_finite) == (True, True, True)
    assert r.norms == {"1": 0}


def test_z2_not_locally_finite():
    r = classify(fixtures.pmq("z2"))
    assert r.complete and not r.locally_finite
    assert r.norms is None
    assert r.cycle == ("g", "g")
    with pytest.raises(NormUnavailable):
        norms_of(fixtures.pmq("z2"))


def test_s3norm_norms(s3norm):
    h = norms_of(s3norm)
    assert h["(123)"] == h["(132)"] == 2
    assert all(h[t] == 1 for t in ("(12)", "(13)", "(23)"))


def _brute_longest(spec, a, limit=6):
    """Longest factorization of a into non-units by explicit search (oracle)."""
    best = 0 if a == spec.unit else 1
    nonunit = spec.nonunit
    for n in range(2, limit + 1):
        for word in itertools.product(nonunit, repeat=n):
            acc = spec.unit
            for x in word:
                acc = spec.mul(acc, x)
                if acc is None:
                    break
            if acc == a:
                best = n
    return best


@pytest.mark.parametrize("name", ["free1", "trans3", "s3norm"])
def test_norms_match_brute_force(name):
    spec = fixtures.pmq(name)
    h = norms_of(spec)
    for a in spec.nonunit:
        assert h[a] == _brute_longest(spec, a, limit=4)


@pytest.mark.parametrize("name", ["free1", "trans3", "s3norm"])
def test_norm_superadditive(name):
    spec = fixtures.pmq(name)
    h = norms_of(spec)
    for a, b in itertools.product(spec.elements, repeat=2):
        ab = spec.mul(a, b)
        if ab is not None:
            assert h[ab] >= h[a] + h[b]


def test_sub_pmq(free1, trans3, s3norm):
    assert sub_pmq_norm_le(free1, 1) == free1
    assert sub_pmq_norm_le(trans3, 1) == trans3
    assert sub_pmq_norm_le(trans3, 0) == fixtures.pmq("triv")
    sub = sub_pmq_norm_le(s3norm, 1)
    assert set(sub.elements) == {"1", "(12)", "(13)", "(23)"}
    assert validate_pmq(sub) == []
    with pytest.raises(NormUnavailable):
        sub_pmq_norm_le(fixtures.pmq("z2"), 1)


@pytest.mark.parametrize("name", fixtures.PAIRS)
def test_bundled_pairs_valid(name):
    assert validate_pair(fixtures.pair(name)) == []


def test_pair_with_wrong_e_is_rejected(pair_trans3):
    d = pair_trans3.to_dict()
    d["e"]["(12)"] = "(13)"
    bad = PairSpec.from_dict(d)
    assert validate_pair(bad)


def test_pair_with_wrong_action_is_rejected(pair_trans3):
    d = pair_trans3.to_dict()
    d["r"]["(123)"] = {x: x for x in d["r"]["(123)"]}
    assert validate_pair(PairSpec.from_dict(d))


def test_json_round_trip(tmp_path, trans3):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(trans3.to_dict()))
    assert PmqSpec.load(p) == trans3


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(MalformedSpec):
        PmqSpec.load(p)


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(6)))
def test_classify_independent_of_element_order(perm):
    spec = fixtures.pmq("s3norm")
    d = spec.to_dict()
    d["elements"] = [d["elements"][k] for k in perm]
    assert classify(PmqSpec.from_dict(d)).norms == classify(spec).norms
