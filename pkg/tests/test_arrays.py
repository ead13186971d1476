import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import free1_cell_oracle, random_array
from pmqhur import fixtures
from pmqhur.arrays import (
    degeneracy_h,
    degeneracy_v,
    enumerate_cells,
    face_h,
    face_v,
    is_admissible,
    is_nondegenerate,
    make_array,
    total_product,
)
from pmqhur.completion import complete


def test_nondegeneracy_examples(tc_free1_3):
    tc = tc_free1_3
    assert is_nondegenerate(make_array(tc, 0, 0))
    assert is_nondegenerate(make_array(tc, 1, 1, {(1, 1): "a"}))
    assert not is_nondegenerate(make_array(tc, 1, 0, {(0, 0): "a"}))


def test_admissibility_examples(tc_free1_3):
    tc = tc_free1_3
    assert is_admissible(make_array(tc, 0, 0))
    assert is_admissible(make_array(tc, 1, 1, {(1, 1): "a"}))
    assert not is_admissible(make_array(tc, 1, 1, {(1, 0): "a"}))
    assert not is_admissible(make_array(tc, 1, 1, {(1, 1): "a.a"}))


def test_face_h_examples(tc_trans3_2, tc_free1_3):
    t = tc_trans3_2
    assert face_h(make_array(t, 1, 0), 0) == make_array(t, 0, 0)
    ua = make_array(t, 1, 1, {(1, 1): "(12)", (2, 0): "(23)"})
    f = face_h(ua, 1)
    assert f[1, 1] == t.letter("(13)")
    assert f[1, 0] == t.letter("(23)")
    f1 = tc_free1_3
    ua = make_array(f1, 1, 0, {(1, 0): "a"})
    f = face_h(ua, 1)
    assert (f.p, f.q) == (0, 0) and f.support == {(1, 0)} and f[1, 0] == f1.parse("a")


def test_face_v_examples(tc_free1_3):
    tc = tc_free1_3
    assert face_v(make_array(tc, 0, 1), 0) == make_array(tc, 0, 0)
    ua = make_array(tc, 1, 2, {(1, 1): "a", (1, 2): "a"})
    assert face_v(ua, 1)[1, 1] == tc.parse("a.a")


def test_degeneracy_examples(tc_free1_3):
    tc = tc_free1_3
    ua = make_array(tc, 1, 1, {(1, 1): "a"})
    for i in range(2):
        assert face_h(degeneracy_h(ua, i), i) == ua
    s = degeneracy_h(make_array(tc, 0, 0), 0)
    assert (s.p, s.q) == (1, 0) and not is_nondegenerate(s)
    assert not is_nondegenerate(degeneracy_v(ua, 0))


def test_total_product_examples(tc_free1_3, tc_trans3_2):
    assert total_product(make_array(tc_free1_3, 1, 1)) == tc_free1_3.unit
    assert total_product(make_array(tc_free1_3, 1, 1, {(0, 2): "a", (2, 0): "a"})) == tc_free1_3.parse("a.a")
    t = tc_trans3_2
    ua = make_array(t, 2, 1, {(1, 1): "(12)", (2, 1): "(23)"})
    assert total_product(ua) == t.of_word(("(12)", "(23)"))


def test_free1_a_counts(free1):
    tc = complete(free1, 1)
    cells = enumerate_cells(free1, tc, tc.parse("a"))
    assert cells.counts() == {(0, 0): 4, (0, 1): 2, (1, 0): 2, (1, 1): 1}
    assert [c for c in cells if cells.admissible[c]] == [make_array(tc, 1, 1, {(1, 1): "a"})]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_free1_counts_match_oracle(free1, n):
    tc = complete(free1, n)
    cells = enumerate_cells(free1, tc, tc.parse(".".join(["a"] * n)))
    assert cells.counts() == free1_cell_oracle(n)


def test_triv_single_cell(triv):
    tc = complete(triv, 0)
    cells = enumerate_cells(triv, tc, tc.unit)
    assert cells.counts() == {(0, 0): 1}
    assert all(cells.admissible.values())


def trans3_cell_oracle(tc, a, maxpq):
    """Brute force over all assignments of classes of norm <= h(a) to every grid position."""
    labels = [c for c in tc.classes if c.norm <= a.norm]
    found = set()
    for p in range(maxpq + 1):
        for q in range(maxpq + 1):
            n = (p + 2) * (q + 2)
            if n > 9:
                continue
            for combo in itertools.product(labels, repeat=n):
                if sum(c.norm for c in combo) != a.norm:
                    continue
                ua = make_array(tc, p, q, {(k // (q + 2), k % (q + 2)): c for k, c in enumerate(combo)})
                if is_nondegenerate(ua) and total_product(ua) == a:
                    found.add(ua)
    return found


def test_trans3_cells_match_brute_force(trans3):
    tc = complete(trans3, 1)
    a = tc.letter("(12)")
    cells = enumerate_cells(trans3, tc, a)
    assert set(cells) == trans3_cell_oracle(tc, a, 1)


@pytest.mark.parametrize("name,word,bound", [
    ("free1", "a.a", 2), ("free1", "a.a.a", 3), ("trans3", "(12).(13)", 2),
    ("s3norm", "(123)", 2), ("trans3", "(12)", 1),
])
def test_cells_closed_and_duplicate_free(name, word, bound):
    spec = fixtures.pmq(name)
    tc = complete(spec, bound)
    cells = enumerate_cells(spec, tc, tc.parse(word))
    cells.check_closure()
    listed = list(cells)
    assert len(listed) == len(set(listed))
    assert all(is_nondegenerate(c) for c in listed)
    assert all(total_product(c) == cells.component for c in listed)


# identities on random arrays -----------------------------------------------------


def _identities(ua):
    p, q = ua.p, ua.q
    total = total_product(ua)
    for i in range(p + 1):
        if p >= 1:
            assert total_product(face_h(ua, i)) == total
        for j in range(i + 1, p + 1 if p >= 2 else 0):
            assert face_h(face_h(ua, j), i) == face_h(face_h(ua, i), j - 1)
    for j in range(q + 1):
        if q >= 1:
            assert total_product(face_v(ua, j)) == total
        for k in range(j + 1, q + 1 if q >= 2 else 0):
            assert face_v(face_v(ua, k), j) == face_v(face_v(ua, j), k - 1)
    if p >= 1 and q >= 1:
        for i in range(p + 1):
            for j in range(q + 1):
                assert face_h(face_v(ua, j), i) == face_v(face_h(ua, i), j)
    for i in range(p + 1):
        s = degeneracy_h(ua, i)
        assert face_h(s, i) == ua == face_h(s, i + 1)
    for j in range(q + 1):
        s = degeneracy_v(ua, j)
        assert face_v(s, j) == ua == face_v(s, j + 1)
    if is_nondegenerate(ua):
        for i in range(p + 1 if p else 0):
            assert is_nondegenerate(face_h(ua, i))
        for j in range(q + 1 if q else 0):
            assert is_nondegenerate(face_v(ua, j))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_identities_trans3(tc_trans3_4, seed):
    _identities(random_array(random.Random(seed), tc_trans3_4))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_identities_free1(tc_free1_3, seed):
    _identities(random_array(random.Random(seed), tc_free1_3))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_identities_s3norm(tc_s3norm_3, seed):
    _identities(random_array(random.Random(seed), tc_s3norm_3))
