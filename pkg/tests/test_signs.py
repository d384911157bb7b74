"""Sign vector algebra: composition, separation, conformality, reorientation."""

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omprog.signs import SignVector, compose, conformal, separation

from conftest import sv


def all_vectors(n):
    return [SignVector.from_signs(signs) for signs in product((-1, 0, 1), repeat=n)]


sign_vectors6 = st.lists(
    st.sampled_from((-1, 0, 1)), min_size=6, max_size=6
).map(SignVector.from_signs)


def test_constructors_agree():
    v = SignVector.from_signs([1, 0, -1])
    assert v == sv("+0-")
    assert str(v) == "+0-"
    assert SignVector.zero(3) == sv("000")


def test_from_string_rejects_bad_characters():
    with pytest.raises(ValueError):
        SignVector.from_string("+x-")


def test_overlapping_supports_rejected():
    with pytest.raises(ValueError):
        SignVector(3, 0b011, 0b001)
    with pytest.raises(ValueError):
        SignVector(2, 0b100, 0)


def test_immutable():
    v = sv("+0-")
    with pytest.raises(AttributeError):
        v.pos = 0


def test_sign_accessors():
    v = sv("+0-")
    assert (v.sign(0), v[1], v[2]) == (1, 0, -1)
    with pytest.raises(IndexError):
        v.sign(3)
    assert v.support() == frozenset({0, 2})
    assert v.zero_set() == frozenset({1})
    assert not v.is_zero()
    assert SignVector.zero(4).is_zero()


def test_compose_examples():
    assert sv("+0-").compose(sv("0++")) == sv("++-")
    x = sv("+-0")
    assert x.compose(x) == x
    assert sv("0++").compose(sv("+-0")) == sv("+++")


def test_compose_exhaustive_small_ground():
    vecs = all_vectors(2)
    for x in vecs:
        for y in vecs:
            xy = x.compose(y)
            assert xy.zero_set() == x.zero_set() & y.zero_set()
            assert xy.zero_set() == y.compose(x).zero_set()
            assert xy.zero_set() == (-x).compose(y).zero_set()
            for z in vecs:
                assert xy.compose(z) == x.compose(y.compose(z))


@given(sign_vectors6, sign_vectors6, sign_vectors6)
def test_compose_associative_idempotent(x, y, z):
    assert x.compose(y).compose(z) == x.compose(y.compose(z))
    assert x.compose(x) == x
    assert x.compose(y).zero_mask == x.zero_mask & y.zero_mask


@given(sign_vectors6, sign_vectors6)
def test_compose_commutes_when_conformal(x, y):
    if x.conformal(y):
        assert x.compose(y) == y.compose(x)


def test_separation_examples():
    x = sv("+-0")
    assert x.separation(x) == frozenset()
    assert x.separation(-x) == x.support()
    assert sv("0--").separation(sv("+0+")) == frozenset({2})


@given(sign_vectors6, sign_vectors6)
def test_separation_symmetries(x, y):
    assert x.separation(y) == y.separation(x) == (-x).separation(-y)


def test_conformal_examples():
    x = sv("+-0")
    assert x.conformal(x)
    assert not x.conformal(-x)
    assert SignVector.zero(3).conformal(-SignVector.zero(3))
    assert sv("0++").conformal(sv("+0+"))


def test_module_level_helpers():
    x, y = sv("0++"), sv("+0+")
    assert compose(x, y) == x.compose(y)
    assert separation(x, y) == frozenset()
    assert conformal(x, y)


def test_ground_mismatch_raises():
    with pytest.raises(ValueError):
        sv("+-").compose(sv("+-0"))
    with pytest.raises(ValueError):
        sv("+-").separation(sv("+-0"))


@given(sign_vectors6, sign_vectors6)
def test_conforms_to_is_face_order(x, y):
    assert x.conforms_to(y) == (x.compose(y) == y)


def test_reorient_and_restrict():
    v = sv("+0-+")
    assert v.reorient(0b0101) == sv("-0++")
    assert v.reorient(0b0101).reorient(0b0101) == v
    assert v.restrict([3, 1]) == sv("+0")
    assert v.extend(-1) == sv("+0-+-")
    assert v.extend(0) == sv("+0-+0")


def test_canonical_representative():
    assert sv("0-+").canonical() == sv("0+-")
    assert sv("0+-").is_canonical()
    assert SignVector.zero(2).is_canonical()
    assert sorted([sv("0++"), sv("+0+"), sv("+-0")]) == [sv("+-0"), sv("+0+"), sv("0++")]
