import itertools
from collections import Counter
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lanke.brackets import (
    SignedBracket,
    act,
    canonicalize,
    compose,
    count_canonical,
    enumerate_canonical,
    format_bracket,
    generator_count,
    is_canonical,
    leaves,
    parse_bracket,
    relabel,
)
from lanke.errors import LankeError, SizeLimitError


def ordered_shapes(j, n):
    """Ordered n-ary tree shapes with j internal nodes; leaves are None."""
    if j == 0:
        yield None
        return
    for split in _compositions(j - 1, n):
        for kids in itertools.product(*(list(ordered_shapes(s, n)) for s in split)):
            yield tuple(kids)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def fill(shape, labels):
    it = iter(labels)

    def walk(node):
        if node is None:
            return next(it)
        return tuple(walk(c) for c in node)

    return walk(shape)


def all_ordered_trees(n, k):
    m = generator_count(n, k)
    for shape in ordered_shapes(k - 1, n):
        for perm in itertools.permutations(range(1, m + 1)):
            yield fill(shape, perm)


@pytest.mark.parametrize("n, k, count", [(3, 3, 5), (3, 4, 7), (2, 5, 5), (4, 2, 4)])
def test_generator_count(n, k, count):
    assert generator_count(n, k) == count
    assert generator_count(n, k) == generator_count(k, n)


def test_generator_count_rejects_small():
    with pytest.raises(ValueError):
        generator_count(1, 3)


def test_canonicalize_examples():
    assert canonicalize(((2, 1), 3)) == SignedBracket(((1, 2), 3), -1)
    assert canonicalize((3, (1, 2))) == SignedBracket(((1, 2), 3), -1)
    # the inner-bracket-first word [[2,4,5],1,3] is the same element as
    # minus the min-leaf-ordered canonical word
    assert canonicalize(((2, 4, 5), 1, 3)) == SignedBracket((1, (2, 4, 5), 3), -1)
    assert is_canonical((1, (2, 4, 5), 3))
    assert not is_canonical(((2, 4, 5), 1, 3))


def test_canonicalize_validates():
    with pytest.raises(LankeError):
        canonicalize(((1, 2), 2))
    with pytest.raises(LankeError):
        canonicalize(((1, 2, 4), 3))


def test_act_examples():
    b = ((1, 2), 3)
    assert act((1, 2, 3), b) == SignedBracket(b, 1)
    assert act((2, 1, 3), b) == SignedBracket(b, -1)
    # (1 3): [[3,2],1] = -[[2,3],1] = +[1,[2,3]]
    assert act((3, 2, 1), b) == SignedBracket((1, (2, 3)), 1)
    with pytest.raises(LankeError):
        act((1, 1, 3), b)


@pytest.mark.parametrize("n, k", [(2, 3), (2, 4), (3, 3), (2, 5), (3, 4)])
def test_brute_force_canonicalization_matches_enumeration(n, k):
    basis = enumerate_canonical(n, k)
    assert len(basis) == count_canonical(n, k)
    assert all(is_canonical(b) for b in basis)
    if generator_count(n, k) > 7:
        pytest.skip("brute force only for m <= 7")
    orbit = Counter(canonicalize(t).word for t in all_ordered_trees(n, k))
    assert set(orbit) == set(basis)
    # leaves are distinct, so every orbit under node-wise reordering is free
    assert set(orbit.values()) == {factorial(n) ** (k - 1)}


@pytest.mark.parametrize("n", range(2, 7))
def test_k3_basis_size(n):
    assert count_canonical(n, 3) == comb(2 * n - 1, n)


def test_small_bases():
    assert len(enumerate_canonical(2, 3)) == 3
    assert len(enumerate_canonical(3, 3)) == 10
    assert len(enumerate_canonical(2, 4)) == 15
    assert count_canonical(3, 5) == 15400
    with pytest.raises(SizeLimitError):
        enumerate_canonical(3, 5, max_size=1000)


def test_basis_order_is_deterministic():
    assert enumerate_canonical(2, 3) == [((1, 2), 3), ((1, 3), 2), (1, (2, 3))]
    assert enumerate_canonical(3, 4) == enumerate_canonical(3, 4)


@st.composite
def trees(draw, n=3, k=4):
    basis = enumerate_canonical(n, k)
    return basis[draw(st.integers(0, len(basis) - 1))]


perms7 = st.permutations(list(range(1, 8))).map(tuple)


@settings(max_examples=150, deadline=None)
@given(trees(), perms7, perms7)
def test_group_action_law(b, sigma, tau):
    w1, s1 = act(tau, b)
    w2, s2 = act(sigma, w1)
    w3, s3 = act(compose(sigma, tau), b)
    assert w2 == w3
    assert s1 * s2 == s3


@settings(max_examples=100, deadline=None)
@given(trees(), perms7)
def test_canonicalize_is_idempotent_and_sign_is_a_parity(b, sigma):
    w, s = canonicalize(relabel(b, sigma))
    assert canonicalize(w) == SignedBracket(w, 1)
    assert s in (1, -1)
    assert sorted(leaves(w)) == list(range(1, 8))


@settings(max_examples=100, deadline=None)
@given(trees(n=2, k=5), st.permutations([1, 2, 3, 4, 5]).map(tuple))
def test_parse_format_roundtrip(b, sigma):
    t = relabel(b, sigma)
    text = format_bracket(t)
    assert parse_bracket(text) == t
    assert parse_bracket(text.replace(",", ", ")) == t


def test_parse_errors():
    for bad in ["[1,", "[1,1]", "[[1,2,3],4]", "[True,2]", "'x'"]:
        with pytest.raises(LankeError):
            parse_bracket(bad)
