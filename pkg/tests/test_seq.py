import random

import pytest
from hypothesis import given, strategies as st

from ordsemi.errors import ParseError
from ordsemi.ordinal import OMEGA, ONE, ZERO, add, compare, nat, parse
from ordsemi.seq import (
    Concat,
    Single,
    at,
    concat,
    flatten,
    format_regrouping,
    format_tree,
    length,
    letters,
    limit_decompose,
    map_letters,
    normalize_concat,
    omega_repeat,
    parse_regrouping,
    parse_tree,
    pointwise_equal,
    probe_indices,
    random_below,
    repeat,
    single,
    slice_tree,
    split,
)

from conftest import trees
from oracles import from_ordinal, is_finite_tree, prefix, sequence_length

a, b, c = single("a"), single("b"), single("c")
AB = concat([a, b])


def test_construction_lengths():
    assert a.length == 1
    assert concat([a, b]).length == 2
    assert omega_repeat(AB).length == OMEGA


def test_concat_needs_two_children():
    with pytest.raises(ValueError):
        concat([a])
    with pytest.raises(ValueError):
        concat([])


def test_length_examples():
    assert length(omega_repeat(a)) == OMEGA
    assert length(omega_repeat(omega_repeat(a))) == parse("w^2")
    assert length(concat([omega_repeat(a), b, b])) == parse("w + 2")


def test_at_examples():
    assert at(a, 0) == "a"
    assert at(concat([omega_repeat(a), b]), OMEGA) == "b"
    assert at(omega_repeat(AB), 5) == "b"
    with pytest.raises(IndexError):
        at(AB, 2)


def test_split_examples():
    assert split(AB, 1) == (a, b)
    left, right = split(omega_repeat(a), 2)
    assert left == concat([a, a])
    assert right.length == OMEGA
    left, right = split(omega_repeat(AB), 3)
    assert [at(left, i) for i in range(3)] == list("aba")
    assert right.length == OMEGA
    assert prefix(right, 7) == list("babababab"[:7])
    with pytest.raises(IndexError):
        split(AB, 0)
    with pytest.raises(IndexError):
        split(AB, 2)


def test_split_at_limit_point():
    t = concat([omega_repeat(a), b, omega_repeat(c)])
    left, right = split(t, add(OMEGA, ONE))
    assert left == concat([omega_repeat(a), b])
    assert right == omega_repeat(c)


def test_limit_decompose_examples():
    assert limit_decompose(omega_repeat(a)) == (None, a)
    assert limit_decompose(concat([b, omega_repeat(a)])) == (b, a)
    p, w = limit_decompose(concat([omega_repeat(a), omega_repeat(concat([b, c]))]))
    assert p == omega_repeat(a)
    assert w == concat([b, c])
    with pytest.raises(ValueError):
        limit_decompose(concat([omega_repeat(a), b]))


def test_flatten_examples():
    t = concat([a, omega_repeat(b)])
    assert flatten(single(t)) == t
    assert flatten(concat([single(a), single(t)])) == concat([a, t])
    assert flatten(omega_repeat(single(AB))) == omega_repeat(AB)
    with pytest.raises(TypeError):
        flatten(single("a"))


def test_repeat_and_slice():
    assert repeat(a, 1) == a
    assert repeat(a, 3).length == 3
    t = omega_repeat(AB)
    s = slice_tree(t, nat(1), nat(4))
    assert [at(s, i) for i in range(3)] == list("bab")
    assert slice_tree(t, ZERO) == t
    with pytest.raises(IndexError):
        slice_tree(t, nat(3), nat(3))


def test_letters_and_map():
    t = concat([b, omega_repeat(concat([a, b])), c])
    assert list(letters(t)) == ["b", "a", "c"]
    assert map_letters(t, str.upper) == concat([single("B"), omega_repeat(concat([single("A"), single("B")])), single("C")])


def test_normalize_concat_preserves_sequence():
    t = Concat((Concat((a, b)), Concat((c, omega_repeat(a)))))
    n = normalize_concat(t)
    assert n == Concat((a, b, c, omega_repeat(a)))
    assert pointwise_equal(t, n)


# -- text form ----------------------------------------------------------------


def test_parse_tree_grammar():
    t = parse_tree("(a b)^w c")
    assert t == concat([omega_repeat(AB), c])
    assert parse_tree("a^3") == concat([a, a, a])
    assert parse_tree("a^w^w") == omega_repeat(omega_repeat(a))
    assert parse_tree("a^ω") == omega_repeat(a)
    assert parse_tree("[w^2] one").children[0] == Single("[w^2]")


@pytest.mark.parametrize("text", ["", "a (", "a)", "a^1", "a^0", "^w", "()"])
def test_parse_tree_errors(text):
    with pytest.raises(ParseError):
        parse_tree(text)


def test_regrouping_text():
    g = parse_regrouping("{a b} {c}^w")
    assert flatten(g) == concat([AB, omega_repeat(c)])
    assert parse_regrouping(format_regrouping(g)) == g


@given(trees())
def test_format_parse_round_trip(t):
    assert parse_tree(format_tree(t)) == t


# -- properties against the oracles ------------------------------------------


@given(trees())
def test_length_matches_oracle(t):
    assert from_ordinal(t.length) == sequence_length(t)


@given(trees())
def test_at_matches_finite_prefix(t):
    n = 12
    expected = prefix(t, n)
    assert [at(t, i) for i in range(len(expected))] == expected
    if is_finite_tree(t) and len(expected) < n:
        assert t.length == len(expected)


@given(trees(), st.integers(0, 2**32))
def test_split_pointwise(t, seed):
    if t.length == 1:
        return
    rng = random.Random(seed)
    beta = random_below(rng, t.length)
    if not beta.terms:
        return
    left, right = split(t, beta)
    assert left.length == beta
    assert add(left.length, right.length) == t.length
    assert pointwise_equal(Concat((left, right)), t)


@given(trees(), st.integers(0, 2**32))
def test_split_positions_exact(t, seed):
    # positions on either side of the cut read through to the original
    if t.length == 1:
        return
    rng = random.Random(seed)
    beta = random_below(rng, t.length)
    if not beta.terms:
        return
    left, right = split(t, beta)
    for i in probe_indices(left, n_random=4, seed=seed):
        assert at(left, i) == at(t, i)
    for i in probe_indices(right, n_random=4, seed=seed):
        assert at(right, i) == at(t, add(beta, i))


@given(trees())
def test_limit_decompose_reassembles(t):
    if not t.length.is_limit():
        return
    p, w = limit_decompose(t)
    rebuilt = omega_repeat(w) if p is None else Concat((p, omega_repeat(w)))
    assert rebuilt.length == t.length
    assert pointwise_equal(rebuilt, t)


def test_pointwise_equal_detects_difference():
    assert not pointwise_equal(omega_repeat(AB), omega_repeat(concat([b, a])))
    assert pointwise_equal(omega_repeat(AB), Concat((a, omega_repeat(concat([b, a])))))
    assert not pointwise_equal(omega_repeat(a), concat([omega_repeat(a), a]))


def test_random_below_is_below():
    rng = random.Random(0)
    for x in [ONE, OMEGA, parse("w^3*2 + w + 4"), parse("w^(w) + 1")]:
        for _ in range(200):
            assert compare(random_below(rng, x), x) < 0
    with pytest.raises(ValueError):
        random_below(rng, ZERO)
