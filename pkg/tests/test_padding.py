import pytest
from hypothesis import given

from conftest import W_K, words
from threepage.balance.balance import is_almost_balanced, is_balanced, net_count
from threepage.rules.rules import RuleSet, enumerate_rules
from threepage.tangles.padding import (
    almost_balance_pad,
    balanced_host,
    boundary_context,
    closure_context,
    embedding_context,
    knot_closure_pad,
)
from threepage.words.words import EMPTY, PAGES, format_word, parse_word


@pytest.mark.parametrize(
    "text, expected",
    [
        ("a0", "a0 b2 d1"),
        (W_K, W_K),
        ("", ""),
    ],
)
def test_almost_balance_pad(text, expected):
    assert almost_balance_pad(parse_word(text)) == parse_word(expected)


def test_boundary_context_of_single_letter():
    u, v = boundary_context(parse_word("a0"))
    assert u == EMPTY
    assert format_word(v) == "b2 d1"


@given(words())
def test_almost_balance_pad_always_almost_balanced(w):
    assert is_almost_balanced(almost_balance_pad(w))


@pytest.mark.parametrize(
    "text, l, expected",
    [
        ("", 1, "a0 a1 c1 c0"),
        ("b0 d0", 1, "a0 a1 b0 d0 c1 c0"),
        ("a0 c0", 0, "a0 c0"),
        ("", 2, "a0 a0 a1 a1 c1 c1 c0 c0"),
    ],
)
def test_knot_closure_pad(text, l, expected):
    padded = knot_closure_pad(parse_word(text), l)
    assert padded == parse_word(expected)
    assert is_balanced(padded)


def test_closure_depth_must_be_non_negative():
    with pytest.raises(ValueError, match="non-negative"):
        closure_context(-1)


def test_balanced_host_for_one_letter_sides():
    # a0 = a1 d2 needs no prefix; one c0 closes both sides
    u, v = balanced_host(parse_word("a0"), parse_word("a1 d2"))
    assert u == EMPTY
    assert format_word(v) == "c0"
    assert is_balanced(u + parse_word("a1 d2") + v)


def test_balanced_host_needs_matching_counts():
    assert balanced_host(parse_word("a0"), parse_word("c0")) is None


@given(words(max_size=8))
def test_balanced_host_balances_any_word(w):
    u, v = balanced_host(w, w)
    assert is_balanced(u + w + v)


def test_embedding_context_prefers_smallest_closure():
    u, v = embedding_context(parse_word("a0 c0"), parse_word("a1 c1"))
    assert (u, v) == closure_context(0)

    u, v = embedding_context(parse_word("b0 d0"), EMPTY)
    assert (u, v) == closure_context(1)

    u, v = embedding_context(parse_word("c1 a1"), parse_word("c1 a1"))
    assert (u, v) == closure_context(1)


@pytest.mark.parametrize("ruleset", [RuleSet.SK, RuleSet.FG, RuleSet.DERIVED])
def test_every_relation_has_an_embedding_context(ruleset):
    for relation in enumerate_rules(ruleset):
        assert [net_count(relation.lhs, p) for p in PAGES] == [
            net_count(relation.rhs, p) for p in PAGES
        ], relation.name
        context = embedding_context(relation.lhs, relation.rhs)
        assert context is not None, relation.name
        u, v = context
        assert is_balanced(u + relation.lhs + v), relation.name
        assert is_balanced(u + relation.rhs + v), relation.name
