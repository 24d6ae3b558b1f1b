import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import words
from threepage.balance.balance import (
    PageAction,
    bracket_projection,
    close_deficit,
    depth,
    is_almost_balanced,
    is_balanced,
    is_i_balanced,
    net_count,
    page_action,
    reduced_signature,
    require_balanced,
    require_i_balanced,
)
from threepage.lib.exceptions import BalanceError
from threepage.words.words import EMPTY, Letter, PAGES, parse_word


def counter_tokens(w, i) -> str:
    out = ""
    for letter in w:
        s, kind = letter.page, letter.kind.value
        if s == i:
            continue
        upper = i == (s + 1) % 3
        out += {
            "a": "(",
            "c": ")",
            "x": ")(",
            "b": "(" if upper else ")",
            "d": ")" if upper else "(",
        }[kind]
    return out


def counter_balanced(w, i) -> bool:
    level = 0
    for ch in counter_tokens(w, i):
        level += 1 if ch == "(" else -1
        if level < 0:
            return False
    return level == 0


def test_page_actions():
    assert page_action(Letter.a0, 0) is PageAction.NONE
    assert page_action(Letter.b0, 1) is PageAction.OPEN
    assert page_action(Letter.b0, 2) is PageAction.CLOSE
    assert page_action(Letter.d0, 1) is PageAction.CLOSE
    assert page_action(Letter.d0, 2) is PageAction.OPEN
    assert page_action(Letter.x1, 0) is PageAction.CLOSE_OPEN


def test_w_k_projections(w_k):
    assert bracket_projection(w_k, 0).brackets == "((()))"
    assert bracket_projection(w_k, 1).brackets == "()()()()"
    assert bracket_projection(w_k, 0).mu == "•((••()))"
    assert depth(w_k, 0) == 3
    assert is_balanced(w_k)


def test_empty_projection():
    for i in PAGES:
        profile = bracket_projection(EMPTY, i)
        assert profile.tokens == ()
        assert profile.depth == 0
        assert profile.is_balanced


def test_depth_of_star():
    w = parse_word("b2 b2 a0 d2 d2")
    assert bracket_projection(w, 0).mu == "((•))"
    assert depth(w, 0) == 2


def test_i_balanced_examples():
    assert is_i_balanced(parse_word("a0 c0"), 1)
    assert not is_i_balanced(parse_word("d2 c2 a2 b2"), 0)
    assert is_i_balanced(EMPTY, 2)
    assert is_balanced(parse_word("a0 c0"))
    assert not is_balanced(parse_word("d2 c2 a2 b2"))


def test_almost_balanced():
    assert is_almost_balanced(parse_word("a0 b2 d1"))
    assert not is_balanced(parse_word("a0 b2 d1"))


def test_counts_and_signature():
    w = parse_word("d2 c2 a2 b2")
    assert bracket_projection(w, 0).brackets == "))(("
    assert net_count(w, 0) == 0
    assert close_deficit(w, 0) == 2
    assert reduced_signature(w, 0) == (2, 2)
    assert reduced_signature(parse_word("a0"), 1) == (0, 1)


def test_first_failure_close():
    with pytest.raises(BalanceError) as err:
        require_i_balanced(parse_word("a0 c0 c0 a0"), 1)
    assert err.value.page == 1
    assert err.value.position == 2
    assert "letter 3" in str(err.value)


def test_first_failure_unclosed():
    with pytest.raises(BalanceError) as err:
        require_balanced(parse_word("a0"))
    assert err.value.page == 1
    assert err.value.position == 0


@given(words(), st.sampled_from(PAGES))
def test_balance_agrees_with_counter(w, i):
    assert is_i_balanced(w, i) == counter_balanced(w, i)
    assert bracket_projection(w, i).brackets == counter_tokens(w, i)


@given(words(), words(), st.sampled_from(PAGES))
def test_net_count_is_additive(u, v, i):
    assert net_count(u + v, i) == net_count(u, i) + net_count(v, i)


@given(words(), st.sampled_from(PAGES))
def test_signature_shape(w, i):
    deficit, surplus = reduced_signature(w, i)
    assert deficit >= 0 and surplus >= 0
    assert surplus - deficit == net_count(w, i)
    assert (deficit, surplus) == (0, 0) or not is_i_balanced(w, i)
