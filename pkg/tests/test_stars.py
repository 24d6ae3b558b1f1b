import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import page_balanced_words
from threepage.balance.balance import depth, is_i_balanced
from threepage.balance.stars import (
    _find_deep_star,
    _reduce_depth,
    restrict_to_page_alphabet,
    restricted_alphabet,
    split_factors,
    star_decompose,
    star_normalize,
)
from threepage.derivations.checker import check_script
from threepage.lib.exceptions import BalanceError
from threepage.rules.rules import star_factor_set
from threepage.words.words import EMPTY, PAGES, Word, letters, parse_word


def test_restrict_a_next_page():
    w, script = restrict_to_page_alphabet(parse_word("a1 c1"), 0)
    assert w == parse_word("a0 b2 d2 c0")
    assert [str(c) for step in script.steps for c in step.citations] == ["(28)", "(28)"]


def test_restrict_x_expands_twice():
    w, script = restrict_to_page_alphabet(parse_word("a1 x2 c1"), 0)
    assert parse_word("d0 d2 x0 b2 b0") == w[2:7]
    assert w == parse_word("a0 b2 d0 d2 x0 b2 b0 d2 c0")
    assert len(script) == 4


def test_restrict_fixpoint():
    w, script = restrict_to_page_alphabet(parse_word("a0"), 0)
    assert w == parse_word("a0")
    assert len(script) == 0


def test_restrict_requires_balance():
    with pytest.raises(BalanceError):
        restrict_to_page_alphabet(parse_word("a1"), 0)


def test_star_normalize_cancels():
    w, script = star_normalize(parse_word("b2 d2 a0"), 0)
    assert w == parse_word("a0")
    assert len(script) == 1


def test_star_normalize_inserts_after_short_star():
    w, _ = star_normalize(parse_word("b2 b2 a0 d2 b0 d2"), 0)
    assert w == parse_word("b2 b2 a0 d2 d2 b2 b0 d2")


def test_star_normalize_leaves_stars():
    w = parse_word("b2 a0 d2 b2 b2 c0 d2 d2")
    assert star_normalize(w, 0)[0] == w


def test_star_normalize_rejects_foreign_letters():
    with pytest.raises(BalanceError):
        star_normalize(parse_word("a1 c1"), 0)


def test_decompose_single_factor():
    factors, script = star_decompose(parse_word("a0"), 0)
    assert factors == [parse_word("a0")]
    assert len(script) == 0


def test_decompose_deep_star_first_step():
    factors, script = star_decompose(parse_word("b2 b2 a0 d2 d2"), 0)
    assert parse_word("b2 a0 d2 d0 d0 b2 b0 d2 b0") in script.words
    assert str(script.steps[0].citations[0]) == "(41)"
    assert sum(factors, EMPTY) == script.end


def test_decompose_empty():
    factors, _ = star_decompose(EMPTY, 1)
    assert factors == []


def test_split_factors():
    w = parse_word("d0 b2 d0 d2 a0")
    assert split_factors(w, 0) == [
        parse_word("d0"),
        parse_word("b2 d0 d2"),
        parse_word("a0"),
    ]
    with pytest.raises(BalanceError):
        split_factors(parse_word("b2 a0 d2"), 0)


@pytest.mark.parametrize("i", PAGES)
def test_decomposition_of_w_k_checks(w_k, i):
    factors, script = star_decompose(w_k, i)
    assert all(f in star_factor_set(i) for f in factors)
    assert sum(factors, EMPTY) == script.end
    assert check_script(script).passed


@pytest.mark.parametrize("i", PAGES)
def test_deep_x_star_checks(i):
    b, d = f"b{(i - 1) % 3}", f"d{(i - 1) % 3}"
    w = letters(b, b, f"x{i}", d, d)
    factors, script = star_decompose(w, i)
    assert all(f in star_factor_set(i) for f in factors)
    assert check_script(script).passed


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PAGES).flatmap(lambda i: st.tuples(st.just(i), page_balanced_words(i))))
def test_restrict_keeps_balance(case):
    i, w = case
    restricted, script = restrict_to_page_alphabet(w, i)
    assert set(restricted) <= restricted_alphabet(i)
    assert is_i_balanced(restricted, i)
    assert script.start == w and script.end == restricted


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PAGES).flatmap(lambda i: st.tuples(st.just(i), page_balanced_words(i))))
def test_decompose_yields_factors(case):
    i, w = case
    factors, script = star_decompose(w, i)
    assert all(isinstance(f, Word) and f in star_factor_set(i) for f in factors)
    assert sum(factors, EMPTY) == script.end
    assert script.start == w
    assert check_script(script).passed


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PAGES).flatmap(lambda i: st.tuples(st.just(i), page_balanced_words(i))))
def test_star_normalize_keeps_depth(case):
    i, w = case
    restricted, _ = restrict_to_page_alphabet(w, i)
    normalized, script = star_normalize(restricted, i)
    assert depth(normalized, i) == depth(restricted, i)
    assert check_script(script).passed


@pytest.mark.parametrize("i", PAGES)
@pytest.mark.parametrize("kind", "abcdx")
@pytest.mark.parametrize("k", [2, 3, 4])
def test_depth_reduction_lowers_one_level_at_a_time(i, kind, k):
    m = (i - 1) % 3
    w = letters(*[f"b{m}"] * k, f"{kind}{i}", *[f"d{m}"] * k)
    current, script = star_normalize(w, i)
    levels = [depth(current, i)]
    while (start := _find_deep_star(current, i)) is not None:
        current = _reduce_depth(current, start, i, script)
        current, _ = star_normalize(current, i, script)
        levels.append(depth(current, i))

    assert levels[0] == k
    assert levels[-1] == 1
    assert all(before - after in (0, 1) for before, after in zip(levels, levels[1:]))
    assert check_script(script).passed
