import pytest
from hypothesis import strategies as st

from threepage.balance.balance import PageAction, page_action
from threepage.lib.settings import load_settings
from threepage.words.words import Letter, Word, parse_word

W_K = "a0 a1 b2 b0 x0 b2 d2 c1 c2"


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    """Every test starts from the bundled settings and corpus."""
    monkeypatch.delenv("THREEPAGE_CORPUS", raising=False)
    load_settings.reset()
    yield
    load_settings.reset()


@pytest.fixture
def w_k() -> Word:
    return parse_word(W_K)


def words(max_size: int = 12):
    return st.lists(st.sampled_from(list(Letter)), max_size=max_size).map(Word)


def page_balanced_words(i: int, max_leaves: int = 6):
    """Words that are balanced in page i, built as nested bracket trees."""
    bullets = [letter for letter in Letter if letter.page == i]
    opens = [letter for letter in Letter if page_action(letter, i) is PageAction.OPEN]
    closes = [letter for letter in Letter if page_action(letter, i) is PageAction.CLOSE]

    def extend(inner):
        return st.one_of(
            st.tuples(inner, inner).map(lambda pair: pair[0] + pair[1]),
            st.tuples(st.sampled_from(opens), inner, st.sampled_from(closes)).map(
                lambda t: Word([t[0]]) + t[1] + Word([t[2]])
            ),
        )

    base = st.sampled_from(bullets).map(lambda letter: Word([letter]))
    return st.recursive(base, extend, max_leaves=max_leaves)
