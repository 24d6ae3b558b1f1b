import logging
from dataclasses import dataclass
from enum import Enum

from threepage.lib.exceptions import BalanceError
from threepage.words.words import PAGES, Kind, Letter, Word, format_word, next_page

log = logging.getLogger("balance")

OPEN = "("
CLOSE = ")"
BULLET = "•"


class PageAction(Enum):
    """What an axis point contributes to the bracket picture of one page."""

    NONE = ""
    OPEN = "("
    CLOSE = ")"
    CLOSE_OPEN = ")("


def page_action(letter: Letter, page: int) -> PageAction:
    """
    Action of a letter in a page.

    A letter never touches the page of its own subscript. Kinds a, c and x act
    the same in both other pages; b and d open in one and close in the other.
    """
    s = letter.page
    if page == s:
        return PageAction.NONE

    kind = letter.kind
    if kind is Kind.A:
        return PageAction.OPEN
    if kind is Kind.C:
        return PageAction.CLOSE
    if kind is Kind.X:
        return PageAction.CLOSE_OPEN
    if kind is Kind.B:
        return PageAction.OPEN if page == next_page(s) else PageAction.CLOSE
    # Kind.D
    return PageAction.CLOSE if page == next_page(s) else PageAction.OPEN


@dataclass(frozen=True)
class BracketProfile:
    """
    Page projection of a word.

    Attributes:
        page (int): page the word was projected to
        tokens (tuple): "(", ")" and bullets in axis order
        origins (tuple): index of the letter each token came from
        dif (tuple): running #open - #close after each token
        depth (int): maximum of dif, 0 for an empty projection
    """

    page: int
    tokens: tuple
    origins: tuple
    dif: tuple
    depth: int

    @property
    def brackets(self) -> str:
        """Projection with the bullets dropped, e.g. '((()))'."""
        return "".join(t for t in self.tokens if t != BULLET)

    @property
    def mu(self) -> str:
        """Projection with bullets for the letters lying in the page itself."""
        return "".join(self.tokens)

    @property
    def net(self) -> int:
        return self.dif[-1] if self.dif else 0

    @property
    def close_deficit(self) -> int:
        return max([0] + [-d for d in self.dif])

    @property
    def first_failure(self) -> int | None:
        """
        Letter index where the projection first stops nesting, None if it nests.

        An unmatched close reports its own letter. Unclosed opens report the
        letter holding the last unmatched open.
        """
        for k, d in enumerate(self.dif):
            if d < 0:
                return self.origins[k]

        if self.net == 0:
            return None

        # Walk back to the open that is never closed
        level = 0
        for k in range(len(self.tokens) - 1, -1, -1):
            token = self.tokens[k]
            if token == CLOSE:
                level += 1
            elif token == OPEN:
                if level == 0:
                    return self.origins[k]
                level -= 1
        return None

    @property
    def is_balanced(self) -> bool:
        return all(d >= 0 for d in self.dif) and self.net == 0


def bracket_projection(w: Word, i: int) -> BracketProfile:
    """
    Project a word to page i.

    Letters of page i become bullets, the others contribute their page action.
    x letters contribute a close followed by an open.

    Args:
        w (Word): word to project
        i (int): page index

    Returns:
        BracketProfile: tokens, running difference and depth
    """
    tokens = []
    origins = []
    for k, letter in enumerate(w):
        action = page_action(letter, i)
        if action is PageAction.NONE:
            tokens.append(BULLET)
            origins.append(k)
            continue
        for ch in action.value:
            tokens.append(ch)
            origins.append(k)

    dif = []
    level = 0
    for token in tokens:
        if token == OPEN:
            level += 1
        elif token == CLOSE:
            level -= 1
        dif.append(level)

    return BracketProfile(
        page=i,
        tokens=tuple(tokens),
        origins=tuple(origins),
        dif=tuple(dif),
        depth=max([0] + dif),
    )


def is_i_balanced(w: Word, i: int) -> bool:
    return bracket_projection(w, i).is_balanced


def is_balanced(w: Word) -> bool:
    return all(is_i_balanced(w, i) for i in PAGES)


def is_almost_balanced(w: Word) -> bool:
    """1-balanced and 2-balanced, the condition for a three-page tangle."""
    return is_i_balanced(w, 1) and is_i_balanced(w, 2)


def depth(w: Word, i: int) -> int:
    return bracket_projection(w, i).depth


def net_count(w: Word, i: int) -> int:
    """Number of opens minus number of closes in the page-i projection."""
    return bracket_projection(w, i).net


def close_deficit(w: Word, i: int) -> int:
    """Largest excess of closes over opens in any prefix of the projection."""
    return bracket_projection(w, i).close_deficit


def reduced_signature(w: Word, i: int) -> tuple[int, int]:
    """
    Shape of the projection once every matched pair is cancelled.

    What is left is always ')' * m followed by '(' * n; the pair (m, n) is
    returned.
    """
    profile = bracket_projection(w, i)
    deficit = profile.close_deficit
    return deficit, profile.net + deficit


def require_i_balanced(w: Word, i: int) -> None:
    """
    Raises:
        BalanceError: naming the page and the first failing letter position.
    """
    profile = bracket_projection(w, i)
    if profile.is_balanced:
        return
    position = profile.first_failure
    raise BalanceError(
        f"'{format_word(w)}' is not {i}-balanced: projection "
        f"'{profile.brackets}' fails at letter {position + 1}",
        page=i,
        position=position,
    )


def require_balanced(w: Word) -> None:
    for i in PAGES:
        require_i_balanced(w, i)
