import logging
from enum import Enum
from typing import Iterable

from threepage.lib.exceptions import WordParseError
from threepage.lib.regex import Regex_patterns

log = logging.getLogger("words")

PAGES = (0, 1, 2)


def page_add(i: int, k: int) -> int:
    """Page index arithmetic in Z3."""
    return (i + k) % 3


def next_page(i: int) -> int:
    return (i + 1) % 3


def prev_page(i: int) -> int:
    return (i - 1) % 3


class Kind(Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    X = "x"


class Letter(Enum):
    """
    One of the fifteen letters a_i, b_i, c_i, d_i, x_i with i in Z3.

    Members are singletons and compare by identity.
    """

    a0 = (Kind.A, 0)
    a1 = (Kind.A, 1)
    a2 = (Kind.A, 2)
    b0 = (Kind.B, 0)
    b1 = (Kind.B, 1)
    b2 = (Kind.B, 2)
    c0 = (Kind.C, 0)
    c1 = (Kind.C, 1)
    c2 = (Kind.C, 2)
    d0 = (Kind.D, 0)
    d1 = (Kind.D, 1)
    d2 = (Kind.D, 2)
    x0 = (Kind.X, 0)
    x1 = (Kind.X, 1)
    x2 = (Kind.X, 2)

    @property
    def kind(self) -> Kind:
        return self.value[0]

    @property
    def page(self) -> int:
        return self.value[1]

    @classmethod
    def of(cls, kind: Kind | str, page: int) -> "Letter":
        """Letter of the given kind with subscript taken mod 3."""
        kind = Kind(kind) if isinstance(kind, str) else kind
        return cls[f"{kind.value}{page % 3}"]

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.name


class Word(tuple):
    """
    Immutable word over the alphabet; the empty word is the unit 1.

    Concatenation with ``+`` and slicing both return words.
    """

    def __new__(cls, letters: Iterable[Letter] = ()):
        return super().__new__(cls, letters)

    def __add__(self, other) -> "Word":
        return Word(tuple.__add__(self, tuple(other)))

    def __radd__(self, other) -> "Word":
        return Word(tuple(other) + tuple(self))

    def __mul__(self, n: int) -> "Word":
        return Word(tuple.__mul__(self, n))

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(tuple.__getitem__(self, item))
        return tuple.__getitem__(self, item)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word('{format_word(self)}')"

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)


EMPTY = Word()


def letters(*names: str) -> Word:
    """Build a word from letter names, e.g. letters("a0", "c0")."""
    return Word(Letter[name] for name in names)


def parse_word(text: str) -> Word:
    """
    Parse word text.

    Tokens are a kind character followed by a page digit, either separated by
    whitespace or written together ("a0c0"). The single token "1" is the
    empty word.

    Raises:
        WordParseError: on any character that is not part of a token, with
            its byte offset in the UTF-8 encoded text.
    """
    if Regex_patterns.UNIT_WORD.match(text):
        return EMPTY

    parsed = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = Regex_patterns.WORD_TOKEN.match(text, pos)
        if match is None:
            bad = text[pos : pos + 2]
            offset = len(text[:pos].encode())
            raise WordParseError(f"Malformed token '{bad}' in '{text}'", offset=offset)
        parsed.append(Letter[match.group(0)])
        pos = match.end()
    return Word(parsed)


def format_word(w: Iterable[Letter]) -> str:
    """Canonical text: lowercase, single spaces, "1" for the empty word."""
    w = tuple(w)
    if not w:
        return "1"
    return " ".join(letter.name for letter in w)


def count_x(w: Word) -> int:
    """Number of singular points encoded by the word."""
    return sum(1 for letter in w if letter.kind is Kind.X)


def power(letter: Letter, n: int) -> Word:
    return Word((letter,) * n)
