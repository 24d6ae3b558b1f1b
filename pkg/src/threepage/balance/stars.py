"""
Decomposition of i-balanced words into the seven star factors of page i.

Inside page i the letters b_{i-1} and d_{i-1} act as an open and a close
bracket and the letters of page i itself are bullets. A star is a bullet
wrapped in k matching brackets. The pipeline restricts a word to those
letters, rearranges it into a row of stars, lowers every star to depth one
and finally trades the depth-one stars around a, c and x for factors.
"""

import logging

from threepage.balance.balance import require_i_balanced
from threepage.derivations.scripts import Citation, Script
from threepage.lib.exceptions import BalanceError
from threepage.rules.rules import depth_reductions, star_factor_set
from threepage.words.words import Kind, Letter, Word, format_word, page_add

log = logging.getLogger("stars")


def _l(kind: str, page: int) -> Letter:
    return Letter.of(kind, page)


def _cite(*families: str) -> tuple[Citation, ...]:
    return tuple(Citation(f) for f in families)


def restricted_alphabet(i: int) -> frozenset[Letter]:
    """a_i, b_i, c_i, d_i, x_i, b_{i-1}, d_{i-1}"""
    m = page_add(i, -1)
    return frozenset([_l(k, i) for k in "abcdx"] + [_l("b", m), _l("d", m)])


def _substitutions(i: int) -> dict[Letter, tuple[Word, str]]:
    """Replacement and cited family for each letter outside the alphabet."""
    p, m = page_add(i, 1), page_add(i, -1)
    return {
        _l("a", m): (Word([_l("a", i), _l("d", p)]), "1"),
        _l("a", p): (Word([_l("a", i), _l("b", m)]), "28"),
        _l("c", m): (Word([_l("b", p), _l("c", i)]), "1"),
        _l("c", p): (Word([_l("d", m), _l("c", i)]), "28"),
        _l("b", p): (Word([_l("d", m), _l("d", i)]), "25"),
        _l("d", p): (Word([_l("b", i), _l("b", m)]), "26"),
        _l("x", m): (Word([_l("d", i), _l("x", p), _l("b", i)]), "2"),
        _l("x", p): (Word([_l("d", m), _l("x", i), _l("b", m)]), "2"),
    }


def _new_script(name: str, w: Word, script: Script = None) -> Script:
    if script is None:
        return Script(name, Word(w))
    return script


def restrict_to_page_alphabet(
    w: Word, i: int, script: Script = None
) -> tuple[Word, Script]:
    """
    Rewrite an i-balanced word over a_i, b_i, c_i, d_i, x_i, b_{i-1}, d_{i-1}.

    Letters are substituted left to right, one derivation step each.
    Substitutions that bring in b_{i+1}, d_{i+1} or x_{i+1} are followed up
    until no foreign letter is left.

    Args:
        w (Word): i-balanced word
        i (int): page index
        script (Script): derivation to append to, a new one if None

    Returns:
        tuple[Word, Script]: restricted word and its derivation from w

    Raises:
        BalanceError: if w is not i-balanced
    """
    require_i_balanced(w, i)
    script = _new_script(f"restrict.i{i}", w, script)

    alphabet = restricted_alphabet(i)
    table = _substitutions(i)
    current = Word(w)
    k = 0
    while k < len(current):
        letter = current[k]
        if letter in alphabet:
            k += 1
            continue
        replacement, family = table[letter]
        current = current[:k] + replacement + current[k + 1 :]
        script.then(current, *_cite(family))

    log.debug(f"Restricted to page {i}: {format_word(current)}")
    return current, script


def _check_restricted(w: Word, i: int):
    require_i_balanced(w, i)
    alphabet = restricted_alphabet(i)
    for k, letter in enumerate(w):
        if letter not in alphabet:
            raise BalanceError(
                f"Letter {letter} at {k + 1} is outside the page-{i} alphabet",
                page=i,
                position=k,
            )


def star_normalize(w: Word, i: int, script: Script = None) -> tuple[Word, Script]:
    """
    Rearrange a restricted i-balanced word into a row of stars of the same depth.

    Adjacent b_{i-1} d_{i-1} pairs are deleted first. Then, scanning left to
    right, a bullet with k opens right before it and j < k closes right after
    it gets d_{i-1}^(k-j) b_{i-1}^(k-j) inserted after those closes. Every
    deletion and every inserted pair is one step citing (4).

    Raises:
        BalanceError: if w is not i-balanced or uses letters of other pages
    """
    _check_restricted(w, i)
    script = _new_script(f"star-normalize.i{i}", w, script)

    m = page_add(i, -1)
    open_, close = _l("b", m), _l("d", m)
    current = list(w)

    # Cancel adjacent pairs until none are left
    k = 0
    while k < len(current) - 1:
        if current[k] is open_ and current[k + 1] is close:
            del current[k : k + 2]
            script.then(Word(current), *_cite("4"))
            k = max(k - 1, 0)
        else:
            k += 1

    # Split the bullets into stars
    k = 0
    while k < len(current):
        if current[k] in (open_, close):
            k += 1
            continue

        opens = 0
        while k - opens - 1 >= 0 and current[k - opens - 1] is open_:
            opens += 1
        closes = 0
        while k + closes + 1 < len(current) and current[k + closes + 1] is close:
            closes += 1

        end = k + closes + 1
        for n in range(opens - closes):
            # d^n b^n -> d^(n+1) b^(n+1), the new pair goes in the middle
            mid = end + n
            current[mid:mid] = [close, open_]
            script.then(Word(current), *_cite("4"))
        k = end + 2 * max(opens - closes, 0)

    result = Word(current)
    log.debug(f"Star form at page {i}: {format_word(result)}")
    return result, script


def _find_deep_star(w: Word, i: int) -> int | None:
    """Start of the first b_{i-1}^2 s d_{i-1}^2 with s a letter of page i."""
    m = page_add(i, -1)
    open_, close = _l("b", m), _l("d", m)
    for k in range(len(w) - 4):
        if (
            w[k] is open_
            and w[k + 1] is open_
            and w[k + 2].page == i
            and w[k + 3] is close
            and w[k + 4] is close
        ):
            return k
    return None


_REDUCTION_FAMILY = {
    Kind.A: "41",
    Kind.C: "42",
    Kind.B: "43",
    Kind.D: "44",
    Kind.X: "45",
}


def _reduce_depth(w: Word, k: int, i: int, script: Script) -> Word:
    """Rewrite the innermost two brackets of the star starting at k."""
    reductions = depth_reductions(i)
    bullet = w[k + 2]
    family = _REDUCTION_FAMILY[bullet.kind]
    _, rhs = reductions[family]
    current = w[:k] + rhs + w[k + 5 :]
    script.then(current, *_cite(family))

    if family == "45":
        # (45) leaves one deep b-star and one deep d-star behind
        _, b_rhs = reductions["43"]
        _, d_rhs = reductions["44"]
        end = k + len(rhs)
        current = current[:k] + b_rhs + current[k + 5 : end - 5] + d_rhs + current[end:]
        script.then(current, *_cite("43", "44"))
    return current


def _elimination_chain(kind: Kind, i: int) -> list[tuple[Word, tuple[Citation, ...]]]:
    """
    Steps rewriting b_{i-1} s d_{i-1} into star factors for s = a_i, c_i, x_i.

    Each entry is the word after the step and the families it cites.
    """
    p, m = page_add(i, 1), page_add(i, -1)
    b, d = _l("b", m), _l("d", m)
    a_, b_, c_, d_, x_ = (_l(k, i) for k in "abcdx")
    bp, dp = _l("b", p), _l("d", p)

    def w(*letters_):
        return Word(letters_)

    if kind is Kind.A:
        return [
            (w(d_, dp, a_, d), _cite("25")),
            (w(d_, dp, a_, b_, d_, d), _cite("4")),
            (w(d_, a_, b_, dp, d_, d), _cite("35")),
            (w(d_, a_, b_, b_, b, d_, d), _cite("26")),
        ]
    if kind is Kind.C:
        return [
            (w(b, c_, bp, b_), _cite("26")),
            (w(b, b_, d_, c_, bp, b_), _cite("4")),
            (w(b, b_, bp, d_, c_, b_), _cite("33")),
            (w(b, b_, d, d_, d_, c_, b_), _cite("25")),
        ]
    if kind is Kind.X:
        return [
            (w(b, b_, bp, dp, d_, x_, b_, d_, d), _cite("4")),
            (w(b, b_, bp, d_, x_, b_, dp, d_, d), _cite("38")),
            (w(b, b_, d, d_, d_, x_, b_, dp, d_, d), _cite("25")),
            (w(b, b_, d, d_, d_, x_, b_, b_, b, d_, d), _cite("26")),
        ]
    raise ValueError(f"No elimination for kind {kind}")


def _eliminate(w: Word, i: int, script: Script) -> Word:
    m = page_add(i, -1)
    open_, close = _l("b", m), _l("d", m)
    current = w
    k = 0
    while k <= len(current) - 3:
        inner = current[k + 1]
        if (
            current[k] is open_
            and current[k + 2] is close
            and inner.page == i
            and inner.kind in (Kind.A, Kind.C, Kind.X)
        ):
            prefix, suffix = current[:k], current[k + 3 :]
            chain = _elimination_chain(inner.kind, i)
            for step_word, citations in chain:
                script.then(prefix + step_word + suffix, *citations)
            current = prefix + chain[-1][0] + suffix
            k += len(chain[-1][0])
        else:
            k += 1
    return current


def split_factors(w: Word, i: int) -> list[Word]:
    """
    Cut a word into members of the page-i factor set.

    Raises:
        BalanceError: if some part of w is not a factor
    """
    factors = set(star_factor_set(i))
    m = page_add(i, -1)
    open_ = _l("b", m)
    out = []
    k = 0
    while k < len(w):
        size = 3 if w[k] is open_ else 1
        piece = w[k : k + size]
        if piece not in factors:
            raise BalanceError(
                f"'{format_word(piece)}' at {k + 1} is not a page-{i} star factor",
                page=i,
                position=k,
            )
        out.append(piece)
        k += size
    return out


def star_decompose(w: Word, i: int) -> tuple[list[Word], Script]:
    """
    Factor an i-balanced word into the seven page-i star factors.

    Args:
        w (Word): i-balanced word
        i (int): page index

    Returns:
        tuple[list[Word], Script]: the factors, whose concatenation is the
            last word of the derivation, and the derivation from w
    """
    script = Script(f"star-decompose.i{i}", Word(w))
    current, _ = restrict_to_page_alphabet(w, i, script)
    current, _ = star_normalize(current, i, script)

    # Lower stars one level at a time
    while (k := _find_deep_star(current, i)) is not None:
        current = _reduce_depth(current, k, i, script)
        current, _ = star_normalize(current, i, script)

    current = _eliminate(current, i, script)
    factors = split_factors(current, i)
    log.debug(
        f"Decomposed into {len(factors)} factors in {len(script)} steps: "
        + " | ".join(format_word(f) for f in factors)
    )
    return factors, script
