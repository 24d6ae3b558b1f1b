import logging

from threepage.balance.balance import (
    bracket_projection,
    close_deficit,
    is_balanced,
    net_count,
)
from threepage.words.words import PAGES, Letter, Word, format_word, power

log = logging.getLogger("padding")

# A context (u, v) places a word w as u w v
Context = tuple[Word, Word]


def boundary_context(w: Word) -> Context:
    """
    (b1^n2 d2^n1, b2^m1 d1^m2) where n_p is the close-deficit of the page-p
    projection of w and m_p what is left open at its end.
    """
    deficit = {}
    surplus = {}
    for p in (1, 2):
        profile = bracket_projection(w, p)
        deficit[p] = profile.close_deficit
        surplus[p] = profile.net + profile.close_deficit
    log.debug(
        f"Boundary of {format_word(w)}: n1={deficit[1]} n2={deficit[2]} "
        f"m1={surplus[1]} m2={surplus[2]}"
    )
    return (
        power(Letter.b1, deficit[2]) + power(Letter.d2, deficit[1]),
        power(Letter.b2, surplus[1]) + power(Letter.d1, surplus[2]),
    )


def almost_balance_pad(w: Word) -> Word:
    """
    Close off the page-1 and page-2 boundary arcs of a tangle word.

    The result b1^n2 d2^n1 w b2^m1 d1^m2 is 1-balanced and 2-balanced.
    """
    u, v = boundary_context(w)
    return u + Word(w) + v


def closure_context(l: int) -> Context:
    """(a0^l a1^l, c1^l c0^l)"""
    if l < 0:
        raise ValueError(f"Padding depth must be non-negative, got {l}")
    return (
        power(Letter.a0, l) + power(Letter.a1, l),
        power(Letter.c1, l) + power(Letter.c0, l),
    )


def knot_closure_pad(w: Word, l: int) -> Word:
    """a0^l a1^l w c1^l c0^l"""
    u, v = closure_context(l)
    return u + Word(w) + v


def balanced_host(lhs: Word, rhs: Word) -> Context | None:
    """
    Prefix u and suffix v with u lhs v and u rhs v both balanced.

    u = a0^h a1^h a2^h opens M = 2h arcs in every page, enough to absorb the
    close-deficits of both sides. v closes what is then left open with c2, c1
    and c0 letters. Sides whose page bracket counts differ have no common host.

    Returns:
        Context | None: (u, v), or None if the counts differ
    """
    nets = [net_count(lhs, p) for p in PAGES]
    if nets != [net_count(rhs, p) for p in PAGES]:
        return None

    n0, n1, n2 = nets
    m = max(
        [close_deficit(side, p) for side in (lhs, rhs) for p in PAGES]
        + [n0 - n1 - n2, n1 - n0 - n2, n2 - n0 - n1, 0]
    )
    m += m % 2
    h = m // 2

    # Arcs still open in each page after u and one side
    c0, c1, c2 = (m + n for n in nets)
    alpha = (c1 + c2 - c0) // 2
    beta = (c0 + c2 - c1) // 2
    gamma = (c0 + c1 - c2) // 2

    u = power(Letter.a0, h) + power(Letter.a1, h) + power(Letter.a2, h)
    v = power(Letter.c2, gamma) + power(Letter.c1, beta) + power(Letter.c0, alpha)
    return u, v


def _fits(context: Context, lhs: Word, rhs: Word) -> bool:
    u, v = context
    return is_balanced(u + lhs + v) and is_balanced(u + rhs + v)


def embedding_context(lhs: Word, rhs: Word, max_pad: int = 8) -> Context | None:
    """
    A common context in which both sides become balanced words.

    Tried in order: the knot closure for l = 0..max_pad; the knot closure
    around the boundary context of lhs; the balanced host.
    """
    lhs, rhs = Word(lhs), Word(rhs)
    for l in range(max_pad + 1):
        context = closure_context(l)
        if _fits(context, lhs, rhs):
            return context

    pre, post = boundary_context(lhs)
    for l in range(max_pad + 1):
        u, v = closure_context(l)
        context = (u + pre, post + v)
        if _fits(context, lhs, rhs):
            return context

    host = balanced_host(lhs, rhs)
    if host is not None and _fits(host, lhs, rhs):
        return host
    return None
