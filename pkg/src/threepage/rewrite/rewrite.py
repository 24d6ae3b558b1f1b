import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

from threepage.derivations.scripts import Citation, Script
from threepage.lib.exceptions import StepError
from threepage.rules.rules import Relation
from threepage.words.words import Kind, Word, format_word

log = logging.getLogger("rewrite")


@dataclass(frozen=True)
class RewriteStep:
    """
    One application of a relation: the source side found at ``position`` is
    replaced by the other side. ``forward`` rewrites lhs to rhs.
    """

    position: int
    relation: Relation
    forward: bool = True

    @property
    def source(self) -> Word:
        return self.relation.lhs if self.forward else self.relation.rhs

    @property
    def target(self) -> Word:
        return self.relation.rhs if self.forward else self.relation.lhs

    def flipped(self) -> "RewriteStep":
        return RewriteStep(self.position, self.relation, not self.forward)

    def citation(self) -> Citation:
        return citation_for(self.relation)

    def __str__(self) -> str:
        arrow = "->" if self.forward else "<-"
        return f"{self.relation.name} {arrow} @{self.position}"


def citation_for(relation: Relation) -> Citation:
    """Script citation of a relation, with its witness if it was instantiated."""
    cert = relation.certificate
    if cert is None:
        return Citation(relation.family)
    return Citation(relation.family, cert.witness, cert.page)


def apply_step(w: Word, step: RewriteStep) -> Word:
    """
    Raises:
        StepError: if the source side does not occur at the step position.
    """
    source = step.source
    k = step.position
    if k < 0 or k + len(source) > len(w) or tuple(w[k : k + len(source)]) != source:
        raise StepError(
            f"{step.relation.name}: '{format_word(source)}' does not occur at "
            f"position {k} of '{format_word(w)}'"
        )
    return w[:k] + step.target + w[k + len(source) :]


def neighbours(
    w: Word, relations: Sequence[Relation], max_length: int = None
) -> Iterator[tuple[Word, RewriteStep]]:
    """
    Every word one relation application away from w.

    Relations are tried in the order given, each forward and then backward,
    positions ascending. An empty source side matches at every position
    0..len(w). Results longer than ``max_length`` are skipped.
    """
    letters_ = tuple(w)
    n = len(letters_)
    for relation in relations:
        for forward in (True, False):
            source = relation.lhs if forward else relation.rhs
            target = relation.rhs if forward else relation.lhs
            size = len(source)
            if max_length is not None and n - size + len(target) > max_length:
                continue
            for k in range(n - size + 1):
                if letters_[k : k + size] == source:
                    yield (
                        Word(letters_[:k] + tuple(target) + letters_[k + size :]),
                        RewriteStep(k, relation, forward),
                    )


def _cancellation_at(letters_: tuple, k: int) -> tuple[int, str] | None:
    """Length and family of a cancelling factor starting at k."""
    first = letters_[k]
    if k + 1 < len(letters_):
        second = letters_[k + 1]
        if (
            first.page == second.page
            and {first.kind, second.kind} == {Kind.B, Kind.D}
        ):
            return 2, "4"
    if k + 2 < len(letters_) and first.kind is Kind.D and first.page == 0:
        second, third = letters_[k + 1], letters_[k + 2]
        if (
            second.kind is Kind.D
            and second.page == 1
            and third.kind is Kind.D
            and third.page == 2
        ):
            return 3, "3"
    return None


def cancellation_moves(w: Word) -> tuple[Word, list[tuple[Word, tuple[Citation, ...]]]]:
    """
    Delete b_i d_i, d_i b_i and d_0 d_1 d_2 until none are left.

    The leftmost cancelling factor goes first; at one position a pair wins
    over the triple.

    Returns:
        tuple: the reduced word and the intermediate words with citations
    """
    letters_ = list(w)
    moves = []
    k = 0
    while k < len(letters_):
        found = _cancellation_at(letters_, k)
        if found is None:
            k += 1
            continue
        size, family = found
        del letters_[k : k + size]
        moves.append((Word(letters_), (Citation(family),)))
        k = max(k - 2, 0)
    return Word(letters_), moves


def cancel_normalize(w: Word) -> tuple[Word, Script]:
    """
    Delete cancelling factors until the word is free of them.

    Returns:
        tuple[Word, Script]: the reduced word and its derivation from w
    """
    reduced, moves = cancellation_moves(w)
    script = Script("cancel", Word(w))
    for word, citations in moves:
        script.then(word, *citations)
    return reduced, script


def reverse_moves(origin: Word, moves: list) -> list:
    """
    Moves leading from the last word of ``moves`` back to ``origin``.

    Every relation is two-sided, so the citations carry over unchanged.
    """
    words = [origin] + [word for word, _ in moves]
    return [(words[k], moves[k][1]) for k in range(len(moves) - 1, -1, -1)]
