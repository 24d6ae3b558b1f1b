import logging
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from threepage.balance.balance import is_balanced, net_count
from threepage.derivations.scripts import Citation, Script
from threepage.lib.settings import load_settings
from threepage.rewrite.rewrite import (
    RewriteStep,
    cancellation_moves,
    neighbours,
    reverse_moves,
)
from threepage.rules.rules import RuleSelection
from threepage.words.words import PAGES, Word, count_x, format_word

log = logging.getLogger("search")

# A move is the word reached together with the citations justifying it
Move = tuple[Word, tuple[Citation, ...]]


@dataclass(frozen=True)
class SearchBudget:
    """
    Limits of one search. ``max_length`` None means the longer input plus the
    configured slack; ``max_depth`` None leaves the depth unbounded.
    """

    selection: RuleSelection = field(default_factory=RuleSelection)
    max_length: int = None
    max_nodes: int = None
    max_depth: int = None

    def __post_init__(self):
        for name in ("max_length", "max_nodes", "max_depth"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"Budget {name} must be positive, got {value}")

    def resolve_length(self, *words: Word) -> int:
        if self.max_length is not None:
            return self.max_length
        slack = load_settings().search.length_slack
        return max(len(w) for w in words) + slack

    def resolve_nodes(self) -> int:
        if self.max_nodes is not None:
            return self.max_nodes
        return load_settings().search.max_nodes


@dataclass(frozen=True)
class Proved:
    derivation: Script
    expanded: int

    @property
    def steps(self) -> int:
        return len(self.derivation)


@dataclass(frozen=True)
class Unknown:
    """Search gave up. This is never a proof of inequivalence."""

    reason: str
    expanded: int = 0
    discovered: int = 0


@dataclass(frozen=True)
class BalancedWitness:
    word: Word
    derivation: Script
    expanded: int = 0


# ================================================================
# Bidirectional breadth-first search
# ================================================================


class _Side:
    def __init__(self, root: Hashable):
        # state -> (parent state, edge) ; the root maps to None
        self.parents = {root: None}
        self.frontier = [root]
        self.depth = 0

    def path_to(self, state) -> list[tuple]:
        """(parent, edge, child) triples from the root down to ``state``."""
        path = []
        while self.parents[state] is not None:
            parent, edge = self.parents[state]
            path.append((parent, edge, state))
            state = parent
        path.reverse()
        return path


@dataclass
class SearchOutcome:
    meet: Hashable
    forward: _Side
    backward: _Side
    expanded: int
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.meet is not None

    @property
    def discovered(self) -> int:
        return len(self.forward.parents) + len(self.backward.parents)


def bidirectional_search(
    start: Hashable,
    goal: Hashable,
    expand: Callable[[Hashable], Iterable[tuple[Hashable, object]]],
    max_nodes: int,
    max_depth: int = None,
    sort_layers: bool = False,
) -> SearchOutcome:
    """
    Grow breadth-first trees from both ends until they touch.

    The side with the smaller frontier expands a whole layer at a time, its
    states shortest first when ``sort_layers`` is set (states then need a
    length). A meeting is noticed as soon as a state is discovered.
    ``max_nodes`` caps the number of expanded states; ``max_depth`` caps the
    summed depth of both trees.

    Args:
        start: root of the forward tree
        goal: root of the backward tree
        expand: maps a state to (child, edge) pairs
        max_nodes (int): expansion budget
        max_depth (int): bound on the path length, None for no bound
        sort_layers (bool): expand short states first

    Returns:
        SearchOutcome: meeting state (None if not found) and both trees
    """
    forward, backward = _Side(start), _Side(goal)
    if start == goal:
        return SearchOutcome(start, forward, backward, 0)

    expanded = 0
    while forward.frontier and backward.frontier:
        if max_depth is not None and forward.depth + backward.depth >= max_depth:
            return SearchOutcome(None, forward, backward, expanded, "depth")

        side, other = (
            (forward, backward)
            if len(forward.frontier) <= len(backward.frontier)
            else (backward, forward)
        )
        if sort_layers:
            side.frontier.sort(key=len)

        layer = []
        for state in side.frontier:
            expanded += 1
            if expanded > max_nodes:
                return SearchOutcome(None, forward, backward, expanded, "budget")
            for child, edge in expand(state):
                if child in side.parents:
                    continue
                side.parents[child] = (state, edge)
                if child in other.parents:
                    return SearchOutcome(child, forward, backward, expanded)
                layer.append(child)
        side.frontier = layer
        side.depth += 1

    return SearchOutcome(None, forward, backward, expanded, "exhausted")


# ================================================================
# Equivalence search over words
# ================================================================


def _step_moves(step: RewriteStep, raw: Word, after: list[Move]) -> list[Move]:
    return [(raw, (step.citation(),))] + after


def _word_expander(relations, max_length: int, normalize: bool):
    def expand(state: Word):
        for raw, step in neighbours(state, relations, max_length):
            if normalize:
                reduced, after = cancellation_moves(raw)
            else:
                reduced, after = raw, []
            yield reduced, _step_moves(step, raw, after)

    return expand


def moves_along(outcome: SearchOutcome) -> list[Move]:
    """Moves from the forward root to the backward root through the meeting."""
    moves = []
    for _, edge, _ in outcome.forward.path_to(outcome.meet):
        moves.extend(edge)
    for parent, edge, _ in reversed(outcome.backward.path_to(outcome.meet)):
        moves.extend(reverse_moves(parent, edge))
    return moves


def _invariants_differ(w1: Word, w2: Word) -> str:
    if count_x(w1) != count_x(w2):
        return f"singular counts differ ({count_x(w1)} vs {count_x(w2)})"
    for i in PAGES:
        if net_count(w1, i) != net_count(w2, i):
            return f"page-{i} bracket counts differ"
    return ""


def search_equiv(w1: Word, w2: Word, budget: SearchBudget = None) -> Proved | Unknown:
    """
    Look for a chain of relation applications from w1 to w2.

    States are compared after cancel_normalize when the selection holds the
    whole cancellation group, and as plain words otherwise.

    Args:
        w1 (Word): start word
        w2 (Word): target word
        budget (SearchBudget): rule selection and limits

    Returns:
        Proved | Unknown: a derivation from w1 to w2, or the reason the search
            stopped
    """
    budget = budget or SearchBudget()
    w1, w2 = Word(w1), Word(w2)
    selection = budget.selection
    relations = selection.relations()
    max_length = budget.resolve_length(w1, w2)
    max_nodes = budget.resolve_nodes()
    normalize = selection.has_full_cancellation

    log.info(
        f"Searching {format_word(w1)} ~ {format_word(w2)} with {selection.describe()}"
    )
    log.debug(
        f"   {len(relations)} relations, length <= {max_length}, "
        f"nodes <= {max_nodes}, normalised states: {normalize}"
    )

    mismatch = _invariants_differ(w1, w2)
    if mismatch:
        log.info(f"No search: {mismatch}")
        return Unknown(mismatch)

    start, start_moves = cancellation_moves(w1) if normalize else (w1, [])
    goal, goal_moves = cancellation_moves(w2) if normalize else (w2, [])

    outcome = bidirectional_search(
        start,
        goal,
        _word_expander(relations, max_length, normalize),
        max_nodes=max_nodes,
        max_depth=budget.max_depth,
        sort_layers=load_settings().search.sort_layers,
    )
    if not outcome.found:
        log.info(
            f"Unknown after {outcome.expanded} expansions "
            f"({outcome.discovered} words seen, stopped by {outcome.reason})"
        )
        return Unknown(outcome.reason, outcome.expanded, outcome.discovered)

    moves = start_moves + moves_along(outcome) + reverse_moves(w2, goal_moves)
    ruleset = "fg" if any(rs.value == "fg" for rs in selection.rulesets) else "sk"
    script = Script("equiv", w1, ruleset=ruleset)
    for word, citations in moves:
        script.then(word, *citations)

    log.info(f"Proved in {len(script)} steps after {outcome.expanded} expansions")
    return Proved(script, outcome.expanded)


def centrality_witness(w: Word, budget: SearchBudget = None) -> BalancedWitness | Unknown:
    """
    Look for a balanced word equivalent to w, which shows w is central.

    Words whose page bracket counts are not all zero are never equivalent to a
    balanced word; they are reported Unknown without searching.
    """
    budget = budget or SearchBudget()
    w = Word(w)
    if is_balanced(w):
        log.info(f"{format_word(w)} is already balanced")
        return BalancedWitness(w, Script("central", w))

    for i in PAGES:
        if net_count(w, i) != 0:
            reason = f"page-{i} bracket count {net_count(w, i)} is not zero"
            log.info(f"No search: {reason}")
            return Unknown(reason)

    selection = budget.selection
    relations = selection.relations()
    max_length = budget.resolve_length(w)
    max_nodes = budget.resolve_nodes()
    normalize = selection.has_full_cancellation
    expand = _word_expander(relations, max_length, normalize)

    start, start_moves = cancellation_moves(w) if normalize else (w, [])
    # Single-ended search: the goal is any balanced state
    tree = _Side(start)
    found = start if is_balanced(start) else None
    expanded = 0
    while found is None and tree.frontier:
        if budget.max_depth is not None and tree.depth >= budget.max_depth:
            break
        tree.frontier.sort(key=len)
        layer = []
        for state in tree.frontier:
            expanded += 1
            if expanded > max_nodes:
                break
            for child, edge in expand(state):
                if child in tree.parents:
                    continue
                tree.parents[child] = (state, edge)
                if is_balanced(child):
                    found = child
                    break
                layer.append(child)
            if found is not None:
                break
        if expanded > max_nodes:
            break
        tree.frontier = layer
        tree.depth += 1

    if found is None:
        reason = "budget" if expanded > max_nodes else "exhausted"
        log.info(f"Unknown after {expanded} expansions ({reason})")
        return Unknown(reason, expanded, len(tree.parents))

    script = Script("central", w)
    for word, citations in start_moves:
        script.then(word, *citations)
    for _, edge, _ in tree.path_to(found):
        for word, citations in edge:
            script.then(word, *citations)
    log.info(f"Balanced witness {format_word(found)} after {expanded} expansions")
    return BalancedWitness(found, script, expanded)
