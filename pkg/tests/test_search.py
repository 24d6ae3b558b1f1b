from threepage.derivations.checker import StepProof, check_script, check_step
from threepage.rewrite.search import (
    BalancedWitness,
    Proved,
    SearchBudget,
    Unknown,
    bidirectional_search,
    centrality_witness,
    search_equiv,
)
from threepage.rules.rules import SUPERFLUOUS_ID, RuleSelection, RuleSet, relation_by_id
from threepage.words.words import EMPTY, parse_word


def test_single_cancellation():
    result = search_equiv(parse_word("b0 d0"), EMPTY)
    assert isinstance(result, Proved)
    assert result.steps == 1


def test_unknot_moves_between_pages():
    budget = SearchBudget(max_depth=4)
    for left, right in [("a0 c0", "a1 c1"), ("a1 c1", "a2 c2")]:
        result = search_equiv(parse_word(left), parse_word(right), budget)
        assert isinstance(result, Proved)
        assert result.derivation.start == parse_word(left)
        assert result.derivation.end == parse_word(right)
        assert check_script(result.derivation).passed


def test_invariant_mismatch_is_unknown():
    result = search_equiv(parse_word("a0"), parse_word("c0"), SearchBudget(max_nodes=10))
    assert isinstance(result, Unknown)
    assert result.expanded == 0
    assert "bracket counts" in result.reason


def test_budget_exhaustion_is_unknown():
    result = search_equiv(
        parse_word("a0 c0"), parse_word("a0 a1 c1 c0"), SearchBudget(max_nodes=50)
    )
    assert isinstance(result, Unknown)
    assert result.reason == "budget"


def test_superfluous_relation_is_derivable():
    selection = RuleSelection(
        (RuleSet.SK,), families=frozenset({"3", "4"}), exclude=frozenset({SUPERFLUOUS_ID})
    )
    budget = SearchBudget(selection=selection, max_length=9, max_nodes=10**4)
    relation = relation_by_id(SUPERFLUOUS_ID)
    result = search_equiv(relation.lhs, relation.rhs, budget)
    assert isinstance(result, Proved)
    assert result.expanded < 10**4

    words = result.derivation.words
    for source, target in zip(words, words[1:]):
        proof = check_step(source, target, selection.relations())
        assert isinstance(proof, StepProof) and len(proof) == 1


def test_bidirectional_search_on_integers():
    def expand(n):
        yield n + 1, "+1"
        yield n * 2, "*2"

    outcome = bidirectional_search(1, 8, expand, max_nodes=100)
    assert outcome.meet == 8
    edges = [edge for _, edge, _ in outcome.forward.path_to(outcome.meet)]
    assert edges == ["+1", "*2", "*2"]


def test_bidirectional_search_depth_limit():
    outcome = bidirectional_search(0, 100, lambda n: [(n + 1, "+1")], 10**4, max_depth=5)
    assert not outcome.found
    assert outcome.reason == "depth"


def test_bidirectional_search_sorted_layers():
    def expand(s):
        yield s + "ab", "grow"
        if len(s) > 1:
            yield s[:-1], "drop"

    outcome = bidirectional_search("a", "aab", expand, max_nodes=100, sort_layers=True)
    assert outcome.found
    assert outcome.meet == "aab"


def test_balanced_word_is_its_own_witness(w_k):
    result = centrality_witness(w_k)
    assert isinstance(result, BalancedWitness)
    assert result.word == w_k
    assert len(result.derivation) == 0


def test_witness_after_cancellation():
    result = centrality_witness(parse_word("b0 d0"))
    assert isinstance(result, BalancedWitness)
    assert result.word == EMPTY


def test_open_arc_is_never_central():
    result = centrality_witness(parse_word("a0"))
    assert isinstance(result, Unknown)
    assert result.expanded == 0


def test_cap_above_cup_stays_unknown_on_small_budget():
    result = centrality_witness(parse_word("d2 c2 a2 b2"), SearchBudget(max_nodes=300))
    assert isinstance(result, Unknown)
