import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import W_K
from threepage.balance.balance import is_balanced
from threepage.geometry.geometry import (
    ReconStats,
    VertexKind,
    arc_graph,
    reconstruct,
    render_svg,
    stats,
    to_json,
    trace_circles,
    validate_embedding,
)
from threepage.lib.exceptions import BalanceError
from threepage.rewrite.rewrite import neighbours
from threepage.rewrite.search import Proved, SearchBudget, search_equiv
from threepage.rules.rules import RuleSet, enumerate_rules
from threepage.tangles.padding import embedding_context
from threepage.words.words import EMPTY, count_x, parse_word

# Relation whose sides differ by a closed loop
LOOP_FAMILY = "6'"


def test_reconstruct_unknot():
    e = reconstruct(parse_word("a0 c0"))
    assert e.arcs == ((), ((1, 2),), ((1, 2),))
    assert trace_circles(e) == [(1, 2)]
    assert stats(e) == ReconStats(axis_points=2, singular_points=0, circles=1)


def test_reconstruct_w_k(w_k):
    e = reconstruct(w_k)
    assert e.arcs == (
        ((2, 9), (3, 8), (6, 7)),
        ((1, 3), (4, 5), (5, 6), (7, 9)),
        ((1, 5), (2, 4), (5, 8)),
    )
    assert e.vertex_kind(5) is VertexKind.SINGULAR
    assert e.vertex_kind(1) is VertexKind.TRANSIT
    assert [p for p, _ in e.arc_ends(5)] == [1, 1, 2, 2]
    assert validate_embedding(e) == []


def test_w_k_is_one_singular_circle(w_k):
    e = reconstruct(w_k)
    assert trace_circles(e) == [tuple(range(1, 10))]
    assert stats(e) == ReconStats(axis_points=9, singular_points=1, circles=1)


def test_w_k_same_page_pairing(w_k):
    e = reconstruct(w_k)
    assert trace_circles(e, "same_page") == [(1, 3, 5, 8), (2, 4, 5, 6, 7, 9)]
    assert stats(e, "same_page").circles == 2


def test_nested_unknots():
    e = reconstruct(parse_word("a0 a1 c1 c0"))
    assert trace_circles(e) == [(1, 4), (2, 3)]
    assert stats(e).circles == 2


def test_singular_unknot():
    e = reconstruct(parse_word("a0 x0 c0"))
    assert stats(e) == ReconStats(axis_points=3, singular_points=1, circles=1)
    assert validate_embedding(e) == []


def test_empty_word():
    assert stats(reconstruct(EMPTY)) == ReconStats(0, 0, 0)


def test_unbalanced_word_is_rejected():
    with pytest.raises(BalanceError):
        reconstruct(parse_word("a0"))


def test_unknown_pairing(w_k):
    with pytest.raises(ValueError, match="Unknown pairing"):
        arc_graph(reconstruct(w_k), "diagonal")


def test_to_json(w_k):
    data = to_json(reconstruct(w_k))
    assert data["axis_points"] == 9
    assert data["singular_points"] == 1
    assert data["circles"] == 1
    assert data["arcs"]["0"] == [[2, 9], [3, 8], [6, 7]]
    assert sorted(data["arcs"]) == ["0", "1", "2"]


def test_render_svg(w_k):
    svg = render_svg(reconstruct(w_k))
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert "stroke-dasharray" in svg
    # ten arcs, nine axis points
    assert svg.count("<path") == 10
    assert svg.count("<circle") == 9
    assert 'width="400"' in svg


# ================================================================
# Invariance under the relations
# ================================================================


@pytest.mark.parametrize("ruleset", [RuleSet.SK, RuleSet.FG, RuleSet.DERIVED])
def test_relations_preserve_embedding_stats(ruleset):
    for relation in enumerate_rules(ruleset):
        u, v = embedding_context(relation.lhs, relation.rhs)
        left = stats(reconstruct(u + relation.lhs + v))
        right = stats(reconstruct(u + relation.rhs + v))
        assert left.singular_points == right.singular_points, relation.name
        if relation.family != LOOP_FAMILY:
            assert left.circles == right.circles, relation.name


def test_loop_relation_changes_circles():
    changed = []
    for relation in enumerate_rules(RuleSet.FG):
        if relation.family == LOOP_FAMILY:
            u, v = embedding_context(relation.lhs, relation.rhs)
            left = stats(reconstruct(u + relation.lhs + v))
            right = stats(reconstruct(u + relation.rhs + v))
            changed.append(left.circles != right.circles)
    assert any(changed)


SK_RELATIONS = enumerate_rules(RuleSet.SK)


@settings(max_examples=100, deadline=None)
@given(start=st.sampled_from([W_K, "a0 c0"]), data=st.data())
def test_balanced_walks_preserve_invariants(start, data):
    w = parse_word(start)
    expected = stats(reconstruct(w))
    max_length = len(w) + 4
    for _ in range(50):
        candidates = [
            v for v, _ in neighbours(w, SK_RELATIONS, max_length) if is_balanced(v)
        ]
        if not candidates:
            break
        w = data.draw(st.sampled_from(candidates))
        assert is_balanced(w)
        assert count_x(w) == expected.singular_points
        assert stats(reconstruct(w)).circles == expected.circles


def test_proved_equivalence_keeps_stats():
    budget = SearchBudget(max_depth=4)
    for left, right in [("a0 c0", "a1 c1"), ("a1 c1", "a2 c2")]:
        w1, w2 = parse_word(left), parse_word(right)
        assert isinstance(search_equiv(w1, w2, budget), Proved)
        s1, s2 = stats(reconstruct(w1)), stats(reconstruct(w2))
        assert (s1.circles, s1.singular_points) == (s2.circles, s2.singular_points)
