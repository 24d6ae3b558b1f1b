import logging
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from threepage.balance.balance import PageAction, page_action, require_balanced
from threepage.lib.settings import PAIRINGS
from threepage.words.words import PAGES, Kind, Letter, Word, count_x, format_word, page_add

log = logging.getLogger("geometry")

# An arc joins two axis points (1-based, j < k) inside one page
Arc = tuple[int, int]


class VertexKind(Enum):
    TRANSIT = "transit"
    SINGULAR = "singular"


@dataclass(frozen=True)
class Embedding:
    """
    Axis points in order, each carrying its letter, and the arcs of each page.

    Attributes:
        word (Word): the balanced word the embedding was read from
        arcs (tuple): arcs[p] lists the page-p arcs sorted by endpoints
    """

    word: Word
    arcs: tuple[tuple[Arc, ...], ...]

    @property
    def axis_points(self) -> list[tuple[int, Letter]]:
        return list(enumerate(self.word, start=1))

    def vertex_kind(self, j: int) -> VertexKind:
        letter = self.word[j - 1]
        return VertexKind.SINGULAR if letter.kind is Kind.X else VertexKind.TRANSIT

    def arc_ends(self, j: int) -> list[tuple[int, Arc]]:
        """(page, arc) for every arc ending at axis point j."""
        return [(p, arc) for p in PAGES for arc in self.arcs[p] if j in arc]


@dataclass(frozen=True)
class ReconStats:
    axis_points: int
    singular_points: int
    circles: int


def reconstruct(w: Word) -> Embedding:
    """
    Read the three-page embedding encoded by a balanced word.

    Each page projection is matched with a stack; an x letter closes the
    innermost open arc and then opens a new one.

    Raises:
        BalanceError: naming the first page whose projection does not nest
            and the letter position where it fails.
    """
    w = Word(w)
    require_balanced(w)

    arcs = []
    for p in PAGES:
        stack = []
        page_arcs = []
        for j, letter in enumerate(w, start=1):
            action = page_action(letter, p)
            if action in (PageAction.CLOSE, PageAction.CLOSE_OPEN):
                page_arcs.append((stack.pop(), j))
            if action in (PageAction.OPEN, PageAction.CLOSE_OPEN):
                stack.append(j)
        arcs.append(tuple(sorted(page_arcs)))

    embedding = Embedding(w, tuple(arcs))
    log.debug(f"Reconstructed {format_word(w)}: {sum(len(a) for a in arcs)} arcs")
    return embedding


def validate_embedding(e: Embedding) -> list[str]:
    """
    Problems with the embedding conditions, empty when there are none.

    Checks arcs are nested within each page, transit points meet two arcs in
    two different pages and singular points meet two arcs in each page other
    than their own.
    """
    problems = []
    for p in PAGES:
        page_arcs = e.arcs[p]
        for a, b in page_arcs:
            for c, d in page_arcs:
                if a < c < b < d:
                    problems.append(f"page {p}: arcs ({a},{b}) and ({c},{d}) cross")

    for j, letter in e.axis_points:
        ends = e.arc_ends(j)
        pages = [p for p, _ in ends]
        if e.vertex_kind(j) is VertexKind.TRANSIT:
            if len(ends) != 2 or pages[0] == pages[1]:
                problems.append(f"point {j} ({letter}): transit ends in pages {pages}")
        else:
            expected = sorted([page_add(letter.page, 1)] * 2 + [page_add(letter.page, -1)] * 2)
            if sorted(pages) != expected:
                problems.append(f"point {j} ({letter}): singular ends in pages {pages}")
    return problems


def arc_graph(e: Embedding, pairing: str = "transversal") -> nx.Graph:
    """
    Graph on the arcs, joining two arcs when a branch runs from one into the
    other through an axis point.

    At a transit point the two arcs meeting there are joined. At a singular
    point x_s, ``transversal`` joins each arc arriving in page s+1 or s-1 with
    the arc leaving in the other page; ``same_page`` joins the two arcs of
    page s+1 and the two of page s-1. Only ``transversal`` keeps the circle
    count invariant under the relations.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"Unknown pairing '{pairing}', use {PAIRINGS}")

    graph = nx.Graph()
    for p in PAGES:
        graph.add_nodes_from((p, arc) for arc in e.arcs[p])

    for j, letter in e.axis_points:
        ends = e.arc_ends(j)
        if e.vertex_kind(j) is VertexKind.TRANSIT:
            graph.add_edge(*[(p, arc) for p, arc in ends])
            continue

        # arriving: arc ends at j; leaving: arc starts at j
        upper, lower = page_add(letter.page, 1), page_add(letter.page, -1)
        arriving = {p: (p, arc) for p, arc in ends if arc[1] == j}
        leaving = {p: (p, arc) for p, arc in ends if arc[0] == j}
        if pairing == "same_page":
            graph.add_edge(arriving[upper], leaving[upper])
            graph.add_edge(arriving[lower], leaving[lower])
        else:
            graph.add_edge(arriving[upper], leaving[lower])
            graph.add_edge(arriving[lower], leaving[upper])
    return graph


def trace_circles(e: Embedding, pairing: str = "transversal") -> list[tuple[int, ...]]:
    """
    Circles of the embedded knot, each given by the axis points it passes.

    A singular point lies on both branches through it, so it can belong to
    two circles.
    """
    graph = arc_graph(e, pairing)
    circles = []
    for component in nx.connected_components(graph):
        points = sorted({j for _, arc in component for j in arc})
        circles.append(tuple(points))
    circles.sort()
    return circles


def stats(e: Embedding, pairing: str = "transversal") -> ReconStats:
    return ReconStats(
        axis_points=len(e.word),
        singular_points=count_x(e.word),
        circles=nx.number_connected_components(arc_graph(e, pairing)),
    )


def to_json(e: Embedding, pairing: str = "transversal") -> dict:
    """Stats and 1-based arcs per page, ready for json.dumps."""
    s = stats(e, pairing)
    return {
        "axis_points": s.axis_points,
        "singular_points": s.singular_points,
        "circles": s.circles,
        "arcs": {str(p): [list(arc) for arc in e.arcs[p]] for p in PAGES},
    }


# ================================================================
# Rendering
# ================================================================

PAGE_STYLES = {
    0: 'stroke="black"',
    1: 'stroke="steelblue"',
    2: 'stroke="firebrick" stroke-dasharray="4 3"',
}


def render_svg(e: Embedding, spacing: int = 40) -> str:
    """
    Standalone SVG: the axis horizontal, page 0 above it, pages 1 and 2
    below it with page 2 dashed. Singular points are drawn as larger discs.
    """
    n = len(e.word)
    deepest = max([k - j for p in PAGES for j, k in e.arcs[p]] + [1])
    radius = spacing * deepest / 2
    width = spacing * (n + 1)
    height = 2 * radius + 2 * spacing
    axis_y = radius + spacing

    def x(j):
        return spacing * j

    arcs_svg = []
    for p in PAGES:
        # sweep 1 bends the arc above the axis, sweep 0 below
        sweep = 1 if p == 0 else 0
        for j, k in e.arcs[p]:
            r = spacing * (k - j) / 2
            arcs_svg.append(
                f'<path d="M {x(j)} {axis_y} A {r} {r} 0 0 {sweep} {x(k)} {axis_y}" '
                f'fill="none" {PAGE_STYLES[p]}/>'
            )

    points_svg = []
    for j, letter in e.axis_points:
        size = 5 if e.vertex_kind(j) is VertexKind.SINGULAR else 2.5
        points_svg.append(f'<circle cx="{x(j)}" cy="{axis_y}" r="{size}" fill="black"/>')
        points_svg.append(
            f'<text x="{x(j) + 3}" y="{axis_y - 6}" font-family="monospace" '
            f'font-size="8" fill="gray">{letter}</text>'
        )

    axis_svg = f'<line x1="0" y1="{axis_y}" x2="{width}" y2="{axis_y}" stroke="gray"/>'
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}">\n'
        + axis_svg
        + "\n"
        + "\n".join(arcs_svg + points_svg)
        + "\n</svg>\n"
    )
    return svg
