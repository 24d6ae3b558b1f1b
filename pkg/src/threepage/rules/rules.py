import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from threepage.balance.balance import is_i_balanced
from threepage.lib.exceptions import CitationError, InstantiationError
from threepage.words.words import PAGES, Letter, Word, format_word, page_add

log = logging.getLogger("rules")

# The (4) instance that follows from (3) and the other five
SUPERFLUOUS_ID = "4.i2.v1"

# Instance counts of the SK families, in enumeration order
SK_FAMILY_COUNTS = {
    "1": 12,
    "2": 3,
    "3": 1,
    "4": 6,
    "5": 6,
    "6": 3,
    "7": 9,
    "8": 15,
    "9": 15,
    "10": 15,
}

SK_FAMILIES = tuple(SK_FAMILY_COUNTS)
FG_FAMILIES = tuple("6'" if f == "6" else f for f in SK_FAMILIES)
DERIVED_FAMILIES = tuple(str(n) for n in range(25, 46))


class RuleSet(Enum):
    SK = "sk"
    FG = "fg"
    DERIVED = "derived"


def _l(kind: str, page: int) -> Letter:
    return Letter.of(kind, page)


def _w(*letters_: Letter) -> Word:
    return Word(letters_)


# ================================================================
# Named words
# ================================================================


def t_word(i: int) -> Word:
    """t_i = b_{i+1} d_{i-1} d_{i+1} b_{i-1}"""
    p, m = page_add(i, 1), page_add(i, -1)
    return _w(_l("b", p), _l("d", m), _l("d", p), _l("b", m))


def t_prime_word(i: int) -> Word:
    """t'_i = d_{i-1} b_{i+1} b_{i-1} d_{i+1}"""
    p, m = page_add(i, 1), page_add(i, -1)
    return _w(_l("d", m), _l("b", p), _l("b", m), _l("d", p))


def star_factor_set(j: int) -> tuple[Word, ...]:
    """
    The seven j-balanced building blocks a_j, b_j, c_j, d_j, x_j,
    b_{j-1} b_j d_{j-1} and b_{j-1} d_j d_{j-1}.
    """
    m = page_add(j, -1)
    singles = tuple(_w(_l(kind, j)) for kind in "abcdx")
    return singles + (
        _w(_l("b", m), _l("b", j), _l("d", m)),
        _w(_l("b", m), _l("d", j), _l("d", m)),
    )


# ================================================================
# Relations
# ================================================================


@dataclass(frozen=True)
class RelationId:
    """
    Stable name of one relation instance, e.g. 1.i0.v2, 3, 7.i1.w4.

    Attributes:
        family (str): label as printed, e.g. "4", "6'", "37"
        page (int): index i the family is instantiated at, None for (3)
        variant (int): which equation of the family, when it lists several
        slot (int): position of the witness in its factor list, if any
    """

    family: str
    page: int = None
    variant: int = None
    slot: int = None

    def __str__(self) -> str:
        parts = [self.family]
        if self.page is not None:
            parts.append(f"i{self.page}")
        if self.variant is not None:
            parts.append(f"v{self.variant}")
        if self.slot is not None:
            parts.append(f"w{self.slot}")
        return ".".join(parts)


@dataclass(frozen=True)
class Relation:
    id: RelationId
    lhs: Word
    rhs: Word
    ruleset: RuleSet
    superfluous: bool = False
    certificate: "BalanceCertificate" = None

    @property
    def family(self) -> str:
        return self.id.family

    @property
    def name(self) -> str:
        return str(self.id)

    def dump_line(self) -> str:
        return f"{self.id} : {format_word(self.lhs)} = {format_word(self.rhs)}"


@dataclass(frozen=True)
class BalanceCertificate:
    """Record that a witness word was checked balanced in a page."""

    witness: Word
    page: int


class _Collector:
    """Accumulates relations of one rule set in enumeration order."""

    def __init__(self, ruleset: RuleSet):
        self.ruleset = ruleset
        self.relations = []

    def add(self, rid: RelationId, lhs: Word, rhs: Word):
        self.relations.append(
            Relation(
                rid,
                Word(lhs),
                Word(rhs),
                self.ruleset,
                superfluous=str(rid) == SUPERFLUOUS_ID,
            )
        )

    def commute(self, family, i, prefix, witnesses, variant=None):
        """prefix * w = w * prefix for each witness w"""
        for k, w in enumerate(witnesses):
            self.add(RelationId(family, i, variant, k), prefix + w, w + prefix)


def _sk_relations(ruleset: RuleSet) -> list[Relation]:
    out = _Collector(ruleset)

    # (1) the letters a, b, c, d in terms of neighbouring pages
    for i in PAGES:
        p, m = page_add(i, 1), page_add(i, -1)
        sides = [
            (_w(_l("a", i)), _w(_l("a", p), _l("d", m))),
            (_w(_l("b", i)), _w(_l("a", m), _l("c", p))),
            (_w(_l("c", i)), _w(_l("b", m), _l("c", p))),
            (_w(_l("d", i)), _w(_l("a", p), _l("c", m))),
        ]
        for v, (lhs, rhs) in enumerate(sides):
            out.add(RelationId("1", i, v), lhs, rhs)

    # (2) x_i = d_{i+1} x_{i-1} b_{i+1}
    for i in PAGES:
        p, m = page_add(i, 1), page_add(i, -1)
        out.add(RelationId("2", i), _w(_l("x", i)), _w(_l("d", p), _l("x", m), _l("b", p)))

    # (3) d_0 d_1 d_2 = 1
    out.add(RelationId("3"), _w(_l("d", 0), _l("d", 1), _l("d", 2)), Word())

    # (4) b_i d_i = d_i b_i = 1
    for i in PAGES:
        out.add(RelationId("4", i, 0), _w(_l("b", i), _l("d", i)), Word())
        out.add(RelationId("4", i, 1), _w(_l("d", i), _l("b", i)), Word())

    # (5) loops at a singular point
    for i in PAGES:
        a, c = _l("a", i), _l("c", i)
        dxd = _w(_l("d", i), _l("x", i), _l("d", i))
        bxb = _w(_l("b", i), _l("x", i), _l("b", i))
        out.add(RelationId("5", i, 0), dxd, _w(a) + dxd + _w(c))
        out.add(RelationId("5", i, 1), bxb, _w(a) + bxb + _w(c))

    # (6) or (6')
    for i in PAGES:
        p, m = page_add(i, 1), page_add(i, -1)
        x = _w(_l("x", i))
        dd = _w(_l("d", p), _l("d", i), _l("d", m))
        if ruleset is RuleSet.FG:
            out.add(RelationId("6'", i), x + dd, x)
        else:
            out.add(RelationId("6", i), x + dd, dd + x)

    # (7)-(10) commutations
    for i in PAGES:
        p = page_add(i, 1)
        bdd = _w(_l("b", i), _l("d", p), _l("d", i))
        out.commute(
            "7",
            i,
            _w(_l("d", i), _l("c", i)),
            [_w(_l("c", p)), _w(_l("x", p)), bdd],
        )
    for i in PAGES:
        out.commute("8", i, _w(_l("a", i), _l("b", i)), _witnesses_8(i))
    for i in PAGES:
        m = page_add(i, -1)
        witnesses = [_w(_l(kind, i)) for kind in "abcx"]
        witnesses.append(_w(_l("b", m), _l("d", i), _l("d", m)))
        out.commute("9", i, t_word(i), witnesses)
    for i in PAGES:
        out.commute(
            "10", i, _w(_l("d", i), _l("x", i), _l("b", i)), _witnesses_8(i)
        )

    return out.relations


def _witnesses_8(i: int) -> list[Word]:
    p = page_add(i, 1)
    witnesses = [_w(_l(kind, p)) for kind in "abcx"]
    witnesses.append(_w(_l("b", i), _l("d", p), _l("d", i)))
    return witnesses


def _derived_relations() -> list[Relation]:
    out = _Collector(RuleSet.DERIVED)

    def each_page(family, build):
        for i in PAGES:
            sides = build(i, page_add(i, 1), page_add(i, -1))
            if len(sides) == 1:
                out.add(RelationId(family, i), *sides[0])
            else:
                for v, (lhs, rhs) in enumerate(sides):
                    out.add(RelationId(family, i, v), lhs, rhs)

    each_page("25", lambda i, p, m: [(_w(_l("b", i)), _w(_l("d", p), _l("d", m)))])
    each_page("26", lambda i, p, m: [(_w(_l("d", i)), _w(_l("b", m), _l("b", p)))])
    each_page(
        "27",
        lambda i, p, m: [
            (_w(_l("d", p), _l("b", m)), _w(_l("b", m), _l("d", p)) + t_word(i)),
            (_w(_l("b", p), _l("d", m)), t_word(i) + _w(_l("d", m), _l("b", p))),
        ],
    )
    each_page(
        "28",
        lambda i, p, m: [
            (_w(_l("a", i)), _w(_l("a", m), _l("b", p))),
            (_w(_l("c", i)), _w(_l("d", p), _l("c", m))),
        ],
    )
    each_page(
        "29",
        lambda i, p, m: [
            (_w(_l("a", i), _l("b", i)), _w(_l("a", m), _l("d", m))),
            (_w(_l("d", i), _l("c", i)), _w(_l("b", m), _l("c", m))),
        ],
    )
    each_page(
        "30",
        lambda i, p, m: [
            (_w(_l("b", i)), _w(_l("a", i), _l("b", i), _l("c", i))),
            (_w(_l("d", i)), _w(_l("a", i), _l("d", i), _l("c", i))),
        ],
    )
    each_page(
        "31",
        lambda i, p, m: [(_w(_l("b", m), _l("x", p), _l("d", m)), _w(_l("x", i)))],
    )
    each_page(
        "32",
        lambda i, p, m: [
            (
                _w(_l("b", i), _l("x", i), _l("d", i)),
                _w(_l("d", p), _l("x", p), _l("b", p)),
            )
        ],
    )

    # (33)-(39) commutations with the star factors of a neighbouring page
    for i in PAGES:
        for family, variant, prefix, factor_page in _commutation_families(i):
            out.commute(family, i, prefix, star_factor_set(factor_page), variant)

    # (40) conjugation by d_{i+1} b_{i-1}
    for i in PAGES:
        p, m = page_add(i, 1), page_add(i, -1)
        for k, w in enumerate(star_factor_set(i)):
            out.add(
                RelationId("40", i, slot=k),
                _w(_l("d", p), _l("b", m)) + w + _w(_l("d", m), _l("b", p)),
                _w(_l("b", m), _l("d", p)) + w + _w(_l("b", p), _l("d", m)),
            )

    # (41)-(45) depth reduction of b_{i-1}^2 s d_{i-1}^2
    for i in PAGES:
        for family, (lhs, rhs) in depth_reductions(i).items():
            out.add(RelationId(family, i), lhs, rhs)

    return out.relations


def _commutation_families(i: int) -> list[tuple]:
    """(family, variant, prefix, page of the commuting factors) for (33)-(39)."""
    p, m = page_add(i, 1), page_add(i, -1)
    return [
        ("33", None, _w(_l("d", i), _l("c", i)), p),
        ("34", None, _w(_l("b", i), _l("c", i)), m),
        ("35", None, _w(_l("a", i), _l("b", i)), p),
        ("36", None, _w(_l("a", i), _l("d", i)), m),
        ("37", 0, t_word(i), i),
        ("37", 1, t_prime_word(i), i),
        ("38", None, _w(_l("d", i), _l("x", i), _l("b", i)), p),
        ("39", None, _w(_l("b", i), _l("x", i), _l("d", i)), m),
    ]


def depth_reductions(i: int) -> dict[str, tuple[Word, Word]]:
    """
    Rewrites of b_{i-1}^2 s d_{i-1}^2 keyed by family, for s one of
    a_i (41), c_i (42), b_i (43), d_i (44), x_i (45).
    """
    m = page_add(i, -1)
    b, d = _l("b", m), _l("d", m)
    a_, b_, c_, d_, x_ = (_l(kind, i) for kind in "abcdx")

    def wrap(s):
        return _w(b, s, d)

    def deep(s):
        return _w(b, b, s, d, d)

    return {
        "41": (deep(a_), wrap(a_) + _w(d_, d_) + wrap(b_) + _w(b_)),
        "42": (deep(c_), _w(d_) + wrap(d_) + _w(b_, b_) + wrap(c_)),
        "43": (deep(b_), wrap(b_) + _w(d_, d_) + wrap(b_) + _w(b_)),
        "44": (deep(d_), _w(d_) + wrap(d_) + _w(b_, b_) + wrap(d_)),
        "45": (
            deep(x_),
            deep(b_) + wrap(d_) + _w(d_, d_, x_, b_, b_) + wrap(b_) + deep(d_),
        ),
    }


@lru_cache(maxsize=None)
def enumerate_rules(ruleset: RuleSet) -> tuple[Relation, ...]:
    """
    All relation instances of a rule set, family by family.

    SK holds the 85 instances of (1)-(10); FG replaces (6) by (6'); DERIVED
    holds (25)-(45) with the factor slots expanded.
    """
    ruleset = RuleSet(ruleset)
    if ruleset is RuleSet.DERIVED:
        relations = _derived_relations()
    else:
        relations = _sk_relations(ruleset)
    log.debug(f"Enumerated {len(relations)} relations for {ruleset.value}")
    return tuple(relations)


def raw_count(ruleset: RuleSet) -> int:
    return len(enumerate_rules(ruleset))


def official_count(ruleset: RuleSet) -> int:
    """Instance count with the superfluous (4) instance left out."""
    return sum(1 for r in enumerate_rules(ruleset) if not r.superfluous)


def family_counts(ruleset: RuleSet) -> dict[str, int]:
    counts = {}
    for relation in enumerate_rules(ruleset):
        counts[relation.family] = counts.get(relation.family, 0) + 1
    return counts


def relation_by_id(name: str, ruleset: RuleSet = None) -> Relation:
    """
    Raises:
        CitationError: if no enumerated relation carries that id.
    """
    rulesets = [RuleSet(ruleset)] if ruleset else list(RuleSet)
    for rs in rulesets:
        for relation in enumerate_rules(rs):
            if relation.name == name:
                return relation
    raise CitationError(f"Unknown relation id '{name}'")


# ================================================================
# Parametric relations
# ================================================================

# Page the witness must be balanced in, relative to the family index
PARAMETRIC_OFFSETS = {
    "33'": 1,
    "34'": -1,
    "35'": 1,
    "36'": -1,
    "37'": 0,
    "38'": 1,
    "39'": -1,
    "40'": 0,
}


@dataclass(frozen=True)
class ParametricRelation:
    """
    left_pre * W * left_post = right_pre * W * right_post for every word W that
    is balanced in ``balance_page``.
    """

    family: str
    page: int
    balance_page: int
    left_pre: Word
    left_post: Word = field(default_factory=Word)
    right_pre: Word = field(default_factory=Word)
    right_post: Word = field(default_factory=Word)
    variant: int = None

    def instantiate(self, witness: Word) -> Relation:
        return instantiate_parametric(self, witness)


def parametric_relations(family: str, page: int) -> list[ParametricRelation]:
    """
    The generalised commutations of a family at index ``page``.

    (37') yields two relations, one for t and one for t'.

    Raises:
        CitationError: for families without a generalised form.
    """
    if family not in PARAMETRIC_OFFSETS:
        raise CitationError(f"({family}) has no generalised form")

    balance_page = page_add(page, PARAMETRIC_OFFSETS[family])
    p, m = page_add(page, 1), page_add(page, -1)

    if family == "40'":
        return [
            ParametricRelation(
                family,
                page,
                balance_page,
                left_pre=_w(_l("d", p), _l("b", m)),
                left_post=_w(_l("d", m), _l("b", p)),
                right_pre=_w(_l("b", m), _l("d", p)),
                right_post=_w(_l("b", p), _l("d", m)),
            )
        ]

    base = family.rstrip("'")
    relations = []
    for fam, variant, prefix, _ in _commutation_families(page):
        if fam == base:
            relations.append(
                ParametricRelation(
                    family, page, balance_page, left_pre=prefix, right_post=prefix,
                    variant=variant,
                )
            )
    return relations


def parametric_for_balance_page(family: str, balance_page: int) -> list[ParametricRelation]:
    """Generalised relations whose witness must be balanced in ``balance_page``."""
    if family not in PARAMETRIC_OFFSETS:
        raise CitationError(f"({family}) has no generalised form")
    page = page_add(balance_page, -PARAMETRIC_OFFSETS[family])
    return parametric_relations(family, page)


def instantiate_parametric(p: ParametricRelation, witness: Word) -> Relation:
    """
    Concrete relation for one witness, carrying its balance certificate.

    Raises:
        InstantiationError: if the witness is not balanced in the page the
            family requires.
    """
    witness = Word(witness)
    if not is_i_balanced(witness, p.balance_page):
        raise InstantiationError(
            f"Witness '{format_word(witness)}' of ({p.family}) at i={p.page} "
            f"is not {p.balance_page}-balanced"
        )
    return Relation(
        RelationId(p.family, p.page, p.variant),
        p.left_pre + witness + p.left_post,
        p.right_pre + witness + p.right_post,
        RuleSet.DERIVED,
        certificate=BalanceCertificate(witness, p.balance_page),
    )


# ================================================================
# Selections
# ================================================================


@dataclass(frozen=True)
class RuleSelection:
    """
    Relations a search may use: whole rule sets, optionally narrowed to some
    families and with single instances left out.

    Example:
        RuleSelection((RuleSet.SK,), families=frozenset({"3", "4"}),
                      exclude=frozenset({"4.i2.v1"}))
    """

    rulesets: tuple = (RuleSet.SK,)
    families: frozenset = None
    exclude: frozenset = frozenset()

    @classmethod
    def for_script(cls, ruleset: str) -> "RuleSelection":
        """Script contexts: 'sk' and 'fg' both include the derived relations."""
        return cls((RuleSet(ruleset), RuleSet.DERIVED))

    def relations(self) -> tuple[Relation, ...]:
        return _select(self)

    @property
    def has_full_cancellation(self) -> bool:
        """(3) and all six (4) instances are active."""
        names = {r.name for r in self.relations()}
        needed = {"3"} | {f"4.i{i}.v{v}" for i in PAGES for v in (0, 1)}
        return needed <= names

    def describe(self) -> str:
        text = "+".join(rs.value for rs in self.rulesets)
        if self.families is not None:
            text += " families " + ",".join(sorted(self.families, key=_family_key))
        if self.exclude:
            text += " without " + ",".join(sorted(self.exclude))
        return text


@lru_cache(maxsize=None)
def _select(selection: RuleSelection) -> tuple[Relation, ...]:
    chosen = []
    for ruleset in selection.rulesets:
        for relation in enumerate_rules(ruleset):
            if selection.families is not None and relation.family not in selection.families:
                continue
            if relation.name in selection.exclude:
                continue
            chosen.append(relation)
    return tuple(chosen)


def relations_of_family(family: str, ruleset: str) -> tuple[Relation, ...]:
    """
    Instances a citation (N) stands for inside a script of the given rule set.

    Raises:
        CitationError: if the family does not exist in that context.
    """
    selection = RuleSelection(
        RuleSelection.for_script(ruleset).rulesets, families=frozenset({family})
    )
    relations = selection.relations()
    if not relations:
        raise CitationError(f"Unknown citation ({family}) for rules {ruleset}")
    return relations


def _family_key(family: str) -> tuple[int, str]:
    return int(family.rstrip("'")), family
