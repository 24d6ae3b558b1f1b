import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from threepage.derivations.scripts import Script
from threepage.lib.exceptions import WordParseError
from threepage.lib.regex import Regex_patterns
from threepage.rewrite.rewrite import cancellation_moves, reverse_moves
from threepage.words.words import EMPTY, Word, format_word, letters, power, Letter

log = logging.getLogger("tangles")


class Generator(Enum):
    XI = "xi"
    ETA = "eta"
    SIGMA = "sigma"
    SIGMA_INV = "isigma"
    TAU = "tau"


# Image of the strand-1 generator; strand k conjugates it by d2^(k-1) ... b2^(k-1)
CORES = {
    Generator.XI: letters("d2", "c2"),
    Generator.ETA: letters("a2", "b2"),
    Generator.SIGMA: letters("b1", "d2", "d1", "b2"),
    Generator.SIGMA_INV: letters("d2", "b1", "b2", "d1"),
    Generator.TAU: letters("d2", "x2", "b2"),
}


@dataclass(frozen=True)
class TangleGen:
    kind: Generator
    strand: int

    def __post_init__(self):
        if self.strand < 1:
            raise ValueError(f"Strand index must be positive, got {self.strand}")

    def shifted(self, k: int) -> "TangleGen":
        return TangleGen(self.kind, self.strand + k)

    def __str__(self) -> str:
        return f"{self.kind.value}_{self.strand}"


MorseWord = tuple[TangleGen, ...]


def gen(kind: str, strand: int) -> TangleGen:
    return TangleGen(Generator(kind), strand)


def parse_morse(text: str) -> MorseWord:
    """
    Parse whitespace-separated tokens such as "xi_1 sigma_2 isigma_1".

    Raises:
        WordParseError: on an unknown token, with its offset.
    """
    out = []
    pos = 0
    for token in text.split():
        pos = text.index(token, pos)
        match = Regex_patterns.MORSE_TOKEN.match(token)
        if match is None:
            raise WordParseError(f"Malformed tangle token '{token}'", offset=pos)
        out.append(TangleGen(Generator(match.group(1)), int(match.group(2))))
        pos += len(token)
    return tuple(out)


def format_morse(mw: Iterable[TangleGen]) -> str:
    mw = tuple(mw)
    return " ".join(str(g) for g in mw) if mw else "1"


def phi_gen(g: TangleGen) -> Word:
    """
    Three-page word of a generator:

        xi_k     d2^k c2 b2^(k-1)
        eta_k    d2^(k-1) a2 b2^k
        sigma_k  d2^(k-1) b1 d2 d1 b2^k
        isigma_k d2^k b1 b2 d1 b2^(k-1)
        tau_k    d2^k x2 b2^k
    """
    return rho_shift(CORES[g.kind], g.strand - 1)


def compile_morse(mw: Iterable[TangleGen]) -> Word:
    """Concatenate generator images; the empty Morse word gives the unit."""
    out = EMPTY
    for g in mw:
        out = out + phi_gen(g)
    return out


def theta_shift(mw: Iterable[TangleGen], k: int) -> MorseWord:
    """Move every generator k strands to the right."""
    if k < 0:
        raise ValueError(f"Shift must be non-negative, got {k}")
    return tuple(g.shifted(k) for g in mw)


def rho_shift(w: Word, k: int) -> Word:
    """d2^k w b2^k"""
    if k < 0:
        raise ValueError(f"Shift must be non-negative, got {k}")
    return power(Letter.d2, k) + w + power(Letter.b2, k)


# ================================================================
# Tangle relations and their images
# ================================================================

FAR_GENERATORS = (
    Generator.XI,
    Generator.ETA,
    Generator.SIGMA,
    Generator.SIGMA_INV,
    Generator.TAU,
)


@dataclass(frozen=True)
class RelationImage:
    """
    One tangle relation left = right at strand k, and its compiled sides.

    ``label`` tells apart the equations of a family, e.g. 16a and 16b, and the
    far generator for (11)-(14).
    """

    family: str
    label: str
    k: int
    l: int
    left: MorseWord
    right: MorseWord

    @property
    def lhs(self) -> Word:
        return compile_morse(self.left)

    @property
    def rhs(self) -> Word:
        return compile_morse(self.right)

    @property
    def name(self) -> str:
        text = f"{self.label}.k{self.k}"
        return text + (f".l{self.l}" if self.l is not None else "")

    def __str__(self) -> str:
        return f"{self.name}: {format_morse(self.left)} = {format_morse(self.right)}"


def _image(family, label, k, l, left, right) -> RelationImage:
    return RelationImage(family, label, k, l, tuple(left), tuple(right))


def _far_images(k: int, lmax: int) -> list[RelationImage]:
    """(11)-(14): a generator at strand k passing one at strand l."""
    out = []
    for kind in FAR_GENERATORS:
        name = kind.value
        for l in range(k, lmax + 1):
            u = TangleGen(kind, l)
            out.append(
                _image("11", f"11-{name}", k, l, [gen("xi", k), u], [u.shifted(2), gen("xi", k)])
            )
        for l in range(k + 2, lmax + 1):
            u = TangleGen(kind, l)
            out.append(
                _image("12", f"12-{name}", k, l, [gen("eta", k), u], [u.shifted(-2), gen("eta", k)])
            )
            out.append(_image("13", f"13-{name}", k, l, [gen("sigma", k), u], [u, gen("sigma", k)]))
            out.append(_image("14", f"14-{name}", k, l, [gen("tau", k), u], [u, gen("tau", k)]))
    return out


def _local_images(k: int, variant: str) -> list[RelationImage]:
    """(15)-(23) at strand k."""
    xi, eta, sigma, isigma, tau = (
        lambda s: gen("xi", s),
        lambda s: gen("eta", s),
        lambda s: gen("sigma", s),
        lambda s: gen("isigma", s),
        lambda s: gen("tau", s),
    )
    images = [
        _image("15", "15a", k, None, [eta(k + 1), xi(k)], []),
        _image("15", "15b", k, None, [eta(k), xi(k + 1)], []),
        _image("16", "16a", k, None, [eta(k + 2), sigma(k + 1), xi(k)], [isigma(k)]),
        _image("16", "16b", k, None, [eta(k), sigma(k + 1), xi(k + 2)], [isigma(k)]),
        _image("17", "17a", k, None, [eta(k + 2), tau(k + 1), xi(k)], [tau(k)]),
        _image("17", "17b", k, None, [eta(k), tau(k + 1), xi(k + 2)], [tau(k)]),
        _image("18", "18a", k, None, [eta(k), sigma(k)], [eta(k)]),
        _image("18", "18b", k, None, [sigma(k), xi(k)], [xi(k)]),
        _image("19", "19a", k, None, [sigma(k), isigma(k)], []),
        _image("19", "19b", k, None, [isigma(k), sigma(k)], []),
        _image(
            "20", "20", k, None,
            [sigma(k + 1), sigma(k), sigma(k + 1)],
            [sigma(k), sigma(k + 1), sigma(k)],
        ),
        _image(
            "21", "21", k, None,
            [tau(k + 1), sigma(k), sigma(k + 1)],
            [sigma(k), sigma(k + 1), tau(k)],
        ),
        _image(
            "22", "22", k, None,
            [tau(k), sigma(k + 1), sigma(k)],
            [sigma(k + 1), sigma(k), tau(k + 1)],
        ),
    ]
    if variant == "fg":
        images.append(_image("23'", "23'", k, None, [sigma(k), tau(k)], [tau(k)]))
    else:
        images.append(_image("23", "23", k, None, [sigma(k), tau(k)], [tau(k), sigma(k)]))
    return images


def st_relation_images(kmax: int, lmax: int, variant: str = "sk") -> list[RelationImage]:
    """
    Tangle relations (11)-(23) for 1 <= k <= kmax and strands up to lmax.

    (11) needs l >= k and (12)-(14) need l >= k + 2. In (14) the crossing
    tau_k stays on both sides. The fg variant replaces (23) by (23').
    """
    if kmax < 1 or lmax < 1:
        raise ValueError("kmax and lmax must be positive")
    if variant not in ("sk", "fg"):
        raise ValueError(f"Unknown variant '{variant}'")
    log.debug("(14) images keep tau_k on both sides of the far commutation")
    log.debug("(16) and (17) images use strands k+2, k+1, k on the left-hand side")

    images = []
    for k in range(1, kmax + 1):
        images.extend(_far_images(k, lmax))
        images.extend(_local_images(k, variant))
    log.debug(f"Generated {len(images)} relation images (k <= {kmax}, l <= {lmax})")
    return images


def proving_script(image: RelationImage, scripts: Iterable[Script]) -> Script | None:
    """First script whose chain passes through both compiled sides."""
    lhs, rhs = image.lhs, image.rhs
    for script in scripts:
        words = set(script.words)
        if lhs in words and rhs in words:
            return script
    return None


@dataclass(frozen=True)
class ShiftCheck:
    image: RelationImage
    passed: bool
    derivations: tuple[Script, ...] = ()


def shift_check(image: RelationImage) -> ShiftCheck:
    """
    Compare an image at strand k with the strand-1 image conjugated by
    d2^(k-1) ... b2^(k-1).

    Both sides of the k image and of the conjugated strand-1 image are
    reduced with (4); they must agree side by side.
    """
    k = image.k
    if k == 1:
        return ShiftCheck(image, True)

    back = -(k - 1)
    derivations = []
    passed = True
    for side in (image.left, image.right):
        base = tuple(g.shifted(back) for g in side)
        direct = compile_morse(side)
        conjugated = rho_shift(compile_morse(base), k - 1)
        direct_reduced, direct_moves = cancellation_moves(direct)
        conj_reduced, conj_moves = cancellation_moves(conjugated)

        script = Script(f"shift-{image.name}", conjugated)
        for word, citations in conj_moves:
            script.then(word, *citations)
        if direct_reduced == conj_reduced:
            for word, citations in reverse_moves(direct, direct_moves):
                script.then(word, *citations)
        else:
            passed = False
            log.warning(
                f"   {image.name}: {format_word(direct_reduced)} differs from "
                f"{format_word(conj_reduced)}"
            )
        derivations.append(script)
    return ShiftCheck(image, passed, tuple(derivations))

