import logging
from dataclasses import dataclass, field

from threepage.lib.exceptions import ScriptFormatError, WordParseError
from threepage.lib.regex import Regex_patterns
from threepage.words.words import Word, format_word, parse_word

log = logging.getLogger("scripts")

RULESETS = ("sk", "fg")


@dataclass(frozen=True)
class Citation:
    """
    A relation family cited for one displayed step, e.g. (4) or (34').

    Parametric families carry the witness word and the page in which the
    witness has to be balanced.
    """

    family: str
    witness: Word = None
    page: int = None

    @property
    def is_parametric(self) -> bool:
        return self.witness is not None

    def __str__(self) -> str:
        if self.is_parametric:
            return f"({self.family}) w=[{format_word(self.witness)}] i={self.page}"
        return f"({self.family})"


@dataclass(frozen=True)
class ScriptStep:
    word: Word
    citations: tuple[Citation, ...]
    line: int = 0


@dataclass
class Script:
    """
    A chain of words where each word follows from the previous one by the
    relations cited on its line. Engines emit their proofs in this form.
    """

    name: str
    start: Word
    steps: list[ScriptStep] = field(default_factory=list)
    ruleset: str = "sk"
    start_line: int = 0

    def then(self, word: Word, *citations: Citation) -> "Script":
        self.steps.append(ScriptStep(Word(word), tuple(citations)))
        return self

    def extend(self, other: "Script") -> "Script":
        """Append the steps of a script that starts where this one ends."""
        if other.start != self.end:
            raise ScriptFormatError(
                f"Cannot join '{other.name}': it starts at {format_word(other.start)}"
                f" but '{self.name}' ends at {format_word(self.end)}"
            )
        self.steps.extend(other.steps)
        return self

    def reversed(self, name: str = None) -> "Script":
        """The same chain read from its last word back to its first."""
        words = self.words
        rev = Script(name or self.name, words[-1], ruleset=self.ruleset)
        for k in range(len(self.steps) - 1, -1, -1):
            rev.then(words[k], *self.steps[k].citations)
        return rev

    @property
    def end(self) -> Word:
        return self.steps[-1].word if self.steps else self.start

    @property
    def words(self) -> list[Word]:
        return [self.start] + [step.word for step in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        lines = [f"script {self.name}", f"rules {self.ruleset}"]
        lines.append(f"{format_word(self.start)} ; start")
        for step in self.steps:
            cites = ", ".join(str(c) for c in step.citations)
            lines.append(f"{format_word(step.word)} ; {cites}")
        lines.append("end")
        return "\n".join(lines) + "\n"


def cite(*families: str) -> tuple[Citation, ...]:
    return tuple(Citation(f) for f in families)


def parse_citation(text: str, line: int = 0) -> Citation:
    match = Regex_patterns.CITATION.match(text.strip())
    if match is None:
        raise ScriptFormatError(f"line {line}: malformed citation '{text.strip()}'")
    family, witness, page = match.groups()
    if witness is None:
        return Citation(family)
    return Citation(family, parse_word(witness), int(page))


def parse_scripts(text: str) -> list[Script]:
    """
    Parse every script block of a corpus file.

    Format, one item per line: ``script <name>``, optional ``rules sk|fg``,
    ``<word> ; start``, then ``<word> ; <citations>`` lines, then ``end``.
    Text after ``#`` is a comment.

    Raises:
        ScriptFormatError: on structural errors or malformed citations, and
            for word errors (with the line number added).
    """
    scripts = []
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        header = Regex_patterns.SCRIPT_HEADER.match(line)
        if header:
            if current is not None:
                raise ScriptFormatError(
                    f"line {number}: script '{current['name']}' is missing 'end'"
                )
            current = {"name": header.group(1), "ruleset": "sk", "lines": []}
            continue

        if current is None:
            raise ScriptFormatError(f"line {number}: text outside a script block")

        rules = Regex_patterns.RULES_HEADER.match(line)
        if rules:
            if rules.group(1) not in RULESETS:
                raise ScriptFormatError(
                    f"line {number}: unknown rule set '{rules.group(1)}'"
                )
            current["ruleset"] = rules.group(1)
            continue

        if line == "end":
            scripts.append(_build_script(current))
            current = None
            continue

        if ";" not in line:
            raise ScriptFormatError(f"line {number}: expected '<word> ; <citations>'")
        word_text, cite_text = line.split(";", 1)
        try:
            word = parse_word(word_text)
        except WordParseError as err:
            raise ScriptFormatError(f"line {number}: {err}")
        current["lines"].append((number, word, cite_text.strip()))

    if current is not None:
        raise ScriptFormatError(f"script '{current['name']}' is missing 'end'")
    if not scripts:
        raise ScriptFormatError("no script blocks found")
    return scripts


def parse_script(text: str) -> Script:
    """Parse text holding exactly one script block."""
    scripts = parse_scripts(text)
    if len(scripts) != 1:
        raise ScriptFormatError(f"expected one script, found {len(scripts)}")
    return scripts[0]


def _build_script(block: dict) -> Script:
    lines = block["lines"]
    if not lines:
        raise ScriptFormatError(f"script '{block['name']}' has no lines")
    number, start, first_cite = lines[0]
    if first_cite != "start":
        raise ScriptFormatError(f"line {number}: first citation must be 'start'")

    script = Script(block["name"], start, ruleset=block["ruleset"], start_line=number)
    for number, word, cite_text in lines[1:]:
        parts = [p for p in Regex_patterns.CITATION_SPLIT.split(cite_text) if p.strip()]
        if not parts:
            raise ScriptFormatError(f"line {number}: step without citations")
        citations = tuple(parse_citation(p, number) for p in parts)
        script.steps.append(ScriptStep(word, citations, number))
    return script

