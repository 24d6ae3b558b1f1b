import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from threepage.derivations.scripts import Citation, Script, parse_scripts
from threepage.lib.exceptions import (
    CitationError,
    InstantiationError,
    ScriptFormatError,
)
from threepage.lib.general import identify_files_by_search, load_yaml
from threepage.lib.settings import CheckerSettings, load_settings
from threepage.rewrite.rewrite import RewriteStep, apply_step, neighbours
from threepage.rewrite.search import bidirectional_search
from threepage.rules.rules import (
    Relation,
    instantiate_parametric,
    parametric_for_balance_page,
    relations_of_family,
)
from threepage.words.words import Word, format_word

log = logging.getLogger("checker")

MANIFEST = "manifest.yaml"


@dataclass(frozen=True)
class StepProof:
    """Elementary applications leading from one script word to the next."""

    steps: tuple[RewriteStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, w: Word) -> Word:
        for step in self.steps:
            w = apply_step(w, step)
        return w


@dataclass(frozen=True)
class StepFailure:
    reason: str
    frontier: int = 0


def resolve_citations(citations, ruleset: str = "sk") -> tuple[Relation, ...]:
    """
    Relation instances a step may use.

    A plain citation stands for every instance of its family in the script's
    rule set plus the derived relations. A citation with a witness stands for
    the generalised relation instantiated at that witness.

    Raises:
        CitationError: unknown family
        InstantiationError: witness not balanced where the family requires
    """
    relations = []
    for citation in citations:
        if citation.is_parametric:
            for p in parametric_for_balance_page(citation.family, citation.page):
                relations.append(instantiate_parametric(p, citation.witness))
        else:
            relations.extend(relations_of_family(citation.family, ruleset))
    return tuple(relations)


def check_step(
    source: Word,
    target: Word,
    relations,
    settings: CheckerSettings = None,
) -> StepProof | StepFailure:
    """
    Find at most ``step_budget`` applications of the given relations turning
    source into target.

    Intermediate words are at most ``length_slack`` letters longer than the
    longer end word.

    Returns:
        StepProof | StepFailure: the applications in order, or the size of
            the searched frontier
    """
    settings = settings or load_settings().checker
    source, target = Word(source), Word(target)
    max_length = max(len(source), len(target)) + settings.length_slack

    def expand(w):
        return neighbours(w, relations, max_length)

    outcome = bidirectional_search(
        source,
        target,
        expand,
        max_nodes=settings.node_cap,
        max_depth=settings.step_budget,
        sort_layers=True,
    )
    if not outcome.found:
        return StepFailure(
            f"no proof within {settings.step_budget} moves ({outcome.reason})",
            outcome.discovered,
        )

    steps = [step for _, step, _ in outcome.forward.path_to(outcome.meet)]
    for _, step, _ in reversed(outcome.backward.path_to(outcome.meet)):
        steps.append(step.flipped())
    return StepProof(tuple(steps))


@dataclass
class StepResult:
    line: int
    source: Word
    target: Word
    citations: tuple[Citation, ...]
    proof: StepProof = None
    error: str = ""

    @property
    def passed(self) -> bool:
        return self.proof is not None


@dataclass
class ScriptReport:
    name: str
    file: str = ""
    steps: list[StepResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(step.passed for step in self.steps)

    @property
    def elementary_steps(self) -> int:
        return sum(len(step.proof) for step in self.steps if step.passed)

    @property
    def failures(self) -> list[StepResult]:
        return [step for step in self.steps if not step.passed]


def check_script(script: Script, settings: CheckerSettings = None, file: str = "") -> ScriptReport:
    """
    Check every step of a script; failures are collected, not raised.
    """
    report = ScriptReport(script.name, file)
    words = script.words
    for k, step in enumerate(script.steps):
        source, target = words[k], words[k + 1]
        result = StepResult(step.line, source, target, step.citations)
        try:
            relations = resolve_citations(step.citations, script.ruleset)
        except (CitationError, InstantiationError) as err:
            result.error = str(err)
            report.steps.append(result)
            continue

        outcome = check_step(source, target, relations, settings)
        if isinstance(outcome, StepProof):
            result.proof = outcome
        else:
            result.error = f"{outcome.reason}, {outcome.frontier} words searched"
        report.steps.append(result)

    if not report.passed:
        for failure in report.failures:
            cites = ", ".join(str(c) for c in failure.citations)
            log.warning(
                f"   {script.name} line {failure.line}: "
                f"{format_word(failure.source)} -> {format_word(failure.target)} "
                f"citing {cites}: {failure.error}"
            )
    return report


def check_file(path: Path, settings: CheckerSettings = None) -> list[ScriptReport]:
    """
    Raises:
        ScriptFormatError: if the file does not parse
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        scripts = parse_scripts(text)
    except ScriptFormatError as err:
        raise ScriptFormatError(f"{path}: {err}")
    return [check_script(s, settings, Path(path).name) for s in scripts]


def _check_file_job(args) -> list[ScriptReport]:
    path, settings = args
    return check_file(path, settings)


@dataclass
class CorpusReport:
    scripts: list[ScriptReport]
    missing: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missing and all(s.passed for s in self.scripts)

    def to_frame(self) -> pd.DataFrame:
        """One row per script."""
        return pd.DataFrame(
            [
                {
                    "file": s.file,
                    "script": s.name,
                    "steps": len(s.steps),
                    "moves": s.elementary_steps,
                    "verdict": "pass" if s.passed else "FAIL",
                }
                for s in self.scripts
            ],
            columns=["file", "script", "steps", "moves", "verdict"],
        )

    def file_summary(self) -> pd.DataFrame:
        """Scripts, passes and elementary moves per corpus file."""
        df = self.to_frame()
        df["passed"] = df["verdict"] == "pass"
        return (
            df.groupby("file", sort=True)
            .agg(scripts=("script", "count"), passed=("passed", "sum"), moves=("moves", "sum"))
            .reset_index()
        )


def corpus_files(corpus_dir: Path = None) -> list[Path]:
    corpus_dir = Path(corpus_dir) if corpus_dir else load_settings().corpus_dir
    return identify_files_by_search(corpus_dir, re.compile(r"\.txt$"))


def load_manifest(corpus_dir: Path) -> dict:
    """
    Proof locations mapped to the scripts that transcribe them, as
    {location: {"file": name, "scripts": [names]}}.
    """
    path = Path(corpus_dir) / MANIFEST
    if not path.exists():
        log.debug(f"No {MANIFEST} in {corpus_dir}")
        return {}
    return load_yaml(path)


def run_corpus(
    corpus_dir: Path = None, workers: int = None, settings: CheckerSettings = None
) -> CorpusReport:
    """
    Check every script of every corpus file.

    Files are checked in parallel when ``workers`` > 1. Scripts named in the
    manifest but absent from their file are reported missing.

    Returns:
        CorpusReport: per-script reports and missing manifest entries
    """
    settings = settings or load_settings().checker
    corpus_dir = Path(corpus_dir) if corpus_dir else load_settings().corpus_dir
    workers = workers or load_settings().workers
    files = corpus_files(corpus_dir)
    log.info(f"Checking {len(files)} corpus file(s) in {corpus_dir}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_file_job, [(f, settings) for f in files]))
    else:
        results = [check_file(f, settings) for f in files]

    scripts = [report for file_reports in results for report in file_reports]
    report = CorpusReport(scripts)

    # Manifest entries must point at scripts that exist
    present = {(s.file, s.name) for s in scripts}
    for location, entry in load_manifest(corpus_dir).items():
        for name in entry.get("scripts", []):
            if (entry["file"], name) not in present:
                report.missing.append(f"{location}: {entry['file']}/{name}")
    for missing in report.missing:
        log.warning(f"   Manifest entry without script: {missing}")

    passed = sum(s.passed for s in scripts)
    log.info(f"{passed}/{len(scripts)} scripts pass")
    return report
