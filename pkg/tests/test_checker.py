import pytest

from threepage.derivations.checker import (
    StepFailure,
    StepProof,
    check_file,
    check_script,
    check_step,
    corpus_files,
    load_manifest,
    resolve_citations,
    run_corpus,
)
from threepage.derivations.scripts import cite, parse_script, parse_scripts
from threepage.lib.exceptions import CitationError, ScriptFormatError
from threepage.lib.settings import bundled_corpus
from threepage.rules.rules import relations_of_family
from threepage.words.words import parse_word

GOOD = """script circle-page1
rules sk
a0 c0 ; start
a1 d2 c0 ; (1)
a1 d2 b2 c1 ; (1)
a1 c1 ; (4)
end
"""

BAD = """script wrong-family
rules sk
a0 c0 ; start
a1 c1 ; (3)
end
"""


def test_single_application_steps():
    proof = check_step(parse_word("a2 b1"), parse_word("a0 d1 b1"), relations_of_family("1", "sk"))
    assert isinstance(proof, StepProof) and len(proof) == 1
    assert proof.replay(parse_word("a2 b1")) == parse_word("a0 d1 b1")

    proof = check_step(parse_word("a0 d1 b1"), parse_word("a0"), relations_of_family("4", "sk"))
    assert isinstance(proof, StepProof) and len(proof) == 1


def test_unreachable_step_fails():
    result = check_step(parse_word("a0"), parse_word("c0"), relations_of_family("1", "sk"))
    assert isinstance(result, StepFailure)
    assert result.frontier > 0


def test_step_of_several_moves():
    proof = check_step(parse_word("a0 c0"), parse_word("a1 c1"), resolve_citations(cite("1", "4")))
    assert isinstance(proof, StepProof) and len(proof) == 3


def test_unknown_citation_is_reported():
    with pytest.raises(CitationError):
        resolve_citations(cite("99"))

    script = parse_script("script s\na0 ; start\na0 ; (99)\nend\n")
    report = check_script(script)
    assert not report.passed
    assert "Unknown citation" in report.failures[0].error


def test_parametric_citation_step():
    script = parse_script(
        "script p\nrules sk\nb2 c2 d2 c2 ; start\nd2 c2 b2 c2 ; (34') w=[d2 c2] i=1\nend\n"
    )
    assert check_script(script).passed


def test_unbalanced_witness_fails_step():
    script = parse_script("script p\nb1 c1 a2 b2 ; start\na2 b2 b1 c1 ; (34') w=[a2 b2] i=0\nend\n")
    report = check_script(script)
    assert not report.passed
    assert "not 0-balanced" in report.failures[0].error


def test_check_file(tmp_path):
    path = tmp_path / "two.txt"
    path.write_text(GOOD + "\n" + BAD)
    reports = check_file(path)
    assert [r.name for r in reports] == ["circle-page1", "wrong-family"]
    assert reports[0].passed and reports[0].elementary_steps == 3
    assert not reports[1].passed
    assert reports[0].file == "two.txt"


def test_check_file_format_error(tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("script a\na0 ; start\n")
    with pytest.raises(ScriptFormatError):
        check_file(path)


def test_small_corpus_in_parallel(tmp_path):
    (tmp_path / "good.txt").write_text(GOOD)
    (tmp_path / "bad.txt").write_text(BAD)
    (tmp_path / "manifest.yaml").write_text(
        "unknot page move:\n  file: good.txt\n  scripts: [circle-page1, circle-page2]\n"
    )
    report = run_corpus(tmp_path, workers=2)
    assert not report.passed
    assert report.missing == ["unknot page move: good.txt/circle-page2"]

    summary = report.file_summary()
    assert list(summary["file"]) == ["bad.txt", "good.txt"]
    assert list(summary["passed"]) == [0, 1]


def test_corpus_from_environment(tmp_path, monkeypatch):
    (tmp_path / "good.txt").write_text(GOOD)
    monkeypatch.setenv("THREEPAGE_CORPUS", str(tmp_path))
    assert [f.name for f in corpus_files()] == ["good.txt"]
    assert run_corpus().passed


def test_bundled_manifest_names_files():
    files = {f.name for f in corpus_files(bundled_corpus)}
    manifest = load_manifest(bundled_corpus)
    assert manifest
    assert {entry["file"] for entry in manifest.values()} <= files


def test_bundled_corpus_passes():
    report = run_corpus(bundled_corpus)
    assert report.missing == []
    failing = [f"{s.file}/{s.name}" for s in report.scripts if not s.passed]
    assert failing == []
    assert len(report.scripts) == 212


def test_unknot_corpus_starts_from_closed_circle():
    scripts = parse_scripts((bundled_corpus / "unknot.txt").read_text())
    starts = {s.name: s.start for s in scripts}
    assert starts["circle-to-page0"] == parse_word("a2 b2 d2 c2")
    # the cap above a cup is not closed, so no script starts from it
    assert parse_word("d2 c2 a2 b2") not in starts.values()
