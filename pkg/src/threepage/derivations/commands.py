import json
import logging
from pathlib import Path

import click
import pandas as pd

from threepage.derivations.checker import CorpusReport, check_file, run_corpus
from threepage.lib.decorators import cli_errors
from threepage.lib.exceptions import CheckedFailure, InputError
from threepage.lib.logging import divider, identify_cli_command
from threepage.lib.settings import load_settings
from threepage.words.words import format_word


@click.command(short_help="Machine-check derivation scripts")
@click.argument(
    "script_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=False,
)
@click.option(
    "-c",
    "--corpus",
    is_flag=True,
    default=False,
    help="Check every script of the corpus instead of a single file.",
)
@click.option(
    "-d",
    "--corpus_dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    default=None,
    help="Corpus folder. Default is $THREEPAGE_CORPUS or the bundled corpus.",
)
@click.option(
    "-j",
    "--jobs",
    type=click.IntRange(min=1),
    default=None,
    help="Worker processes for --corpus. Default from settings.",
)
@click.option(
    "-v",
    "--show_moves",
    is_flag=True,
    default=False,
    help="Print the elementary relation applications behind each step.",
)
@cli_errors
def check(script_file: Path, corpus: bool, corpus_dir: Path, jobs: int, show_moves: bool):
    """
    Check that every step of every script follows from its cited relations

    Exits with code 1 if any step fails or a manifest entry has no script.
    """
    log = logging.getLogger("derivations_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    if corpus == (script_file is not None):
        raise InputError("Give either a SCRIPT_FILE or --corpus")

    if corpus:
        report = run_corpus(corpus_dir, workers=jobs)
        table = report.file_summary()
    else:
        report = CorpusReport(check_file(script_file))
        table = report.to_frame()

    if load_settings().output_format == "json":
        click.echo(json.dumps(report.to_frame().to_dict(orient="records"), indent=2))
    else:
        click.echo(table.to_string(index=False))
        if show_moves:
            echo_moves(report)
    echo_failures(report)

    passed = sum(s.passed for s in report.scripts)
    click.echo(f"{passed}/{len(report.scripts)} scripts pass")
    log.info(divider)

    if not report.passed:
        raise CheckedFailure("derivation check failed")


def echo_moves(report: CorpusReport):
    for script in report.scripts:
        click.echo(f"script {script.name}")
        for step in script.steps:
            if step.passed:
                moves = ", ".join(str(s) for s in step.proof.steps) or "identity"
                click.echo(f"   line {step.line}: {moves}")


def echo_failures(report: CorpusReport):
    rows = [
        {
            "file": script.file,
            "script": script.name,
            "line": step.line,
            "from": format_word(step.source),
            "to": format_word(step.target),
            "cites": ", ".join(str(c) for c in step.citations),
            "error": step.error,
        }
        for script in report.scripts
        for step in script.failures
    ]
    if rows:
        click.echo("failed steps:")
        click.echo(pd.DataFrame(rows).to_string(index=False))
    for missing in report.missing:
        click.echo(f"missing script: {missing}")
