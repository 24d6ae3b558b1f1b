import logging
from pathlib import Path

import click

from threepage.lib.decorators import cli_errors
from threepage.lib.exceptions import CheckedFailure, InputError
from threepage.lib.logging import divider, identify_cli_command
from threepage.rewrite.search import (
    BalancedWitness,
    Proved,
    SearchBudget,
    centrality_witness,
    search_equiv,
)
from threepage.rules.commands import RULESET_CHOICE
from threepage.rules.rules import RuleSelection, RuleSet
from threepage.words.commands import WORD
from threepage.words.words import Word, format_word


def search_options(func):
    """Rule selection and budget options shared by the search commands."""
    options = [
        click.option(
            "-s",
            "--set",
            "rulesets",
            type=RULESET_CHOICE,
            multiple=True,
            default=("sk",),
            show_default=True,
            help="Rule set to search with. Repeat to combine, e.g. --set sk --set derived.",
        ),
        click.option(
            "-f",
            "--family",
            "families",
            multiple=True,
            help="Keep only these relation families, e.g. -f 3 -f 4.",
        ),
        click.option(
            "-x",
            "--exclude",
            multiple=True,
            help="Leave out single instances by id, e.g. -x 4.i2.v1.",
        ),
        click.option(
            "--budget-nodes",
            type=click.IntRange(min=1),
            default=None,
            help="Expansions before giving up. Default from settings.",
        ),
        click.option(
            "--budget-len",
            type=click.IntRange(min=1),
            default=None,
            help="Longest word visited. Default: longer input plus the settings slack.",
        ),
        click.option(
            "--budget-depth",
            type=click.IntRange(min=1),
            default=None,
            help="Longest derivation in relation applications. Default: unbounded.",
        ),
        click.option(
            "-o",
            "--output",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
            help="Write the derivation found to this script file.",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_budget(rulesets, families, exclude, budget_nodes, budget_len, budget_depth):
    selection = RuleSelection(
        rulesets=tuple(RuleSet(rs) for rs in dict.fromkeys(rulesets)),
        families=frozenset(families) if families else None,
        exclude=frozenset(exclude),
    )
    if not selection.relations():
        raise InputError(f"No relations left in {selection.describe()}")
    return SearchBudget(
        selection=selection,
        max_length=budget_len,
        max_nodes=budget_nodes,
        max_depth=budget_depth,
    )


@click.command(short_help="Search for a derivation between two words")
@click.argument("word1", type=WORD)
@click.argument("word2", type=WORD)
@search_options
@cli_errors
def equiv(word1: Word, word2: Word, output: Path, **budget_args):
    """
    Look for a chain of relation applications turning WORD1 into WORD2

    Prints the derivation as a script. Exits with code 1 when the search
    stops without one; this does not mean the words are inequivalent.
    """
    log = logging.getLogger("rewrite_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    result = search_equiv(word1, word2, build_budget(**budget_args))
    if not isinstance(result, Proved):
        click.echo(f"unknown: {result.reason} after {result.expanded} expansions")
        raise CheckedFailure("no derivation found")

    click.echo(f"proved: {result.steps} steps, {result.expanded} expansions")
    click.echo(result.derivation.to_text(), nl=False)
    if output:
        output.write_text(result.derivation.to_text(), encoding="utf-8")
        log.info(f"Derivation written to {output}")
    log.info(divider)


@click.command(short_help="Search for a balanced word equivalent to a word")
@click.argument("word", type=WORD)
@search_options
@cli_errors
def central(word: Word, output: Path, **budget_args):
    """
    Look for a balanced word equivalent to WORD, which shows WORD is central

    Exits with code 1 when no witness is found within the budget.
    """
    log = logging.getLogger("rewrite_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    result = centrality_witness(word, build_budget(**budget_args))
    if not isinstance(result, BalancedWitness):
        click.echo(f"unknown: {result.reason} after {result.expanded} expansions")
        raise CheckedFailure("no balanced witness found")

    click.echo(f"central: {format_word(result.word)}")
    click.echo(result.derivation.to_text(), nl=False)
    if output:
        output.write_text(result.derivation.to_text(), encoding="utf-8")
        log.info(f"Derivation written to {output}")
    log.info(divider)
