import logging

import click

from threepage.balance.balance import bracket_projection
from threepage.balance.stars import star_decompose
from threepage.lib.decorators import cli_errors
from threepage.lib.exceptions import CheckedFailure
from threepage.lib.logging import divider, identify_cli_command
from threepage.words.commands import WORD
from threepage.words.words import Word, format_word


@click.command(short_help="Bracket projection, dif and depth of a word in one page")
@click.argument("word", type=WORD)
@click.option(
    "-i",
    "--page",
    type=click.IntRange(0, 2),
    required=True,
    help="Page index (0, 1 or 2) to project the word to.",
)
@click.option(
    "-d",
    "--decompose",
    is_flag=True,
    default=False,
    help="Also factor the word into page star factors, printing the derivation.",
)
@cli_errors
def balance(word: Word, page: int, decompose: bool):
    """
    Project WORD to a page with letters of that page shown as bullets

    Exits with code 1 if the projection does not nest.
    """
    log = logging.getLogger("balance_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    profile = bracket_projection(word, page)
    click.echo(f"projection: {profile.mu or '-'}")
    click.echo(f"dif: {' '.join(str(d) for d in profile.dif) or '-'}")
    click.echo(f"depth: {profile.depth}")
    click.echo(f"{page}-balanced: {'yes' if profile.is_balanced else 'no'}")

    if not profile.is_balanced:
        raise CheckedFailure(
            f"projection fails at letter {profile.first_failure + 1}"
        )

    if decompose:
        factors, script = star_decompose(word, page)
        click.echo(f"factors: {' | '.join(format_word(f) for f in factors) or '-'}")
        click.echo(script.to_text(), nl=False)
        log.info(f"Decomposed in {len(script)} steps")
    log.info(divider)
