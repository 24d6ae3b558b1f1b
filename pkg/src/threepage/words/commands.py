import logging

import click
import pandas as pd

from threepage.balance.balance import bracket_projection
from threepage.lib.decorators import cli_errors
from threepage.lib.exceptions import CheckedFailure, WordParseError
from threepage.lib.logging import divider, identify_cli_command
from threepage.words.words import PAGES, Word, count_x, format_word, parse_word


class WordParam(click.ParamType):
    """Click parameter holding a word in token text, e.g. "a0 c0"."""

    name = "word"

    def convert(self, value, param, ctx) -> Word:
        if isinstance(value, Word):
            return value
        try:
            return parse_word(value)
        except WordParseError as err:
            self.fail(str(err), param, ctx)


WORD = WordParam()


def page_table(w: Word) -> pd.DataFrame:
    """One row per page: bracket projection, net count, depth and verdict."""
    rows = []
    for i in PAGES:
        profile = bracket_projection(w, i)
        failure = profile.first_failure
        rows.append(
            {
                "page": i,
                "projection": profile.brackets or "-",
                "net": profile.net,
                "depth": profile.depth,
                "balanced": "yes" if profile.is_balanced else "no",
                "fails_at": "" if failure is None else failure + 1,
            }
        )
    return pd.DataFrame(rows)


@click.command(short_help="Parse a word and report its balance in every page")
@click.argument("word", type=WORD)
@cli_errors
def validate(word: Word):
    """
    Parse WORD and print its bracket projection in each page

    Exits with code 1 if the word is not balanced.
    """
    log = logging.getLogger("words_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    table = page_table(word)
    balanced = bool((table["balanced"] == "yes").all())

    click.echo(
        f"word: {format_word(word)} ({len(word)} letters, {count_x(word)} singular)"
    )
    click.echo(table.to_string(index=False))
    click.echo(f"balanced: {'yes' if balanced else 'no'}")
    log.info(divider)

    if not balanced:
        raise CheckedFailure("word is not balanced")
