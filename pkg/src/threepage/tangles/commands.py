import logging

import click

from threepage.lib.decorators import cli_errors
from threepage.lib.logging import divider, identify_cli_command
from threepage.tangles.padding import almost_balance_pad, knot_closure_pad
from threepage.tangles.tangles import compile_morse, format_morse, parse_morse
from threepage.words.words import format_word


@click.command("compile", short_help="Compile a Morse tangle word into a three-page word")
@click.argument("tokens", nargs=-1, required=True)
@click.option(
    "-p",
    "--pad",
    is_flag=True,
    default=False,
    help="Close the page-1 and page-2 boundary arcs so the word is almost balanced.",
)
@click.option(
    "-l",
    "--closure",
    type=click.IntRange(min=0),
    default=None,
    help="Wrap the word in the knot closure a0^l a1^l ... c1^l c0^l.",
)
@cli_errors
def compile_tokens(tokens: tuple, pad: bool, closure: int):
    """
    Compile Morse TOKENS such as "xi_1 eta_1" generator by generator

    Tokens may be given as one quoted argument or as separate arguments.
    """
    log = logging.getLogger("tangles_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    morse = parse_morse(" ".join(tokens))
    log.debug(f"Morse word: {format_morse(morse)}")

    word = compile_morse(morse)
    if pad:
        word = almost_balance_pad(word)
    if closure is not None:
        word = knot_closure_pad(word, closure)
    click.echo(format_word(word))
    log.info(divider)
