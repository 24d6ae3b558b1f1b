from collections import OrderedDict
from pathlib import Path

import click
import pretty_errors

from threepage.balance.commands import balance
from threepage.derivations.commands import check
from threepage.geometry.commands import reconstruct
from threepage.lib.decorators import cli_errors
from threepage.lib.logging import config_root_logger
from threepage.lib.settings import load_settings
from threepage.rewrite.commands import central, equiv
from threepage.rules.commands import rules
from threepage.tangles.commands import compile_tokens
from threepage.words.commands import validate

pretty_errors.configure(stack_depth=1, display_locals=1)

# ================================================================
# Entry point for all sub-commands
#
# ================================================================

# Configure logging before subcommand execution
log_dir = Path.cwd() / "logs"
config_root_logger(log_dir=log_dir, verbose=False)


class OrderedGroup(click.Group):
    def __init__(self, name=None, commands=None, **attrs):
        super(OrderedGroup, self).__init__(name, commands, **attrs)
        #: the registered subcommands by their exported names.
        self.commands = commands or OrderedDict()

    def list_commands(self, ctx):
        return self.commands


@click.group(cls=OrderedGroup)
@click.version_option(message="%(prog)s-v%(version)s")
@click.option(
    "--verbose", is_flag=True, default=False, help="Log debug messages to the console."
)
@click.option(
    "--settings",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Settings .ini file replacing the bundled defaults.",
)
@cli_errors
def cli(verbose: bool, settings: Path):
    """
    Words, relations and derivations of the semigroup of three-page
    singular knot embeddings

    """
    config_root_logger(log_dir=log_dir, verbose=verbose)
    load_settings.reset()
    load_settings(settings)


# ================================================================
# Individual sub-commands
# ================================================================

cli.add_command(validate)
cli.add_command(balance)
cli.add_command(rules)
cli.add_command(equiv)
cli.add_command(central)
cli.add_command(check)
cli.add_command(compile_tokens)
cli.add_command(reconstruct)

if __name__ == "__main__":
    cli()
