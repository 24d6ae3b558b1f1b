import logging

import click
import pandas as pd

from threepage.lib.decorators import cli_errors
from threepage.lib.logging import divider, identify_cli_command
from threepage.rules.rules import (
    RuleSet,
    enumerate_rules,
    family_counts,
    official_count,
    raw_count,
)

RULESET_CHOICE = click.Choice([rs.value for rs in RuleSet])


@click.command(short_help="Count or list the relation instances of a rule set")
@click.option(
    "-s",
    "--set",
    "ruleset",
    type=RULESET_CHOICE,
    default="sk",
    show_default=True,
    help="Rule set: sk, fg (with (6') for (6)) or derived ((25)-(45)).",
)
@click.option("--count", is_flag=True, default=False, help="Print instance counts only.")
@click.option(
    "--dump", is_flag=True, default=False, help="Print every instance as 'id : lhs = rhs'."
)
@cli_errors
def rules(ruleset: str, count: bool, dump: bool):
    """
    Enumerate the relation instances of a rule set

    Without flags, prints the number of instances per family.
    """
    log = logging.getLogger("rules_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    ruleset = RuleSet(ruleset)
    summary = f"{raw_count(ruleset)} instances ({official_count(ruleset)} official)"

    if dump:
        for relation in enumerate_rules(ruleset):
            click.echo(relation.dump_line())
    elif count:
        click.echo(summary)
    else:
        counts = pd.DataFrame(
            list(family_counts(ruleset).items()), columns=["family", "instances"]
        )
        click.echo(counts.to_string(index=False))
        click.echo(summary)
    log.info(divider)
