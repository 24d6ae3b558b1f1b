import json
import logging
from pathlib import Path

import click

from threepage.geometry.geometry import (
    reconstruct as reconstruct_embedding,
    render_svg,
    to_json,
    trace_circles,
    validate_embedding,
)
from threepage.lib.decorators import cli_errors
from threepage.lib.logging import divider, identify_cli_command
from threepage.lib.settings import PAIRINGS, load_settings
from threepage.words.commands import WORD
from threepage.words.words import PAGES, Word


@click.command(short_help="Rebuild the embedding encoded by a balanced word")
@click.argument("word", type=WORD)
@click.option(
    "--json",
    "as_json",
    is_flag=True,
    default=False,
    help="Print stats and arcs as JSON.",
)
@click.option(
    "--svg",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write an SVG drawing of the embedding to this file.",
)
@click.option(
    "--pairing",
    type=click.Choice(PAIRINGS),
    default=None,
    help="Branch pairing at singular points. Default from settings.",
)
@cli_errors
def reconstruct(word: Word, as_json: bool, svg: Path, pairing: str):
    """
    Rebuild the arcs of each page for WORD and count its circles

    Exits with code 1 if WORD is not balanced.
    """
    log = logging.getLogger("geometry_commands")
    log.info(divider)
    log.debug(identify_cli_command())

    settings = load_settings()
    pairing = pairing or settings.pairing
    embedding = reconstruct_embedding(word)
    for problem in validate_embedding(embedding):
        log.warning(f"   {problem}")
    data = to_json(embedding, pairing)

    if as_json or settings.output_format == "json":
        click.echo(json.dumps(data))
    else:
        click.echo(f"axis points: {data['axis_points']}")
        click.echo(f"singular points: {data['singular_points']}")
        click.echo(f"circles: {data['circles']}")
        for p in PAGES:
            arcs = " ".join(f"({j},{k})" for j, k in embedding.arcs[p])
            click.echo(f"page {p} arcs: {arcs or '-'}")
        for circle in trace_circles(embedding, pairing):
            click.echo(f"circle: {' '.join(str(j) for j in circle)}")

    if svg:
        svg.write_text(render_svg(embedding, settings.spacing), encoding="utf-8")
        log.info(f"SVG written to {svg}")
    log.info(divider)
