import logging
from datetime import datetime
from pathlib import Path

import click

from threepage.lib.general import produce_dir

divider = "*" * 80


def config_root_logger(log_dir: Path, verbose: bool = False) -> None:
    """
    Configure the root logger

    The root logger is the only logger with handlers. Module loggers such as
    "search" or "checker" propagate their records up to it.

    """

    # Formatting defaults
    DATE_FORMAT = "%Y-%m-%d %H:%M"
    STREAM_FORMAT = "%(message)s"
    FILE_FORMAT = "[%(asctime)s][%(levelname)s] %(name)s %(message)s"

    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)

    # Calling twice (e.g. --verbose after import) only adjusts the level
    if root.handlers:
        for handler in root.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(
                handler, logging.FileHandler
            ):
                handler.setLevel(logging.DEBUG if verbose else logging.INFO)
        return

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter(STREAM_FORMAT))
    root.addHandler(console_handler)

    log_dir = produce_dir(log_dir)
    log_path = log_dir / f"{datetime.today().strftime('%Y-%m-%d')}.log"
    file_handler = logging.FileHandler(log_path)
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT, DATE_FORMAT))
    root.addHandler(file_handler)


def format_cli_flags(args: list, params: dict) -> str:
    """
    Render click arguments and parameters as a command line for the log file.

    Args:
        args (list): Positional arguments left over by click.
        params (dict): Parsed parameters of the command.

    Returns:
        str: Flags in "--name value" form.
    """
    flag_strs = list(args)
    for key, value in params.items():
        if value is None or value is False or value == ():
            continue
        if value is True:
            flag_strs.append(f"--{key}")
        else:
            flag_strs.append(f"--{key} {value}")
    return " ".join(flag_strs)


def identify_cli_command() -> str:
    """
    Identify the CLI command being run.

    Returns:
        str: command name followed by its flags
    """
    ctx = click.get_current_context()
    flags = format_cli_flags(ctx.args, ctx.params)
    return f"{ctx.command.name} {flags}"
