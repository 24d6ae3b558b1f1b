import logging
import re
from pathlib import Path

import yaml

log = logging.getLogger("general")


def check_path_present_raise_error(path: Path, isfile: bool = False) -> bool:
    """
    Fail unless a path exists and is a file (isfile) or a folder.

    Args:
        path (Path): settings file, script file or corpus folder
        isfile (bool): expect a file rather than a folder

    Returns:
        bool: True when the path is usable
    """
    if not path.exists():
        raise FileNotFoundError(f"Path '{path}' does not exist")
    if isfile and not path.is_file():
        raise IsADirectoryError(f"Expected a file but '{path}' is a folder")
    if not isfile and path.is_file():
        raise NotADirectoryError(f"Expected a folder but '{path}' is a file")
    return True


def identify_files_by_search(folder: Path, pattern: re.Pattern) -> list[Path]:
    """
    List the files directly inside a folder whose names match a pattern,
    sorted by name so reports come out in a stable order.

    Args:
        folder (Path): folder to search
        pattern (re.Pattern): compiled pattern matched against file names

    Returns:
        list[Path]: matching files
    """
    check_path_present_raise_error(folder, isfile=False)
    matches = sorted(
        f for f in folder.iterdir() if f.is_file() and pattern.search(f.name)
    )
    if not matches:
        raise FileNotFoundError(f"No files matching {pattern.pattern} in {folder}")
    log.debug(f"Found {len(matches)} file(s) in {folder}")
    return matches


def load_yaml(path: Path) -> dict:
    """
    Read a YAML document.

    Args:
        path (Path): YAML file

    Returns:
        dict: parsed content, empty if the file is empty
    """
    check_path_present_raise_error(path, isfile=True)
    with open(path, "r") as f:
        return yaml.safe_load(f) or {}


def produce_dir(*args, verbose: bool = True) -> Path:
    """Create the folder joined from args (e.g. the log folder) if missing."""
    folder = Path(*args)
    if not folder.exists():
        folder.mkdir(parents=True, exist_ok=True)
        if verbose:
            log.debug(f"   {folder.absolute()} created")
    return folder
