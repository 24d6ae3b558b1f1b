import configparser
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from threepage.lib.decorators import singleton
from threepage.lib.exceptions import SettingsError
from threepage.lib.general import check_path_present_raise_error

log = logging.getLogger("settings")

script_dir = Path(__file__).parent.resolve()
default_ini = script_dir / "settings.ini"
bundled_corpus = script_dir.parent / "derivations" / "corpus"

PAIRINGS = ("transversal", "same_page")
FORMATS = ("text", "json")


@dataclass(frozen=True)
class SearchSettings:
    max_nodes: int
    length_slack: int
    sort_layers: bool


@dataclass(frozen=True)
class CheckerSettings:
    step_budget: int
    length_slack: int
    node_cap: int


@singleton
class load_settings:
    """
    Budgets, geometry conventions and corpus location read from an .ini file.
    """

    def __init__(self, settings_ini: Path = None):
        if settings_ini is None:
            settings_ini = default_ini
        check_path_present_raise_error(Path(settings_ini), isfile=True)
        log.debug(f"Reading settings from {settings_ini}")

        config = configparser.ConfigParser()
        config.read(settings_ini)

        try:
            self.search = SearchSettings(
                max_nodes=config.getint("search", "max_nodes"),
                length_slack=config.getint("search", "length_slack"),
                sort_layers=config.getboolean("search", "sort_layers"),
            )
            self.checker = CheckerSettings(
                step_budget=config.getint("checker", "step_budget"),
                length_slack=config.getint("checker", "length_slack"),
                node_cap=config.getint("checker", "node_cap"),
            )
            self.pairing = config.get("geometry", "pairing")
            self.spacing = config.getint("geometry", "spacing")
            self.max_pad = config.getint("geometry", "max_pad")
            self.output_format = config.get("output", "format")
            self.workers = config.getint("jobs", "workers")
            corpus = config.get("corpus", "path", fallback="").strip()
        except (configparser.Error, ValueError) as err:
            raise SettingsError(f"Invalid settings in {settings_ini}: {err}")

        # Environment wins over the file
        corpus = os.environ.get("THREEPAGE_CORPUS", corpus)
        self.corpus_dir = Path(corpus) if corpus else bundled_corpus

        self._validate()

    def _validate(self):
        positive = {
            "search.max_nodes": self.search.max_nodes,
            "search.length_slack": self.search.length_slack,
            "checker.step_budget": self.checker.step_budget,
            "checker.length_slack": self.checker.length_slack,
            "checker.node_cap": self.checker.node_cap,
            "geometry.spacing": self.spacing,
            "jobs.workers": self.workers,
        }
        for name, value in positive.items():
            if value <= 0:
                raise SettingsError(f"{name} must be positive, got {value}")
        if self.max_pad < 0:
            raise SettingsError(f"geometry.max_pad must be >= 0, got {self.max_pad}")
        if self.pairing not in PAIRINGS:
            raise SettingsError(f"Unknown pairing '{self.pairing}', use {PAIRINGS}")
        if self.output_format not in FORMATS:
            raise SettingsError(
                f"Unknown output format '{self.output_format}', use {FORMATS}"
            )
