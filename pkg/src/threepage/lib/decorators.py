from functools import wraps

from threepage.lib.exceptions import (
    BalanceError,
    CheckedFailure,
    CitationError,
    InputError,
    InstantiationError,
    ScriptFormatError,
    SettingsError,
    WordParseError,
)


def singleton(cls):
    """
    Share one instance of the decorated class between all callers.

    The first call builds the instance with the arguments given; later calls
    return it untouched. ``reset()`` on the decorated name drops the instance
    so the next call builds a fresh one (used when a settings file changes).
    """
    instances = {}

    @wraps(cls)
    def get_instance(*args, **kwargs):
        if cls not in instances:
            instances[cls] = cls(*args, **kwargs)
        return instances[cls]

    def reset():
        instances.pop(cls, None)

    get_instance.reset = reset
    return get_instance


def cli_errors(func):
    """
    Convert library exceptions raised inside a click command into exit codes:
    parse and settings problems give 2, balance failures give 1.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except BalanceError as err:
            raise CheckedFailure(str(err))
        except (
            WordParseError,
            ScriptFormatError,
            CitationError,
            InstantiationError,
            SettingsError,
            FileNotFoundError,
            IsADirectoryError,
            NotADirectoryError,
        ) as err:
            raise InputError(str(err))

    return wrapper
