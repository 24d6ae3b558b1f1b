import click


class WordParseError(Exception):
    """Malformed token in word or Morse text"""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class BalanceError(Exception):
    """Word is not balanced in a page where balance is required"""

    def __init__(self, message: str, page: int = None, position: int = None):
        super().__init__(message)
        self.page = page
        self.position = position


class StepError(Exception):
    """Rewrite step does not match the word it is applied to"""

    pass


class CitationError(Exception):
    """Unknown or malformed relation citation"""

    pass


class ScriptFormatError(Exception):
    """Derivation script text does not follow the script format"""

    pass


class InstantiationError(Exception):
    """Witness word fails the balance condition of a parametric relation"""

    pass


class SettingsError(Exception):
    """Settings file missing or holding invalid values"""

    pass


# ================================================================
# CLI exit codes
# ================================================================


class CheckedFailure(click.ClickException):
    """Command ran but the answer is negative or unknown (exit code 1)"""

    exit_code = 1


class InputError(click.ClickException):
    """Unparseable input or invalid settings (exit code 2)"""

    exit_code = 2
