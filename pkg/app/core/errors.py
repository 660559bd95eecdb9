from typing import Optional

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_IO = 3


class CaygenError(Exception):
    """Base error; `exit_code` plays the role an HTTP status plays for a web API."""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DegreeMismatchError(CaygenError, ValueError):
    pass


class RangeError(CaygenError, ValueError):
    pass


class PreconditionError(CaygenError):
    pass


class CapacityError(CaygenError):
    pass


class InconsistencyError(CaygenError):
    exit_code = EXIT_DISAGREEMENT


class InputParseError(CaygenError):
    exit_code = EXIT_IO

    def __init__(
        self,
        detail: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.source = source
        where = source or "<input>"
        if line is not None:
            where = f"{where}:{line}"
            if column is not None:
                where = f"{where}:{column}"
        super().__init__(f"{where}: {detail}")


def get_capacity_error(what: str, size: int, limit: int, hint: str = "") -> CapacityError:
    message = f"{what} of size {size} exceeds the configured limit {limit}"
    if hint:
        message = f"{message}; {hint}"
    return CapacityError(message)
