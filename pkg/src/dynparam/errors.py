"""Exception types shared by every structure in the package."""


class RangeError(ValueError):
    """An index, position or symbol lies outside its declared range."""


class ContractError(RuntimeError):
    """A caller broke a usage promise of a data structure."""


class FormatError(ValueError):
    """Malformed instance or operation text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
