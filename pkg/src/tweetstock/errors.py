"""Exception types shared across the pipeline.

Plain argument problems raise :class:`ValueError`. Anything wrong with the
*contents* of an input file or dataset raises a :class:`DataError` subclass,
which the command line maps to exit status 2.
"""


class DataError(ValueError):
    """Input data is malformed or violates an invariant."""


class FormatError(DataError):
    """A file does not follow its expected layout."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{':'.join(where)}: {message}"
        super().__init__(message)


class CorpusError(DataError):
    """A tweet corpus violates a collection-level invariant (e.g. duplicate ids)."""


class SeriesError(DataError):
    """A price series violates an ordering or uniqueness invariant."""


class TrainingDataError(DataError):
    """A training set cannot support the requested model."""


class NumericalError(ArithmeticError):
    """Training produced a non-finite value."""

    def __init__(self, message, epoch=None):
        self.epoch = epoch
        super().__init__(message)
